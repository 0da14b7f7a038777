/* SPDX-License-Identifier: Apache-2.0 */

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsr/generator.hpp"
#include "qsr/structure.hpp"
#include "qsr/uniqueness.hpp"

using namespace qsr;

namespace {

std::set<Mask> mask_set(const std::vector<Subset> &v)
{
	std::set<Mask> out;
	for (const Subset &s : v)
		out.insert(s.mask());
	return out;
}

Instance trivial_pair()
{
	return Instance(Universe::numbered(2), SetClass(2, {Subset::empty(2), Subset::of(2, {0})}),
	                {MeasureValue(0), MeasureValue(1)});
}

/* Moves weight between atoms that every member either contains together
 * or avoids together, so the premeasure on the class is unchanged. */
std::vector<Rational> shuffle_within_cells(const SetClass &cls, std::vector<Rational> w,
                                           SplitMix &rng)
{
	const std::size_t n = w.size();
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = a + 1; b < n; ++b) {
			bool same = true;
			for (const Subset &s : cls)
				same &= s.contains(a) == s.contains(b);
			if (!same || !rng.one_in(2))
				continue;
			Rational total = w[a] + w[b];
			Rational share(static_cast<long>(1 + rng.below(4)), 5);
			w[a] = total * share;
			w[b] = total - w[a];
		}
	return w;
}

} // namespace

TEST(Ring, IntervalsGenerateThePowerSet)
{
	GeneratedRing r = generate_ring(interval_semi_ring(3));
	EXPECT_EQ(r.members.size(), 8u);
	EXPECT_TRUE(r.contains(Subset::of(3, {0, 2})));
}

TEST(Ring, VennRegionRing)
{
	ClassFixture f = example1_fixture();
	GeneratedRing r = generate_ring(f.set_class);
	/* the six listed cells generate 2^6 unions; A and B add nothing */
	EXPECT_EQ(r.members.size(), 64u);
	EXPECT_FALSE(r.contains(Subset::full(8)));
	EXPECT_TRUE(is_ring(SetClass(8, r.members)));
}

TEST(Ring, RequiresQuasiSemiRing)
{
	SetClass cls(3, {Subset::empty(3), Subset::of(3, {0, 1}), Subset::of(3, {1, 2})});
	EXPECT_THROW(generate_ring(cls), StructuralError);
	EXPECT_EQ(verify_smallest_ring(cls).verdict, Verdict::skipped);
	/* the union/difference closure still exists */
	EXPECT_EQ(mask_set(union_difference_closure(cls)),
	          oracle::ring_closure(oracle::masks_of(cls)));
}

TEST(Ring, MatchesClosureOracleOnRandomQuasiSemiRings)
{
	std::size_t tested = 0;
	for (std::uint64_t t = 0; t < 400 && tested < 150; ++t) {
		SplitMix rng = SplitMix::for_trial(31, t);
		std::size_t n = 1 + rng.below(6);
		SetClass cls = oracle::random_class(rng, n, 1 + rng.below(6));
		auto masks = oracle::masks_of(cls);
		EXPECT_EQ(mask_set(union_difference_closure(cls)), oracle::ring_closure(masks));
		EXPECT_EQ(mask_set(generated_sigma_algebra(cls)), oracle::sigma_closure(masks, n));
		if (!oracle::quasi_semi_ring(masks))
			continue;
		++tested;
		GeneratedRing r = generate_ring(cls);
		EXPECT_EQ(mask_set(r.members), oracle::ring_closure(masks)) << t;
		EXPECT_TRUE(std::is_sorted(r.members.begin(), r.members.end(),
		                           [](auto &a, auto &b) { return a.mask() < b.mask(); }));
		EXPECT_EQ(verify_smallest_ring(cls).verdict, Verdict::pass);
	}
	EXPECT_GE(tested, 50u);
}

TEST(TwoMeasures, Disagreement)
{
	Instance a = trivial_pair();
	TwoMeasureInstance same(a, a.premeasure());
	EXPECT_TRUE(same.agree_on_class());
	TwoMeasureInstance diff(a, {MeasureValue(0), MeasureValue(2)});
	EXPECT_EQ(diff.first_disagreement(), 1u);
	EXPECT_THROW(TwoMeasureInstance(a, {MeasureValue(0)}), StructuralError);
}

TEST(Uniqueness, AgreeingPairsAgreeOnRingAndSigma)
{
	for (std::uint64_t seed = 0; seed < 40; ++seed) {
		GeneratedInstance g = generate_random_instance(
			seed, 2 + seed % 6, static_cast<InstanceStyle>(seed % 3), {.cover_universe = true});
		ASSERT_TRUE(g.instance);
		SplitMix rng = SplitMix::for_trial(seed, 7);
		auto w2 = shuffle_within_cells(g.instance->set_class(), g.atom_weights, rng);
		Premeasure mu2 = premeasure_from_weights(g.instance->set_class(), w2);
		TwoMeasureInstance two(*g.instance, mu2);
		ASSERT_TRUE(two.agree_on_class());
		UniquenessReport r = verify_uniqueness_on_ring(two);
		EXPECT_EQ(r.verdict, Verdict::pass) << seed << " " << r.reason;
		UniquenessReport s = verify_sigma_uniqueness(two);
		EXPECT_EQ(s.verdict, Verdict::pass) << seed << " " << s.reason;
		EXPECT_TRUE(s.full_in_ring);
		EXPECT_TRUE(s.sigma_equals_ring);
	}
}

TEST(Uniqueness, GatesOnAgreementAndValidity)
{
	Instance a(Universe::numbered(2),
	           SetClass(2, {Subset::empty(2), Subset::of(2, {0}), Subset::of(2, {1})}),
	           {MeasureValue(0), MeasureValue(1), MeasureValue(1)});
	TwoMeasureInstance disagree(a, {MeasureValue(0), MeasureValue(1), MeasureValue(2)});
	EXPECT_EQ(verify_uniqueness_on_ring(disagree).verdict, Verdict::skipped);
	TwoMeasureInstance infinite(a.with_premeasure({MeasureValue(0), MeasureValue::infinite(),
	                                               MeasureValue(1)}),
	                            {MeasureValue(0), MeasureValue::infinite(), MeasureValue(1)});
	EXPECT_EQ(verify_uniqueness_on_ring(infinite).verdict, Verdict::skipped);
	/* sigma-finiteness fails when an atom is outside every member */
	TwoMeasureInstance uncovered(trivial_pair(), trivial_pair().premeasure());
	EXPECT_EQ(verify_uniqueness_on_ring(uncovered).verdict, Verdict::pass);
	EXPECT_EQ(verify_sigma_uniqueness(uncovered).verdict, Verdict::skipped);
}

TEST(SigmaFinite, CoverAndDecomposition)
{
	EXPECT_FALSE(is_sigma_finite(trivial_pair()).sigma_finite);
	SetClass cls = interval_semi_ring(3);
	Instance inst(Universe::numbered(3), cls,
	              oracle::weights_premeasure(cls, {Rational(1), Rational(2), Rational(3)}));
	SigmaFiniteness s = is_sigma_finite(inst);
	ASSERT_TRUE(s.sigma_finite);
	auto pieces = finite_decomposition(inst, Subset::of(3, {0, 1, 2}));
	EXPECT_TRUE(is_partition(pieces, Subset::full(3)));
	EXPECT_THROW(finite_decomposition(inst, Subset::of(3, {0, 2})), StructuralError);
	EXPECT_THROW(finite_decomposition(trivial_pair(), Subset::of(2, {0})), StructuralError);
}

TEST(SigmaFinite, InfiniteMemberSplitsIntoFinitePieces)
{
	/* non-additive on purpose: A = {1,2} is infinite, {1} and {2} finite */
	SetClass cls(2, {Subset::empty(2), Subset::of(2, {0}), Subset::of(2, {1}), Subset::full(2)});
	Instance inst(Universe::numbered(2), cls,
	              {MeasureValue(0), MeasureValue(1), MeasureValue(1), MeasureValue::infinite()});
	ASSERT_TRUE(is_sigma_finite(inst).sigma_finite);
	auto pieces = finite_decomposition(inst, Subset::full(2));
	EXPECT_TRUE(is_partition(pieces, Subset::full(2)));
	for (const Subset &p : pieces)
		EXPECT_TRUE(inst.mu_of(p)->is_finite());
}

TEST(Counterexample, FoundOutsideRingAndRevalidates)
{
	Instance inst = trivial_pair();
	auto w = search_uniqueness_counterexample(inst, {.seed = 1});
	ASSERT_TRUE(w);
	EXPECT_TRUE(revalidate(inst, *w));
	EXPECT_FALSE(generate_ring(inst.set_class()).contains(w->set));
	EXPECT_NE(w->first_value, w->second_value);
	EXPECT_EQ(weight_of(w->first_weights, w->set), w->first_value);
	EXPECT_EQ(weight_of(w->second_weights, w->set), w->second_value);
	/* both measures give {1} the value 1 */
	EXPECT_EQ(weight_of(w->first_weights, Subset::of(2, {0})), MeasureValue(1));
	EXPECT_EQ(weight_of(w->second_weights, Subset::of(2, {0})), MeasureValue(1));
}

TEST(Counterexample, SeedReproducible)
{
	Instance inst = trivial_pair();
	auto a = search_uniqueness_counterexample(inst, {.seed = 42});
	auto b = search_uniqueness_counterexample(inst, {.seed = 42});
	ASSERT_TRUE(a && b);
	EXPECT_EQ(a->trial, b->trial);
	EXPECT_EQ(a->set, b->set);
	EXPECT_EQ(a->first_weights, b->first_weights);
	EXPECT_EQ(a->second_weights, b->second_weights);
}

TEST(Counterexample, NoneWhenTheRingIsThePowerSet)
{
	SetClass cls = interval_semi_ring(3);
	Instance inst(Universe::numbered(3), cls,
	              oracle::weights_premeasure(cls, {Rational(1), Rational(1), Rational(1)}));
	EXPECT_FALSE(search_uniqueness_counterexample(inst, {.seed = 1, .budget = 50}));
}

TEST(Counterexample, RevalidateRejectsBadWitnesses)
{
	Instance inst = trivial_pair();
	auto w = search_uniqueness_counterexample(inst, {.seed = 3});
	ASSERT_TRUE(w);
	CounterexampleWitness bad = *w;
	bad.first_weights[0] = MeasureValue(5);  // no longer extends mu({1}) = 1
	EXPECT_FALSE(revalidate(inst, bad));
	CounterexampleWitness in_ring = *w;
	in_ring.set = Subset::of(2, {0});
	EXPECT_FALSE(revalidate(inst, in_ring));
}

TEST(Counterexample, SplitsCellsInsideMembers)
{
	/* {1,2} is a member and no atom is free; a split of the cell differs
	 * on {1} */
	Instance inst(Universe::numbered(2), SetClass(2, {Subset::empty(2), Subset::full(2)}),
	              {MeasureValue(0), MeasureValue(1)});
	auto w = search_uniqueness_counterexample(inst, {.seed = 5});
	ASSERT_TRUE(w);
	EXPECT_TRUE(revalidate(inst, *w));
	EXPECT_EQ(weight_of(w->first_weights, Subset::full(2)), MeasureValue(1));
}
