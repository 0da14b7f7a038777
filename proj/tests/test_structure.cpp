/* SPDX-License-Identifier: Apache-2.0 */

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsr/structure.hpp"

using namespace qsr;

namespace {

SetClass permuted(const SetClass &cls, const std::vector<std::size_t> &perm,
                  bool reverse_order)
{
	std::vector<Subset> members;
	for (const Subset &s : cls) {
		Mask m = 0;
		for (std::size_t a : s.indices())
			m |= Mask(1) << perm[a];
		members.emplace_back(cls.universe_size(), m);
	}
	if (reverse_order)
		std::reverse(members.begin(), members.end());
	return SetClass(cls.universe_size(), std::move(members));
}

} // namespace

TEST(Decompose, FindsPartitionIntoMembers)
{
	SetClass cls = interval_semi_ring(4);
	auto d = decompose_as_disjoint_union(Subset::of(4, {0, 1, 3}), cls);
	ASSERT_TRUE(d);
	EXPECT_TRUE(is_partition(d->subsets(cls), Subset::of(4, {0, 1, 3})));
	EXPECT_FALSE(decompose_as_disjoint_union(Subset::of(4, {0, 1, 3}),
	                                         SetClass(4, {Subset::empty(4),
	                                                      Subset::of(4, {0, 1})})));
	auto e = decompose_as_disjoint_union(Subset::empty(4), cls);
	ASSERT_TRUE(e);
	EXPECT_TRUE(e->pieces.empty());
}

TEST(Decompose, MemberTargetComesBackWhole)
{
	SetClass cls = interval_semi_ring(3);
	auto d = decompose_as_disjoint_union(Subset::of(3, {0, 1}), cls);
	ASSERT_TRUE(d);
	ASSERT_EQ(d->pieces.size(), 1u);
	EXPECT_EQ(cls[d->pieces[0]], Subset::of(3, {0, 1}));
}

TEST(Decompose, AgreesWithEnumeration)
{
	for (std::uint64_t t = 0; t < 200; ++t) {
		SplitMix rng = SplitMix::for_trial(3, t);
		std::size_t n = 1 + rng.below(6);
		SetClass cls = oracle::random_class(rng, n, rng.below(10));
		auto masks = oracle::masks_of(cls);
		for (Mask target = 0; target <= oracle::full_mask(n); ++target) {
			auto d = decompose_as_disjoint_union(Subset(n, target), cls);
			ASSERT_EQ(d.has_value(), oracle::decomposable(masks, target));
			if (d) {
				EXPECT_TRUE(is_partition(d->subsets(cls), Subset(n, target)));
			}
		}
	}
}

TEST(Structure, VennRegionsAreQuasiSemiRingNotSemiRing)
{
	ClassFixture f = example1_fixture();
	EXPECT_EQ(f.universe.size(), 8u);
	EXPECT_EQ(f.set_class.size(), 9u);
	StructureReport r = is_quasi_semi_ring(f.set_class);
	EXPECT_TRUE(r.quasi_semi_ring);
	EXPECT_FALSE(r.semi_ring);
	EXPECT_FALSE(r.ring);
	EXPECT_FALSE(r.failure);
	EXPECT_TRUE(oracle::quasi_semi_ring(oracle::masks_of(f.set_class)));
	EXPECT_FALSE(oracle::semi_ring(oracle::masks_of(f.set_class)));
}

TEST(Structure, VennRegionIntersectionPieces)
{
	ClassFixture f = example1_fixture();
	const Universe &u = f.universe;
	Subset a = f.set_class[1], b = f.set_class[2];
	auto d = decompose_as_disjoint_union(a & b, f.set_class);
	ASSERT_TRUE(d);
	std::vector<std::string> names;
	for (const Subset &p : d->subsets(f.set_class))
		names.push_back(u.format(p));
	std::sort(names.begin(), names.end());
	EXPECT_EQ(names, (std::vector<std::string>{"{ABC}", "{ABc}"}));
	EXPECT_FALSE(f.set_class.contains(a | b));
	EXPECT_FALSE(is_ring(f.set_class));
}

TEST(Structure, DegenerateVennRegionsCanBeSemiRings)
{
	/* with A∩B∩C^c empty, A∩B is the member A∩B∩C */
	ClassFixture f = example1_fixture({"ABc"});
	EXPECT_TRUE(is_semi_ring(f.set_class));
	/* with A∩B empty the class is still a quasi-semi-ring */
	ClassFixture g = example1_fixture({"ABC", "ABc"});
	EXPECT_TRUE(is_quasi_semi_ring(g.set_class).quasi_semi_ring);
}

TEST(Structure, StandardClasses)
{
	EXPECT_TRUE(is_semi_ring(interval_semi_ring(5)));
	EXPECT_FALSE(is_ring(interval_semi_ring(5)));
	EXPECT_TRUE(is_algebra(power_set_class(4)));
	EXPECT_EQ(interval_semi_ring(3).size(), 7u);
	/* ring without the universe */
	SetClass r(3, {Subset::empty(3), Subset::of(3, {0}), Subset::of(3, {1}),
	               Subset::of(3, {0, 1})});
	EXPECT_TRUE(is_ring(r));
	EXPECT_FALSE(is_algebra(r));
}

TEST(Structure, FailureWitness)
{
	SetClass cls(3, {Subset::empty(3), Subset::of(3, {0, 1}), Subset::of(3, {1, 2})});
	StructureReport r = is_quasi_semi_ring(cls);
	ASSERT_FALSE(r.quasi_semi_ring);
	ASSERT_TRUE(r.failure);
	EXPECT_EQ(*r.failure->a, Subset::of(3, {0, 1}));
	EXPECT_EQ(*r.failure->b, Subset::of(3, {1, 2}));
	EXPECT_EQ(*r.failure->target, Subset::of(3, {1}));

	SetClass no_empty(2, {Subset::of(2, {0})});
	StructureReport s = is_quasi_semi_ring(no_empty);
	EXPECT_FALSE(s.quasi_semi_ring);
	ASSERT_TRUE(s.failure);
	EXPECT_FALSE(s.failure->a);
}

TEST(StructureProperty, MatchesOracleAndHierarchy)
{
	std::size_t qsr_count = 0;
	for (std::uint64_t t = 0; t < 200; ++t) {
		SplitMix rng = SplitMix::for_trial(5, t);
		std::size_t n = 1 + rng.below(5);
		SetClass cls = oracle::random_class(rng, n, 1 + rng.below(6));
		auto masks = oracle::masks_of(cls);
		StructureReport r = is_quasi_semi_ring(cls);
		ASSERT_EQ(r.quasi_semi_ring, oracle::quasi_semi_ring(masks)) << t;
		ASSERT_EQ(r.semi_ring, oracle::semi_ring(masks)) << t;
		qsr_count += r.quasi_semi_ring;
		EXPECT_TRUE(!r.algebra || r.ring);
		EXPECT_TRUE(!r.ring || r.semi_ring);
		EXPECT_TRUE(!r.semi_ring || r.quasi_semi_ring);
		EXPECT_EQ(r.ring, is_ring(cls));
		EXPECT_EQ(r.algebra, is_algebra(cls));
		EXPECT_EQ(r.quasi_semi_ring, !r.failure.has_value());
	}
	EXPECT_GT(qsr_count, 20u);
}

TEST(StructureProperty, InvariantUnderRelabellingAndReordering)
{
	for (std::uint64_t t = 0; t < 200; ++t) {
		SplitMix rng = SplitMix::for_trial(6, t);
		std::size_t n = 1 + rng.below(6);
		SetClass cls = oracle::random_class(rng, n, 1 + rng.below(7));
		std::vector<std::size_t> perm(n);
		for (std::size_t i = 0; i < n; ++i)
			perm[i] = i;
		for (std::size_t i = n; i > 1; --i)
			std::swap(perm[i - 1], perm[rng.below(i)]);
		StructureReport a = is_quasi_semi_ring(cls);
		StructureReport b = is_quasi_semi_ring(permuted(cls, perm, rng.one_in(2)));
		EXPECT_EQ(a.quasi_semi_ring, b.quasi_semi_ring);
		EXPECT_EQ(a.semi_ring, b.semi_ring);
		EXPECT_EQ(a.ring, b.ring);
		EXPECT_EQ(a.algebra, b.algebra);
	}
}
