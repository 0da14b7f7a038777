/* SPDX-License-Identifier: Apache-2.0 */

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsr/set_core.hpp"

using namespace qsr;

namespace {

MeasureValue q(long p, long d) { return MeasureValue::finite(Rational(p, d)); }

Instance numbered(std::size_t n, std::vector<Subset> members, Premeasure mu)
{
	return Instance(Universe::numbered(n), SetClass(n, std::move(members)), std::move(mu));
}

} // namespace

TEST(MeasureValue, ParseAndFormat)
{
	EXPECT_EQ(MeasureValue::parse("3/6")->to_string(), "1/2");
	EXPECT_EQ(MeasureValue::parse("4/2")->to_string(), "2");
	EXPECT_EQ(MeasureValue::parse("0")->to_string(), "0");
	EXPECT_TRUE(MeasureValue::parse("inf")->is_infinite());
	for (const char *bad : {"1/0", "-1", "1.5", "", "/2", "1/", "a", "inf/2", " 1"})
		EXPECT_FALSE(MeasureValue::parse(bad)) << bad;
}

TEST(MeasureValue, InfinityAbsorbsAndOrdersLast)
{
	MeasureValue inf = MeasureValue::infinite();
	EXPECT_EQ(inf + q(1, 2), inf);
	EXPECT_LT(q(1000000, 1), inf);
	EXPECT_EQ(q(1, 3) + q(1, 6), q(1, 2));
	EXPECT_THROW(inf.value(), std::logic_error);
	EXPECT_THROW(MeasureValue::finite(Rational(-1)), std::invalid_argument);
	EXPECT_EQ(measure_sum({}), MeasureValue(0));
}

TEST(Subset, Operations)
{
	Subset a = Subset::of(4, {0, 1}), b = Subset::of(4, {1, 2});
	EXPECT_EQ(a & b, Subset::of(4, {1}));
	EXPECT_EQ(a | b, Subset::of(4, {0, 1, 2}));
	EXPECT_EQ(a - b, Subset::of(4, {0}));
	EXPECT_EQ(a.complement(), Subset::of(4, {2, 3}));
	EXPECT_EQ(a.lowest(), 0u);
	EXPECT_EQ(b.count(), 2u);
	EXPECT_TRUE(Subset::of(4, {1}).is_subset_of(a));
	EXPECT_FALSE(a.disjoint_with(b));
	EXPECT_THROW(a | Subset::of(5, {0}), StructuralError);
}

TEST(Universe, Validation)
{
	EXPECT_THROW(Universe({"a", "a"}), StructuralError);
	EXPECT_THROW(Universe({"a", ""}), StructuralError);
	EXPECT_THROW(Universe(std::vector<std::string>{}), StructuralError);
	std::vector<std::string> many;
	for (int i = 0; i < 21; ++i)
		many.push_back("x" + std::to_string(i));
	EXPECT_THROW(Universe{many}, CapacityError);
	EXPECT_NO_THROW(Universe(many, 21));
	Universe u({"b", "a"});
	EXPECT_EQ(u.format(Subset::of(2, {0, 1})), "{b,a}");
	EXPECT_EQ(u.format(Subset::empty(2)), "{}");
}

TEST(SetClass, RejectsDuplicatesAndMixedUniverses)
{
	EXPECT_THROW(SetClass(2, {Subset::empty(2), Subset::empty(2)}), StructuralError);
	EXPECT_THROW(SetClass(2, {Subset::empty(3)}), StructuralError);
}

TEST(Instance, RequiresEmptySetAndOneValuePerMember)
{
	EXPECT_THROW(numbered(2, {Subset::of(2, {0})}, {q(1, 1)}), StructuralError);
	EXPECT_THROW(numbered(2, {Subset::empty(2)}, {}), StructuralError);
}

TEST(IsPartition, Basics)
{
	std::vector<Subset> fam{Subset::of(3, {0}), Subset::of(3, {1, 2})};
	EXPECT_TRUE(is_partition(fam, Subset::full(3)));
	fam.push_back(Subset::of(3, {2}));
	EXPECT_FALSE(is_partition(fam, Subset::full(3)));
	EXPECT_TRUE(is_partition({}, Subset::empty(3)));
}

TEST(ValidatePremeasure, AdditiveCounterexample)
{
	/* {1,2} = {1} ⊔ {2} but 1/2 + 1/2 != 2 */
	Instance inst = numbered(2,
		{Subset::empty(2), Subset::of(2, {0}), Subset::of(2, {1}), Subset::full(2)},
		{MeasureValue(0), q(1, 2), q(1, 2), q(2, 1)});
	ValidationReport r = validate_premeasure(inst);
	ASSERT_EQ(r.verdict, Verdict::fail);
	ASSERT_TRUE(r.witness);
	EXPECT_EQ(r.witness->target, Subset::full(2));
	EXPECT_EQ(r.witness->expected, MeasureValue(1));
	EXPECT_EQ(r.witness->actual, MeasureValue(2));
	EXPECT_TRUE(is_partition(r.witness->partition, r.witness->target));
}

TEST(ValidatePremeasure, NonzeroEmptySet)
{
	Instance inst = numbered(1, {Subset::empty(1)}, {MeasureValue(1)});
	ValidationReport r = validate_premeasure(inst);
	ASSERT_EQ(r.verdict, Verdict::fail);
	EXPECT_EQ(r.witness->target, Subset::empty(1));
}

TEST(ValidatePremeasure, InfiniteValuesAreAdditive)
{
	Instance inst = numbered(2,
		{Subset::empty(2), Subset::of(2, {0}), Subset::of(2, {1}), Subset::full(2)},
		{MeasureValue(0), MeasureValue::infinite(), q(1, 2), MeasureValue::infinite()});
	EXPECT_EQ(validate_premeasure(inst).verdict, Verdict::pass);
}

TEST(ValidatePremeasure, NodeCapGivesInconclusive)
{
	/* every subset is a member, so partitions of the full set are many */
	const std::size_t n = 10;
	std::vector<Subset> members;
	Premeasure mu;
	for (Mask m = 0; m < (Mask(1) << n); ++m) {
		members.emplace_back(n, m);
		mu.emplace_back(static_cast<long>(std::popcount(m)));
	}
	Instance inst = numbered(n, members, mu);
	ValidationReport r = validate_premeasure(inst, {.node_cap = 5});
	EXPECT_EQ(r.verdict, Verdict::inconclusive);
	EXPECT_TRUE(r.capped_member);
	EXPECT_EQ(validate_premeasure(inst).verdict, Verdict::pass);
}

TEST(ValidatePremeasure, AgreesWithPartitionEnumeration)
{
	int fails = 0;
	for (std::uint64_t t = 0; t < 300; ++t) {
		SplitMix rng = SplitMix::for_trial(11, t);
		std::size_t n = 1 + rng.below(5);
		SetClass cls = oracle::random_class(rng, n, 1 + rng.below(9));
		Premeasure mu;
		if (rng.one_in(2)) {
			std::vector<Rational> w;
			for (std::size_t a = 0; a < n; ++a)
				w.emplace_back(static_cast<long>(rng.below(4)), 1 + static_cast<long>(rng.below(2)));
			mu = oracle::weights_premeasure(cls, w);
		} else {
			mu = oracle::random_values(rng, cls);
		}
		Instance inst(Universe::numbered(n), cls, mu);
		bool expected = oracle::additive_by_enumeration(inst);
		ValidationReport r = validate_premeasure(inst);
		EXPECT_EQ(r.verdict == Verdict::pass, expected) << "trial " << t;
		if (r.verdict == Verdict::fail) {
			++fails;
			/* the witness is an actual partition with a mismatched sum */
			ASSERT_TRUE(r.witness);
			EXPECT_TRUE(is_partition(r.witness->partition, r.witness->target));
			std::vector<MeasureValue> vals;
			for (const Subset &p : r.witness->partition)
				vals.push_back(*inst.mu_of(p));
			EXPECT_EQ(measure_sum(vals), r.witness->expected);
			EXPECT_EQ(*inst.mu_of(r.witness->target), r.witness->actual);
			EXPECT_NE(r.witness->expected, r.witness->actual);
		}
	}
	EXPECT_GT(fails, 0);
}
