/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsr/extension.hpp"

namespace qsr {

/* r(A): every finite disjoint union of generators. */
struct GeneratedRing {
	std::vector<Subset> members;  // sorted by mask
	SetClass generators;

	bool contains(const Subset &s) const;
};

/* Closure of the generators under disjoint union: each member found so far
 * is extended by every generator disjoint from it, until nothing new
 * appears. Requires a quasi-semi-ring (StructuralError otherwise). */
GeneratedRing generate_ring(const SetClass &cls);

/* Closure of the class under pairwise union and relative complement,
 * sorted by mask. Independent of generate_ring. */
std::vector<Subset> union_difference_closure(const SetClass &cls);

/* Closure of the class together with the empty set under complement in the
 * universe and pairwise union, sorted by mask. */
std::vector<Subset> generated_sigma_algebra(const SetClass &cls);

struct RingReport {
	Verdict verdict = Verdict::pass;
	std::string reason;
	std::optional<Subset> witness;
	std::size_t ring_size = 0;
};

/* generate_ring equals the union/difference closure and is a ring. */
RingReport verify_smallest_ring(const SetClass &cls);

/* Two premeasures on the same universe and class. */
class TwoMeasureInstance {
public:
	TwoMeasureInstance(Instance first, Premeasure second);

	const Instance &first() const { return first_; }
	const Instance &second() const { return second_; }

	/* Index of the first member where the two disagree. */
	std::optional<std::size_t> first_disagreement() const;
	bool agree_on_class() const { return !first_disagreement().has_value(); }

private:
	Instance first_, second_;
};

struct UniquenessReport {
	Verdict verdict = Verdict::pass;
	std::string reason;
	std::optional<Subset> witness;
	std::optional<MeasureValue> first_value, second_value;
	std::size_t ring_size = 0;
	std::size_t sigma_size = 0;
	bool full_in_ring = false;
	bool sigma_equals_ring = false;
};

/* Outer-measure extensions of both premeasures agree on r(A). SKIPPED
 * unless both validate, agree on the class and are finite-valued. */
UniquenessReport verify_uniqueness_on_ring(const TwoMeasureInstance &two,
                                           std::size_t cap = kDefaultTableCap);

struct SigmaFiniteness {
	bool sigma_finite = false;
	/* Every nonempty member of finite measure. */
	std::vector<Subset> cover;
};

SigmaFiniteness is_sigma_finite(const Instance &inst);

/* Disjoint members of finite measure whose union is `a`: the finite cover
 * is disjointified and a ∩ H decomposed for each resulting piece H.
 * Throws StructuralError when the instance is not sigma-finite or `a` is
 * not a member. */
std::vector<Subset> finite_decomposition(const Instance &inst, const Subset &a);

/* Extensions agree on r(A) and on the generated sigma-algebra; also checks
 * that sigma-finiteness puts the universe in r(A), so both coincide.
 * SKIPPED unless both premeasures validate, are sigma-finite and agree on
 * the class. */
UniquenessReport verify_sigma_uniqueness(const TwoMeasureInstance &two,
                                         std::size_t cap = kDefaultTableCap);

/* Two additive measures on the full power set, given by atom weights. */
struct CounterexampleWitness {
	std::vector<MeasureValue> first_weights, second_weights;
	Subset set;  // outside r(A), where the two differ
	MeasureValue first_value, second_value;
	std::uint64_t trial = 0;
};

/* Sum of atom weights over s. */
MeasureValue weight_of(std::span<const MeasureValue> weights, const Subset &s);

/* Re-checks a witness: both measures extend the premeasure on every
 * member, differ on the witness set, and the set lies outside r(A). */
bool revalidate(const Instance &inst, const CounterexampleWitness &w);

struct SearchOptions {
	std::uint64_t seed = 0;
	std::uint64_t budget = 10'000;  // trials
	std::size_t cap = kDefaultTableCap;
};

/* Seeded random search for two measures on the power set that agree with
 * the premeasure on the class but differ outside r(A). Each trial draws
 * two extensions of mu* from the cells of the generated ring (free atoms
 * outside every member first, then splits of multi-atom cells); trial t
 * uses its own generator derived from (seed, t), and the lowest successful
 * trial is reported. */
std::optional<CounterexampleWitness>
search_uniqueness_counterexample(const Instance &inst, SearchOptions opts);

} // namespace qsr
