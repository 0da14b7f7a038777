/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsr/set_core.hpp"
#include "qsr/structure.hpp"

namespace qsr {

/* mu*(E) for every E of the universe, indexed by mask. */
class OuterMeasureTable {
public:
	/* Test hook: wraps arbitrary values, no invariants are checked. */
	static OuterMeasureTable from_values(std::size_t universe_size,
	                                     std::vector<MeasureValue> values);

	std::size_t universe_size() const { return n_; }
	const MeasureValue &operator[](Mask m) const { return values_[m]; }
	const MeasureValue &at(const Subset &s) const;
	const std::vector<MeasureValue> &values() const { return values_; }

private:
	friend OuterMeasureTable outer_measure_table(const Instance &, std::size_t);
	std::size_t n_ = 0;
	std::vector<MeasureValue> values_;
};

/* Minimum-cost cover: table[E] = min over members M containing the lowest
 * atom of E of mu(M) + table[E \ M], table[∅] = 0. Covers may overshoot
 * E. A set no member family covers gets inf. */
OuterMeasureTable outer_measure_table(const Instance &inst,
                                      std::size_t cap = kDefaultTableCap);

/* Infimum of sum(mu) over pairwise-disjoint member families covering E.
 * Branch and bound over the lowest uncovered atom of E; when `bound` is
 * given, partial + bound[E \ covered] is used as an admissible lower bound
 * (a disjoint cover is also a cover) and the search stops as soon as it
 * reaches bound[E]. */
MeasureValue disjoint_outer_measure(const Instance &inst, const Subset &e,
                                    const OuterMeasureTable *bound = nullptr);

struct Disjointification {
	/* Member indices of the pieces, grouped by originating cover element. */
	std::vector<std::size_t> pieces;
	/* Only with a premeasure: sum over the cover and over the pieces. */
	std::optional<MeasureValue> cover_sum, piece_sum;
};

/* Rewrites cover A_1..A_k as the disjoint family obtained by splitting each
 * B_n = A_n ∩ A_{n-1}^c ∩ ... ∩ A_1^c one complement at a time, every step
 * being a decomposition of (member \ member). Throws StructuralError naming
 * the pair whose difference does not decompose. */
Disjointification disjointify(std::span<const Subset> cover, const SetClass &cls);
Disjointification disjointify(std::span<const Subset> cover, const Instance &inst);

/* ---- measurability ---- */

struct SplitWitness {
	Subset e;
	MeasureValue whole;     // mu*(E)
	MeasureValue split;     // mu*(E∩A) + mu*(E∩A^c)
};

/* nullopt when A satisfies the splitting identity for every E; otherwise
 * the failing E with the smallest mask. */
std::optional<SplitWitness> measurability_witness(const OuterMeasureTable &table,
                                                  const Subset &a);
bool is_measurable(const OuterMeasureTable &table, const Subset &a);

struct MeasurabilityReport {
	std::vector<Subset> measurable_sets;
	std::vector<std::pair<Subset, SplitWitness>> failures;
	bool contains_empty_and_full = false;
	bool closed_under_complement = false;
	bool closed_under_union = false;

	bool is_algebra() const
	{
		return contains_empty_and_full && closed_under_complement
		    && closed_under_union;
	}
};

MeasurabilityReport measurable_sets(const OuterMeasureTable &table);

/* ---- extension checks ---- */

struct ExtensionReport {
	Verdict verdict = Verdict::pass;
	std::string reason;
	std::optional<Subset> member;
	std::optional<SplitWitness> split;              // failed measurability
	std::optional<MeasureValue> outer, premeasure;  // failed mu* = mu
};

/* Every member is Carathéodory-measurable and mu*(A) = mu(A). SKIPPED when
 * the class is not a quasi-semi-ring, the premeasure does not validate, or
 * the universe exceeds the table cap. */
ExtensionReport verify_extension_theorem(const Instance &inst,
                                         std::size_t cap = kDefaultTableCap);

struct AlternativeDefinitionReport {
	Verdict verdict = Verdict::pass;
	std::string reason;
	std::optional<Subset> witness;
	std::optional<MeasureValue> disjoint_value, table_value;
};

/* Disjoint-cover infimum equals mu* on every subset. */
AlternativeDefinitionReport verify_alternative_definition(
	const Instance &inst, std::size_t cap = kDefaultTableCap);

enum class OuterAxiom { none, empty_is_zero, monotone, subadditive };

struct OuterAxiomReport {
	Verdict verdict = Verdict::pass;
	OuterAxiom violated = OuterAxiom::none;
	std::optional<Subset> first, second;
};

/* mu*(∅) = 0, monotonicity and finite subadditivity. Monotonicity is
 * checked along single-atom extensions and subadditivity over disjoint
 * pairs; with monotonicity these imply the statements for all pairs. */
OuterAxiomReport verify_outer_measure_axioms(const OuterMeasureTable &table);

std::string_view to_string(OuterAxiom a);

} // namespace qsr
