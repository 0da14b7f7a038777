/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsr/set_core.hpp"

namespace qsr {

/* target as a disjoint union of class members, given by member index. The
 * empty target has no pieces; the empty member never appears. */
struct Decomposition {
	Subset target;
	std::vector<std::size_t> pieces;

	std::vector<Subset> subsets(const SetClass &cls) const;
};

/* Exact-cover search for disjoint decompositions into members of one
 * class. Branches on the lowest atom of the remaining target over members
 * contained in it, in class order, after first trying the remainder itself
 * as a member. Outcomes are memoized by remaining target, so repeated
 * queries against the same class are cheap. */
class Decomposer {
public:
	explicit Decomposer(const SetClass &cls);

	std::optional<Decomposition> decompose(const Subset &target);
	bool decomposable(const Subset &target);

	const SetClass &set_class() const { return cls_; }

private:
	bool search(Mask remaining);

	const SetClass &cls_;
	std::vector<std::vector<std::size_t>> by_atom_;
	/* remaining target -> first piece of a decomposition, or -1 */
	std::unordered_map<Mask, long> memo_;
};

std::optional<Decomposition> decompose_as_disjoint_union(const Subset &target,
                                                         const SetClass &cls);

struct StructureWitness {
	std::optional<Subset> a, b;
	/* A∩B or A∩B^c, whichever failed first */
	std::optional<Subset> target;
	std::string reason;
};

/* Flags are monotone: algebra => ring => semi_ring => quasi_semi_ring. */
struct StructureReport {
	bool quasi_semi_ring = false;
	bool semi_ring = false;
	bool ring = false;
	bool algebra = false;
	/* Why quasi_semi_ring is false. */
	std::optional<StructureWitness> failure;
};

/* Evaluates every level. On failure the witness is the first ordered pair
 * (A, B) in class order for which A∩B, then A∩B^c, has no decomposition. */
StructureReport is_quasi_semi_ring(const SetClass &cls);

/* A∩B is a member and A∩B^c decomposes, for every ordered pair. */
bool is_semi_ring(const SetClass &cls);

/* Contains the empty set and is closed under union and relative
 * complement (hence under intersection, which is also checked). */
bool is_ring(const SetClass &cls);

/* Ring that also contains the whole universe. */
bool is_algebra(const SetClass &cls);

/* ---- fixtures ---- */

/* A class skeleton: a labelled universe and the class over it. */
struct ClassFixture {
	Universe universe;
	SetClass set_class;
};

/* Venn-region example over three sets A, B, C. Atoms are the eight Venn
 * cells, labelled by membership ("ABC" = A∩B∩C, "aBc" = A^c∩B∩C^c, ...).
 * The class is { ∅, A, B, ABC, ABc, AbC, Abc, aBC, aBc }.
 *
 * `vanishing_cells` removes cells from the universe to model degenerate
 * choices of A, B, C; members that coincide are then listed once and
 * members that become empty collapse into ∅. */
ClassFixture example1_fixture(const std::vector<std::string> &vanishing_cells = {});

/* ∅ plus every contiguous run {i..j} of 1..n, by length then start. */
SetClass interval_semi_ring(std::size_t n);

/* All 2^n subsets in mask order. */
SetClass power_set_class(std::size_t n);

} // namespace qsr
