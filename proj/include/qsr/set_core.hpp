/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/measure_value.hpp"

namespace qsr {

inline constexpr std::size_t kDefaultMaxUniverse = 20;
/* Operations that materialize a value for every subset refuse larger
 * universes unless the caller raises this. */
inline constexpr std::size_t kDefaultTableCap = 16;
inline constexpr std::size_t kHardMaxUniverse = 30;

using Mask = std::uint32_t;

/* Inputs that violate a structural invariant (mismatched universes,
 * duplicate members, a class that is not a quasi-semi-ring where one is
 * required). */
class StructuralError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/* Universe too large for the requested operation. */
class CapacityError : public std::runtime_error {
public:
	CapacityError(std::size_t requested, std::size_t cap);
	std::size_t requested() const { return requested_; }
	std::size_t cap() const { return cap_; }

private:
	std::size_t requested_, cap_;
};

/* Set of atoms of a universe of `universe_size` atoms, stored as a bitmask.
 * All binary operations require both operands to live in the same
 * universe and throw StructuralError otherwise. */
class Subset {
public:
	Subset() = default;
	Subset(std::size_t universe_size, Mask mask);

	static Subset empty(std::size_t universe_size) { return {universe_size, 0}; }
	static Subset full(std::size_t universe_size);
	static Subset of(std::size_t universe_size,
	                 std::initializer_list<std::size_t> indices);
	static Subset of(std::size_t universe_size,
	                 std::span<const std::size_t> indices);

	std::size_t universe_size() const { return n_; }
	Mask mask() const { return mask_; }

	bool empty() const { return mask_ == 0; }
	std::size_t count() const;
	bool contains(std::size_t atom) const;
	/* Index of the smallest atom; undefined on the empty set. */
	std::size_t lowest() const;
	std::vector<std::size_t> indices() const;

	bool is_subset_of(const Subset &o) const;
	bool disjoint_with(const Subset &o) const;
	Subset complement() const;

	friend Subset operator|(const Subset &a, const Subset &b);
	friend Subset operator&(const Subset &a, const Subset &b);
	/* Relative complement a \ b. */
	friend Subset operator-(const Subset &a, const Subset &b);

	friend bool operator==(const Subset &, const Subset &) = default;
	friend auto operator<=>(const Subset &, const Subset &) = default;

private:
	std::uint8_t n_ = 0;
	Mask mask_ = 0;
};

void require_same_universe(const Subset &a, const Subset &b);

/* Ordered list of distinct, nonempty atom labels. */
class Universe {
public:
	explicit Universe(std::vector<std::string> labels,
	                  std::size_t max_size = kDefaultMaxUniverse);

	/* Labels "1", ..., "n". */
	static Universe numbered(std::size_t n);

	std::size_t size() const { return labels_.size(); }
	const std::string &label(std::size_t i) const { return labels_.at(i); }
	const std::vector<std::string> &labels() const { return labels_; }
	std::optional<std::size_t> index_of(std::string_view label) const;

	Subset full() const { return Subset::full(size()); }
	Subset empty() const { return Subset::empty(size()); }

	/* "{a,b}" in universe order; "{}" for the empty set. */
	std::string format(const Subset &s) const;

	friend bool operator==(const Universe &, const Universe &) = default;

private:
	std::vector<std::string> labels_;
};

/* Finite list of distinct subsets of one universe, in a fixed order. */
class SetClass {
public:
	SetClass() = default;
	SetClass(std::size_t universe_size, std::vector<Subset> members);

	std::size_t universe_size() const { return n_; }
	std::size_t size() const { return members_.size(); }
	const Subset &operator[](std::size_t i) const { return members_[i]; }
	const std::vector<Subset> &members() const { return members_; }
	auto begin() const { return members_.begin(); }
	auto end() const { return members_.end(); }

	std::optional<std::size_t> index_of(const Subset &s) const;
	bool contains(const Subset &s) const { return index_of(s).has_value(); }
	bool has_empty() const { return contains(Subset::empty(n_)); }
	/* Union of all members. */
	Subset support() const;

	friend bool operator==(const SetClass &, const SetClass &) = default;

private:
	std::size_t n_ = 0;
	std::vector<Subset> members_;
};

/* One value per class member, index-aligned with the class. */
using Premeasure = std::vector<MeasureValue>;

/* The triple (universe, class, premeasure). The class must contain the
 * empty set; additivity is not assumed here, see validate_premeasure. */
class Instance {
public:
	Instance(Universe universe, SetClass cls, Premeasure mu);

	const Universe &universe() const { return universe_; }
	const SetClass &set_class() const { return class_; }
	const Premeasure &premeasure() const { return mu_; }
	std::size_t size() const { return universe_.size(); }

	const MeasureValue &mu(std::size_t member) const { return mu_.at(member); }
	std::optional<MeasureValue> mu_of(const Subset &s) const;

	/* Same universe and class, different values. */
	Instance with_premeasure(Premeasure mu) const;

private:
	Universe universe_;
	SetClass class_;
	Premeasure mu_;
};

/* Members pairwise disjoint and their union equal to target. The empty
 * family partitions the empty set. */
bool is_partition(std::span<const Subset> family, const Subset &target);

enum class Verdict { pass, fail, skipped, inconclusive, found, none };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct PartitionWitness {
	Subset target;
	std::vector<Subset> partition;
	MeasureValue expected;  // sum over the partition
	MeasureValue actual;    // value assigned to target
};

struct ValidationReport {
	Verdict verdict = Verdict::pass;
	std::optional<PartitionWitness> witness;
	/* Set for INCONCLUSIVE: the member whose search hit the cap. */
	std::optional<Subset> capped_member;
	std::size_t node_cap = 0;
};

struct ValidationOptions {
	std::size_t node_cap = 1'000'000;
};

/* mu(empty) = 0 and, for every member T and every partition of T into
 * members, the values over the partition sum to mu(T). On a finite
 * universe countable additivity is exactly this finite check. */
ValidationReport validate_premeasure(const Instance &inst,
                                     ValidationOptions opts = {});

/* Throws CapacityError if n exceeds cap. */
void require_table_capacity(std::size_t n, std::size_t cap);

} // namespace qsr
