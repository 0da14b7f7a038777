/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/set_core.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

namespace qsr {

CapacityError::CapacityError(std::size_t requested, std::size_t cap)
: std::runtime_error("universe of " + std::to_string(requested)
                     + " atoms exceeds the cap of " + std::to_string(cap))
, requested_(requested)
, cap_(cap)
{}

void require_table_capacity(std::size_t n, std::size_t cap)
{
	if (n > cap)
		throw CapacityError(n, cap);
}

/* ---- Subset ---- */

namespace {

Mask full_mask(std::size_t n)
{
	return n >= 32 ? ~Mask(0) : (Mask(1) << n) - 1;
}

} // namespace

Subset::Subset(std::size_t universe_size, Mask mask)
: n_(static_cast<std::uint8_t>(universe_size))
, mask_(mask)
{
	if (universe_size > kHardMaxUniverse)
		throw CapacityError(universe_size, kHardMaxUniverse);
	if ((mask & ~full_mask(universe_size)) != 0)
		throw StructuralError("subset refers to atoms outside its universe");
}

Subset Subset::full(std::size_t universe_size)
{
	return {universe_size, full_mask(universe_size)};
}

Subset Subset::of(std::size_t universe_size,
                  std::initializer_list<std::size_t> indices)
{
	return of(universe_size,
	          std::span<const std::size_t>(indices.begin(), indices.size()));
}

Subset Subset::of(std::size_t universe_size, std::span<const std::size_t> indices)
{
	Mask m = 0;
	for (std::size_t i : indices) {
		if (i >= universe_size)
			throw StructuralError("atom index " + std::to_string(i)
			                      + " outside universe of size "
			                      + std::to_string(universe_size));
		m |= Mask(1) << i;
	}
	return {universe_size, m};
}

std::size_t Subset::count() const { return std::popcount(mask_); }

bool Subset::contains(std::size_t atom) const
{
	return atom < n_ && ((mask_ >> atom) & 1u);
}

std::size_t Subset::lowest() const { return std::countr_zero(mask_); }

std::vector<std::size_t> Subset::indices() const
{
	std::vector<std::size_t> out;
	for (Mask m = mask_; m; m &= m - 1)
		out.push_back(std::countr_zero(m));
	return out;
}

void require_same_universe(const Subset &a, const Subset &b)
{
	if (a.universe_size() != b.universe_size())
		throw StructuralError("subsets of different universes ("
		                      + std::to_string(a.universe_size()) + " vs "
		                      + std::to_string(b.universe_size()) + " atoms)");
}

bool Subset::is_subset_of(const Subset &o) const
{
	require_same_universe(*this, o);
	return (mask_ & ~o.mask_) == 0;
}

bool Subset::disjoint_with(const Subset &o) const
{
	require_same_universe(*this, o);
	return (mask_ & o.mask_) == 0;
}

Subset Subset::complement() const
{
	return {n_, ~mask_ & full_mask(n_)};
}

Subset operator|(const Subset &a, const Subset &b)
{
	require_same_universe(a, b);
	return {a.n_, a.mask_ | b.mask_};
}

Subset operator&(const Subset &a, const Subset &b)
{
	require_same_universe(a, b);
	return {a.n_, a.mask_ & b.mask_};
}

Subset operator-(const Subset &a, const Subset &b)
{
	require_same_universe(a, b);
	return {a.n_, a.mask_ & ~b.mask_};
}

/* ---- Universe ---- */

Universe::Universe(std::vector<std::string> labels, std::size_t max_size)
: labels_(std::move(labels))
{
	if (labels_.empty())
		throw StructuralError("universe must contain at least one atom");
	if (labels_.size() > std::min(max_size, kHardMaxUniverse))
		throw CapacityError(labels_.size(), std::min(max_size, kHardMaxUniverse));
	std::unordered_set<std::string> seen;
	for (const std::string &l : labels_) {
		if (l.empty())
			throw StructuralError("atom labels must be nonempty");
		if (!seen.insert(l).second)
			throw StructuralError("duplicate atom label '" + l + "'");
	}
}

Universe Universe::numbered(std::size_t n)
{
	std::vector<std::string> labels;
	for (std::size_t i = 1; i <= n; ++i)
		labels.push_back(std::to_string(i));
	return Universe(std::move(labels), kHardMaxUniverse);
}

std::optional<std::size_t> Universe::index_of(std::string_view label) const
{
	auto it = std::find(labels_.begin(), labels_.end(), label);
	if (it == labels_.end())
		return std::nullopt;
	return static_cast<std::size_t>(it - labels_.begin());
}

std::string Universe::format(const Subset &s) const
{
	std::string out = "{";
	bool first = true;
	for (std::size_t i : s.indices()) {
		if (!first)
			out += ",";
		out += labels_.at(i);
		first = false;
	}
	return out + "}";
}

/* ---- SetClass ---- */

SetClass::SetClass(std::size_t universe_size, std::vector<Subset> members)
: n_(universe_size)
, members_(std::move(members))
{
	std::unordered_set<Mask> seen;
	for (const Subset &s : members_) {
		if (s.universe_size() != n_)
			throw StructuralError("class member over a different universe");
		if (!seen.insert(s.mask()).second)
			throw StructuralError("duplicate class member");
	}
}

std::optional<std::size_t> SetClass::index_of(const Subset &s) const
{
	for (std::size_t i = 0; i < members_.size(); ++i)
		if (members_[i] == s)
			return i;
	return std::nullopt;
}

Subset SetClass::support() const
{
	Subset u = Subset::empty(n_);
	for (const Subset &s : members_)
		u = u | s;
	return u;
}

/* ---- Instance ---- */

Instance::Instance(Universe universe, SetClass cls, Premeasure mu)
: universe_(std::move(universe))
, class_(std::move(cls))
, mu_(std::move(mu))
{
	if (class_.universe_size() != universe_.size())
		throw StructuralError("class and universe sizes differ");
	if (mu_.size() != class_.size())
		throw StructuralError("premeasure must assign exactly one value per member");
	if (!class_.has_empty())
		throw StructuralError("class must contain the empty set");
}

std::optional<MeasureValue> Instance::mu_of(const Subset &s) const
{
	auto i = class_.index_of(s);
	if (!i)
		return std::nullopt;
	return mu_[*i];
}

Instance Instance::with_premeasure(Premeasure mu) const
{
	return Instance(universe_, class_, std::move(mu));
}

bool is_partition(std::span<const Subset> family, const Subset &target)
{
	Subset covered = Subset::empty(target.universe_size());
	for (const Subset &s : family) {
		require_same_universe(s, target);
		if (!s.disjoint_with(covered))
			return false;
		covered = covered | s;
	}
	return covered == target;
}

std::string_view to_string(Verdict v)
{
	switch (v) {
	case Verdict::pass: return "PASS";
	case Verdict::fail: return "FAIL";
	case Verdict::skipped: return "SKIPPED";
	case Verdict::inconclusive: return "INCONCLUSIVE";
	case Verdict::found: return "FOUND";
	case Verdict::none: return "NONE";
	}
	return "?";
}

std::optional<Verdict> parse_verdict(std::string_view s)
{
	for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::skipped,
	                  Verdict::inconclusive, Verdict::found, Verdict::none})
		if (to_string(v) == s)
			return v;
	return std::nullopt;
}

/* ---- premeasure validation ----
 *
 * sums(R) is the set of values taken by sum(mu) over the partitions of R
 * into nonempty members. Only two distinct values are kept: if a remainder
 * already has two, every target that reaches it through finite pieces
 * also has two, and infinite pieces collapse everything to inf anyway.
 * Partitions branch on the lowest atom of the remainder, so each partition
 * is produced exactly once. */

namespace {

struct PartialSum {
	MeasureValue value;
	std::vector<std::size_t> pieces;
};

class PartitionSums {
public:
	PartitionSums(const Instance &inst, std::size_t cap)
	: inst_(inst)
	, cap_(cap)
	, by_atom_(inst.size())
	{
		const SetClass &cls = inst.set_class();
		for (std::size_t i = 0; i < cls.size(); ++i)
			for (std::size_t a : cls[i].indices())
				by_atom_[a].push_back(i);
		memo_.emplace(0, std::vector<PartialSum>{PartialSum{}});
	}

	void reset_budget() { nodes_ = 0; }
	bool exhausted() const { return nodes_ > cap_; }

	/* nullptr when the node budget ran out. */
	const std::vector<PartialSum> *sums(Mask r)
	{
		if (auto it = memo_.find(r); it != memo_.end())
			return &it->second;
		const SetClass &cls = inst_.set_class();
		std::vector<PartialSum> out;
		std::size_t a = std::countr_zero(r);
		for (std::size_t m : by_atom_[a]) {
			if (++nodes_ > cap_)
				return nullptr;
			Mask mm = cls[m].mask();
			if ((mm & ~r) != 0)
				continue;
			const std::vector<PartialSum> *rest = sums(r & ~mm);
			if (!rest)
				return nullptr;
			for (const PartialSum &p : *rest) {
				MeasureValue v = inst_.mu(m) + p.value;
				bool dup = std::any_of(out.begin(), out.end(),
				                       [&](const PartialSum &q) { return q.value == v; });
				if (dup || out.size() >= 2)
					continue;
				PartialSum ps{v, {m}};
				ps.pieces.insert(ps.pieces.end(), p.pieces.begin(), p.pieces.end());
				out.push_back(std::move(ps));
			}
		}
		return &memo_.emplace(r, std::move(out)).first->second;
	}

private:
	const Instance &inst_;
	std::size_t cap_;
	std::size_t nodes_ = 0;
	std::vector<std::vector<std::size_t>> by_atom_;
	std::unordered_map<Mask, std::vector<PartialSum>> memo_;
};

} // namespace

ValidationReport validate_premeasure(const Instance &inst, ValidationOptions opts)
{
	ValidationReport rep;
	rep.node_cap = opts.node_cap;
	const SetClass &cls = inst.set_class();
	const std::size_t n = inst.size();
	Subset empty = Subset::empty(n);

	auto zero = inst.mu_of(empty);
	if (*zero != MeasureValue(0)) {
		rep.verdict = Verdict::fail;
		rep.witness = PartitionWitness{empty, {}, MeasureValue(0), *zero};
		return rep;
	}

	PartitionSums sums(inst, opts.node_cap);
	for (std::size_t t = 0; t < cls.size(); ++t) {
		if (cls[t].empty())
			continue;
		sums.reset_budget();
		const std::vector<PartialSum> *s = sums.sums(cls[t].mask());
		if (!s) {
			rep.verdict = Verdict::inconclusive;
			rep.capped_member = cls[t];
			return rep;
		}
		for (const PartialSum &p : *s) {
			if (p.value == inst.mu(t))
				continue;
			std::vector<Subset> parts;
			for (std::size_t i : p.pieces)
				parts.push_back(cls[i]);
			rep.verdict = Verdict::fail;
			rep.witness = PartitionWitness{cls[t], std::move(parts), p.value,
			                               inst.mu(t)};
			return rep;
		}
	}
	return rep;
}

} // namespace qsr
