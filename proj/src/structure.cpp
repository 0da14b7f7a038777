/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/structure.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace qsr {

std::vector<Subset> Decomposition::subsets(const SetClass &cls) const
{
	std::vector<Subset> out;
	out.reserve(pieces.size());
	for (std::size_t i : pieces)
		out.push_back(cls[i]);
	return out;
}

Decomposer::Decomposer(const SetClass &cls)
: cls_(cls)
, by_atom_(cls.universe_size())
{
	for (std::size_t i = 0; i < cls.size(); ++i)
		for (std::size_t a : cls[i].indices())
			by_atom_[a].push_back(i);
	for (std::size_t i = 0; i < cls.size(); ++i)
		if (!cls[i].empty())
			memo_.emplace(cls[i].mask(), static_cast<long>(i));
}

bool Decomposer::search(Mask remaining)
{
	if (remaining == 0)
		return true;
	if (auto it = memo_.find(remaining); it != memo_.end())
		return it->second >= 0;
	long found = -1;
	for (std::size_t m : by_atom_[std::countr_zero(remaining)]) {
		Mask mm = cls_[m].mask();
		if ((mm & ~remaining) != 0)
			continue;
		if (search(remaining & ~mm)) {
			found = static_cast<long>(m);
			break;
		}
	}
	memo_[remaining] = found;
	return found >= 0;
}

bool Decomposer::decomposable(const Subset &target)
{
	if (target.universe_size() != cls_.universe_size())
		throw StructuralError("decomposition target over a different universe");
	return search(target.mask());
}

std::optional<Decomposition> Decomposer::decompose(const Subset &target)
{
	if (!decomposable(target))
		return std::nullopt;
	Decomposition d{target, {}};
	for (Mask r = target.mask(); r != 0;) {
		std::size_t m = static_cast<std::size_t>(memo_.at(r));
		d.pieces.push_back(m);
		r &= ~cls_[m].mask();
	}
	return d;
}

std::optional<Decomposition> decompose_as_disjoint_union(const Subset &target,
                                                         const SetClass &cls)
{
	Decomposer d(cls);
	return d.decompose(target);
}

StructureReport is_quasi_semi_ring(const SetClass &cls)
{
	StructureReport rep;
	if (!cls.has_empty()) {
		rep.failure = StructureWitness{std::nullopt, std::nullopt, std::nullopt,
		                               "missing empty set"};
		return rep;
	}
	Decomposer dec(cls);
	for (const Subset &a : cls) {
		for (const Subset &b : cls) {
			for (const Subset &t : {a & b, a - b}) {
				if (dec.decomposable(t))
					continue;
				rep.failure = StructureWitness{a, b, t,
				                               "no disjoint decomposition into members"};
				return rep;
			}
		}
	}
	rep.quasi_semi_ring = true;
	rep.semi_ring = is_semi_ring(cls);
	rep.ring = rep.semi_ring && is_ring(cls);
	rep.algebra = rep.ring && is_algebra(cls);
	return rep;
}

namespace {

std::unordered_set<Mask> mask_set(const SetClass &cls)
{
	std::unordered_set<Mask> s;
	for (const Subset &m : cls)
		s.insert(m.mask());
	return s;
}

} // namespace

bool is_semi_ring(const SetClass &cls)
{
	if (!cls.has_empty())
		return false;
	auto masks = mask_set(cls);
	Decomposer dec(cls);
	for (const Subset &a : cls)
		for (const Subset &b : cls) {
			if (!masks.contains((a & b).mask()))
				return false;
			if (!dec.decomposable(a - b))
				return false;
		}
	return true;
}

bool is_ring(const SetClass &cls)
{
	if (!cls.has_empty())
		return false;
	auto masks = mask_set(cls);
	for (const Subset &a : cls)
		for (const Subset &b : cls)
			if (!masks.contains((a | b).mask()) || !masks.contains((a - b).mask())
			    || !masks.contains((a & b).mask()))
				return false;
	return true;
}

bool is_algebra(const SetClass &cls)
{
	return is_ring(cls) && cls.contains(Subset::full(cls.universe_size()));
}

/* ---- fixtures ---- */

ClassFixture example1_fixture(const std::vector<std::string> &vanishing_cells)
{
	static const char *const cells[] = {"ABC", "ABc", "AbC", "Abc",
	                                    "aBC", "aBc", "abC", "abc"};
	std::vector<std::string> labels;
	for (const char *c : cells)
		if (std::find(vanishing_cells.begin(), vanishing_cells.end(), c)
		    == vanishing_cells.end())
			labels.emplace_back(c);
	Universe u(labels);
	const std::size_t n = u.size();

	auto where = [&](auto pred) {
		Mask m = 0;
		for (std::size_t i = 0; i < n; ++i)
			if (pred(u.label(i)))
				m |= Mask(1) << i;
		return Subset(n, m);
	};
	auto cell = [&](const char *name) {
		return where([&](const std::string &l) { return l == name; });
	};

	std::vector<Subset> listed = {
		Subset::empty(n),
		where([](const std::string &l) { return l[0] == 'A'; }),
		where([](const std::string &l) { return l[1] == 'B'; }),
		cell("ABC"), cell("ABc"), cell("AbC"), cell("Abc"), cell("aBC"), cell("aBc"),
	};
	std::vector<Subset> members;
	for (const Subset &s : listed)
		if (std::find(members.begin(), members.end(), s) == members.end())
			members.push_back(s);
	return {std::move(u), SetClass(n, std::move(members))};
}

SetClass interval_semi_ring(std::size_t n)
{
	std::vector<Subset> members{Subset::empty(n)};
	for (std::size_t len = 1; len <= n; ++len)
		for (std::size_t start = 0; start + len <= n; ++start) {
			Mask m = ((Mask(1) << len) - 1) << start;
			members.emplace_back(n, m);
		}
	return SetClass(n, std::move(members));
}

SetClass power_set_class(std::size_t n)
{
	require_table_capacity(n, kDefaultMaxUniverse);
	std::vector<Subset> members;
	for (Mask m = 0; m < (Mask(1) << n); ++m)
		members.emplace_back(n, m);
	return SetClass(n, std::move(members));
}

} // namespace qsr
