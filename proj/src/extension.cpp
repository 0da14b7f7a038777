/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/extension.hpp"

#include <bit>

namespace qsr {

namespace {

std::vector<std::vector<std::size_t>> members_by_atom(const SetClass &cls)
{
	std::vector<std::vector<std::size_t>> by_atom(cls.universe_size());
	for (std::size_t i = 0; i < cls.size(); ++i)
		for (std::size_t a : cls[i].indices())
			by_atom[a].push_back(i);
	return by_atom;
}

Mask universe_mask(std::size_t n) { return Subset::full(n).mask(); }

} // namespace

OuterMeasureTable OuterMeasureTable::from_values(std::size_t universe_size,
                                                 std::vector<MeasureValue> values)
{
	if (values.size() != (std::size_t(1) << universe_size))
		throw StructuralError("outer measure table needs 2^n entries");
	OuterMeasureTable t;
	t.n_ = universe_size;
	t.values_ = std::move(values);
	return t;
}

const MeasureValue &OuterMeasureTable::at(const Subset &s) const
{
	if (s.universe_size() != n_)
		throw StructuralError("subset over a different universe than the table");
	return values_[s.mask()];
}

OuterMeasureTable outer_measure_table(const Instance &inst, std::size_t cap)
{
	const std::size_t n = inst.size();
	require_table_capacity(n, cap);
	const SetClass &cls = inst.set_class();
	auto by_atom = members_by_atom(cls);

	OuterMeasureTable t;
	t.n_ = n;
	t.values_.assign(std::size_t(1) << n, MeasureValue::infinite());
	t.values_[0] = MeasureValue(0);
	/* E \ M < E as integers whenever M meets E, so increasing mask order
	 * visits every dependency first. */
	for (Mask e = 1; e <= universe_mask(n); ++e) {
		MeasureValue &best = t.values_[e];
		for (std::size_t m : by_atom[std::countr_zero(e)]) {
			const MeasureValue &rest = t.values_[e & ~cls[m].mask()];
			if (rest.is_infinite() || inst.mu(m).is_infinite())
				continue;
			MeasureValue cand = inst.mu(m) + rest;
			if (cand < best)
				best = std::move(cand);
		}
		if (e == universe_mask(n))
			break;
	}
	return t;
}

/* ---- disjoint covers ---- */

namespace {

class DisjointCoverSearch {
public:
	DisjointCoverSearch(const Instance &inst, Mask target,
	                    const OuterMeasureTable *bound)
	: inst_(inst)
	, by_atom_(members_by_atom(inst.set_class()))
	, target_(target)
	, bound_(bound)
	{}

	MeasureValue run()
	{
		dfs(0, MeasureValue(0));
		return best_;
	}

private:
	void dfs(Mask used, const MeasureValue &partial)
	{
		Mask rem = target_ & ~used;
		if (rem == 0) {
			if (partial < best_)
				best_ = partial;
			if (bound_ && best_ == (*bound_)[target_])
				done_ = true;
			return;
		}
		MeasureValue lower = partial;
		if (bound_)
			lower += (*bound_)[rem];
		if (!(lower < best_))
			return;
		const SetClass &cls = inst_.set_class();
		for (std::size_t m : by_atom_[std::countr_zero(rem)]) {
			Mask mm = cls[m].mask();
			if ((mm & used) != 0)
				continue;
			dfs(used | mm, partial + inst_.mu(m));
			if (done_)
				return;
		}
	}

	const Instance &inst_;
	std::vector<std::vector<std::size_t>> by_atom_;
	Mask target_;
	const OuterMeasureTable *bound_;
	MeasureValue best_ = MeasureValue::infinite();
	bool done_ = false;
};

} // namespace

MeasureValue disjoint_outer_measure(const Instance &inst, const Subset &e,
                                    const OuterMeasureTable *bound)
{
	if (e.universe_size() != inst.size())
		throw StructuralError("subset over a different universe than the instance");
	if (bound && bound->universe_size() != inst.size())
		throw StructuralError("bound table over a different universe");
	return DisjointCoverSearch(inst, e.mask(), bound).run();
}

Disjointification disjointify(std::span<const Subset> cover, const SetClass &cls)
{
	Decomposer dec(cls);
	Disjointification out;
	std::vector<std::size_t> cover_idx;
	for (const Subset &a : cover) {
		auto i = cls.index_of(a);
		if (!i)
			throw StructuralError("cover element is not a class member");
		cover_idx.push_back(*i);
	}
	for (std::size_t k = 0; k < cover.size(); ++k) {
		std::vector<std::size_t> pieces;
		if (!cover[k].empty())
			pieces.push_back(cover_idx[k]);
		for (std::size_t j = k; j-- > 0;) {
			std::vector<std::size_t> next;
			for (std::size_t p : pieces) {
				Subset rest = cls[p] - cover[j];
				if (rest == cls[p]) {
					next.push_back(p);
					continue;
				}
				auto d = dec.decompose(rest);
				if (!d)
					throw StructuralError("difference of two members does not decompose;"
					                      " the class is not a quasi-semi-ring");
				next.insert(next.end(), d->pieces.begin(), d->pieces.end());
			}
			pieces = std::move(next);
		}
		out.pieces.insert(out.pieces.end(), pieces.begin(), pieces.end());
	}
	return out;
}

Disjointification disjointify(std::span<const Subset> cover, const Instance &inst)
{
	Disjointification out = disjointify(cover, inst.set_class());
	MeasureValue cs, ps;
	for (const Subset &a : cover)
		cs += *inst.mu_of(a);
	for (std::size_t p : out.pieces)
		ps += inst.mu(p);
	out.cover_sum = cs;
	out.piece_sum = ps;
	return out;
}

/* ---- measurability ---- */

std::optional<SplitWitness> measurability_witness(const OuterMeasureTable &table,
                                                  const Subset &a)
{
	const std::size_t n = table.universe_size();
	if (a.universe_size() != n)
		throw StructuralError("subset over a different universe than the table");
	const Mask am = a.mask();
	for (Mask e = 0;; ++e) {
		MeasureValue split = table[e & am] + table[e & ~am];
		if (split != table[e])
			return SplitWitness{Subset(n, e), table[e], std::move(split)};
		if (e == universe_mask(n))
			break;
	}
	return std::nullopt;
}

bool is_measurable(const OuterMeasureTable &table, const Subset &a)
{
	return !measurability_witness(table, a).has_value();
}

MeasurabilityReport measurable_sets(const OuterMeasureTable &table)
{
	const std::size_t n = table.universe_size();
	const Mask full = universe_mask(n);
	MeasurabilityReport rep;
	std::vector<bool> in_m(std::size_t(full) + 1, false);
	for (Mask a = 0;; ++a) {
		Subset s(n, a);
		if (auto w = measurability_witness(table, s))
			rep.failures.emplace_back(s, std::move(*w));
		else {
			rep.measurable_sets.push_back(s);
			in_m[a] = true;
		}
		if (a == full)
			break;
	}
	rep.contains_empty_and_full = in_m[0] && in_m[full];
	rep.closed_under_complement = true;
	rep.closed_under_union = true;
	for (const Subset &a : rep.measurable_sets) {
		if (!in_m[full & ~a.mask()])
			rep.closed_under_complement = false;
		for (const Subset &b : rep.measurable_sets)
			if (!in_m[a.mask() | b.mask()]) {
				rep.closed_under_union = false;
				break;
			}
	}
	return rep;
}

/* ---- extension checks ---- */

namespace {

/* Empty string when the instance satisfies the shared preconditions. */
std::string precondition_failure(const Instance &inst, std::size_t cap)
{
	if (inst.size() > cap)
		return "universe of " + std::to_string(inst.size())
		     + " atoms exceeds the table cap of " + std::to_string(cap);
	StructureReport s = is_quasi_semi_ring(inst.set_class());
	if (!s.quasi_semi_ring) {
		std::string r = "class is not a quasi-semi-ring";
		if (s.failure && s.failure->target)
			r += ": " + inst.universe().format(*s.failure->target)
			   + " has no disjoint decomposition";
		else if (s.failure)
			r += ": " + s.failure->reason;
		return r;
	}
	ValidationReport v = validate_premeasure(inst);
	if (v.verdict != Verdict::pass)
		return "premeasure validation " + std::string(to_string(v.verdict));
	return {};
}

} // namespace

ExtensionReport verify_extension_theorem(const Instance &inst, std::size_t cap)
{
	ExtensionReport rep;
	if (std::string why = precondition_failure(inst, cap); !why.empty()) {
		rep.verdict = Verdict::skipped;
		rep.reason = std::move(why);
		return rep;
	}
	OuterMeasureTable table = outer_measure_table(inst, cap);
	const SetClass &cls = inst.set_class();
	for (std::size_t i = 0; i < cls.size(); ++i) {
		if (auto w = measurability_witness(table, cls[i])) {
			rep.verdict = Verdict::fail;
			rep.reason = "member is not measurable";
			rep.member = cls[i];
			rep.split = std::move(*w);
			return rep;
		}
		if (table.at(cls[i]) != inst.mu(i)) {
			rep.verdict = Verdict::fail;
			rep.reason = "outer measure differs from the premeasure";
			rep.member = cls[i];
			rep.outer = table.at(cls[i]);
			rep.premeasure = inst.mu(i);
			return rep;
		}
	}
	return rep;
}

AlternativeDefinitionReport verify_alternative_definition(const Instance &inst,
                                                          std::size_t cap)
{
	AlternativeDefinitionReport rep;
	if (std::string why = precondition_failure(inst, cap); !why.empty()) {
		rep.verdict = Verdict::skipped;
		rep.reason = std::move(why);
		return rep;
	}
	const std::size_t n = inst.size();
	OuterMeasureTable table = outer_measure_table(inst, cap);
	for (Mask e = 0;; ++e) {
		Subset s(n, e);
		MeasureValue d = disjoint_outer_measure(inst, s, &table);
		if (d != table[e]) {
			rep.verdict = Verdict::fail;
			rep.reason = "disjoint-cover infimum differs from the outer measure";
			rep.witness = s;
			rep.disjoint_value = std::move(d);
			rep.table_value = table[e];
			return rep;
		}
		if (e == universe_mask(n))
			break;
	}
	return rep;
}

OuterAxiomReport verify_outer_measure_axioms(const OuterMeasureTable &table)
{
	const std::size_t n = table.universe_size();
	const Mask full = universe_mask(n);
	OuterAxiomReport rep;
	auto fail = [&](OuterAxiom a, Mask x, Mask y) {
		rep.verdict = Verdict::fail;
		rep.violated = a;
		rep.first = Subset(n, x);
		rep.second = Subset(n, y);
		return rep;
	};
	if (table[0] != MeasureValue(0))
		return fail(OuterAxiom::empty_is_zero, 0, 0);
	for (Mask e = 0;; ++e) {
		for (Mask rest = full & ~e; rest; rest &= rest - 1) {
			Mask bigger = e | (rest & -rest);
			if (table[bigger] < table[e])
				return fail(OuterAxiom::monotone, e, bigger);
		}
		if (e == full)
			break;
	}
	/* disjoint pairs (e, f) with f ranging over submasks of the complement */
	for (Mask e = 1;; ++e) {
		Mask comp = full & ~e;
		for (Mask f = comp; f; f = (f - 1) & comp)
			if (table[e] + table[f] < table[e | f])
				return fail(OuterAxiom::subadditive, e, f);
		if (e >= full)
			break;
	}
	return rep;
}

std::string_view to_string(OuterAxiom a)
{
	switch (a) {
	case OuterAxiom::none: return "none";
	case OuterAxiom::empty_is_zero: return "empty_is_zero";
	case OuterAxiom::monotone: return "monotone";
	case OuterAxiom::subadditive: return "subadditive";
	}
	return "?";
}

} // namespace qsr
