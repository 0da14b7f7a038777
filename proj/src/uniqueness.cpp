/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/uniqueness.hpp"

#include "qsr/rng.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace qsr {

namespace {

Mask universe_mask(std::size_t n) { return Subset::full(n).mask(); }

std::vector<Subset> to_sorted_subsets(std::size_t n, const std::vector<bool> &seen)
{
	std::vector<Subset> out;
	for (std::size_t m = 0; m < seen.size(); ++m)
		if (seen[m])
			out.emplace_back(n, static_cast<Mask>(m));
	return out;
}

/* All finite disjoint unions of members, for any class. */
std::vector<Subset> disjoint_union_closure(const SetClass &cls)
{
	const std::size_t n = cls.universe_size();
	std::vector<bool> seen(std::size_t(universe_mask(n)) + 1, false);
	std::deque<Mask> work;
	auto add = [&](Mask m) {
		if (!seen[m]) {
			seen[m] = true;
			work.push_back(m);
		}
	};
	add(0);
	for (const Subset &g : cls)
		add(g.mask());
	while (!work.empty()) {
		Mask x = work.front();
		work.pop_front();
		for (const Subset &g : cls)
			if ((g.mask() & x) == 0)
				add(x | g.mask());
	}
	return to_sorted_subsets(n, seen);
}

std::string gate_reason(const TwoMeasureInstance &two, std::size_t cap,
                        bool require_finite)
{
	const Instance &a = two.first();
	if (a.size() > cap)
		return "universe exceeds the table cap of " + std::to_string(cap);
	if (!is_quasi_semi_ring(a.set_class()).quasi_semi_ring)
		return "class is not a quasi-semi-ring";
	for (const Instance *inst : {&two.first(), &two.second()}) {
		ValidationReport v = validate_premeasure(*inst);
		if (v.verdict != Verdict::pass)
			return "premeasure validation " + std::string(to_string(v.verdict));
	}
	if (auto i = two.first_disagreement())
		return "premeasures disagree on member "
		     + a.universe().format(a.set_class()[*i]);
	if (require_finite)
		for (const Instance *inst : {&two.first(), &two.second()})
			for (const MeasureValue &v : inst->premeasure())
				if (v.is_infinite())
					return "premeasure is not finite-valued";
	return {};
}

/* First member of `sets` where the two tables differ. */
bool compare_on(const std::vector<Subset> &sets, const OuterMeasureTable &t1,
                const OuterMeasureTable &t2, UniquenessReport &rep)
{
	for (const Subset &s : sets)
		if (t1.at(s) != t2.at(s)) {
			rep.verdict = Verdict::fail;
			rep.reason = "extensions differ";
			rep.witness = s;
			rep.first_value = t1.at(s);
			rep.second_value = t2.at(s);
			return false;
		}
	return true;
}

} // namespace

bool GeneratedRing::contains(const Subset &s) const
{
	return std::binary_search(members.begin(), members.end(), s);
}

GeneratedRing generate_ring(const SetClass &cls)
{
	if (!is_quasi_semi_ring(cls).quasi_semi_ring)
		throw StructuralError("generate_ring requires a quasi-semi-ring");
	return {disjoint_union_closure(cls), cls};
}

std::vector<Subset> union_difference_closure(const SetClass &cls)
{
	const std::size_t n = cls.universe_size();
	std::vector<bool> seen(std::size_t(universe_mask(n)) + 1, false);
	std::vector<Mask> found;
	std::size_t next = 0;
	auto add = [&](Mask m) {
		if (!seen[m]) {
			seen[m] = true;
			found.push_back(m);
		}
	};
	for (const Subset &g : cls)
		add(g.mask());
	while (next < found.size()) {
		Mask x = found[next++];
		for (std::size_t j = 0; j < next; ++j) {
			Mask y = found[j];
			add(x | y);
			add(x & ~y);
			add(y & ~x);
		}
	}
	return to_sorted_subsets(n, seen);
}

std::vector<Subset> generated_sigma_algebra(const SetClass &cls)
{
	const std::size_t n = cls.universe_size();
	const Mask full = universe_mask(n);
	std::vector<bool> seen(std::size_t(full) + 1, false);
	std::vector<Mask> found;
	std::size_t next = 0;
	auto add = [&](Mask m) {
		if (!seen[m]) {
			seen[m] = true;
			found.push_back(m);
		}
	};
	add(0);
	for (const Subset &g : cls)
		add(g.mask());
	while (next < found.size()) {
		Mask x = found[next++];
		add(full & ~x);
		for (std::size_t j = 0; j < next; ++j)
			add(x | found[j]);
	}
	return to_sorted_subsets(n, seen);
}

RingReport verify_smallest_ring(const SetClass &cls)
{
	RingReport rep;
	if (!is_quasi_semi_ring(cls).quasi_semi_ring) {
		rep.verdict = Verdict::skipped;
		rep.reason = "class is not a quasi-semi-ring";
		return rep;
	}
	GeneratedRing ring = generate_ring(cls);
	std::vector<Subset> closure = union_difference_closure(cls);
	rep.ring_size = ring.members.size();
	if (ring.members != closure) {
		rep.verdict = Verdict::fail;
		rep.reason = "disjoint-union ring differs from the union/difference closure";
		auto [a, b] = std::mismatch(ring.members.begin(), ring.members.end(),
		                            closure.begin(), closure.end());
		rep.witness = a != ring.members.end() ? *a : *b;
		return rep;
	}
	if (!is_ring(SetClass(cls.universe_size(), ring.members))) {
		rep.verdict = Verdict::fail;
		rep.reason = "generated family is not a ring";
	}
	return rep;
}

/* ---- two-measure checks ---- */

TwoMeasureInstance::TwoMeasureInstance(Instance first, Premeasure second)
: first_(std::move(first))
, second_(first_.with_premeasure(std::move(second)))
{}

std::optional<std::size_t> TwoMeasureInstance::first_disagreement() const
{
	for (std::size_t i = 0; i < first_.premeasure().size(); ++i)
		if (first_.mu(i) != second_.mu(i))
			return i;
	return std::nullopt;
}

UniquenessReport verify_uniqueness_on_ring(const TwoMeasureInstance &two,
                                           std::size_t cap)
{
	UniquenessReport rep;
	if (std::string why = gate_reason(two, cap, true); !why.empty()) {
		rep.verdict = Verdict::skipped;
		rep.reason = std::move(why);
		return rep;
	}
	OuterMeasureTable t1 = outer_measure_table(two.first(), cap);
	OuterMeasureTable t2 = outer_measure_table(two.second(), cap);
	GeneratedRing ring = generate_ring(two.first().set_class());
	rep.ring_size = ring.members.size();
	compare_on(ring.members, t1, t2, rep);
	return rep;
}

SigmaFiniteness is_sigma_finite(const Instance &inst)
{
	SigmaFiniteness out;
	Subset covered = inst.universe().empty();
	const SetClass &cls = inst.set_class();
	for (std::size_t i = 0; i < cls.size(); ++i)
		if (!cls[i].empty() && inst.mu(i).is_finite()) {
			out.cover.push_back(cls[i]);
			covered = covered | cls[i];
		}
	out.sigma_finite = covered == inst.universe().full();
	return out;
}

std::vector<Subset> finite_decomposition(const Instance &inst, const Subset &a)
{
	const SetClass &cls = inst.set_class();
	if (!cls.contains(a))
		throw StructuralError("finite_decomposition: set is not a class member");
	SigmaFiniteness sf = is_sigma_finite(inst);
	if (!sf.sigma_finite)
		throw StructuralError("finite_decomposition requires a sigma-finite"
		                      " instance (is_sigma_finite is false)");
	std::vector<Subset> out;
	if (a.empty())
		return out;
	Disjointification disjoint = disjointify(sf.cover, cls);
	Decomposer dec(cls);
	for (std::size_t h : disjoint.pieces) {
		Subset part = a & cls[h];
		if (part.empty())
			continue;
		auto d = dec.decompose(part);
		if (!d)
			throw StructuralError("member intersection does not decompose;"
			                      " the class is not a quasi-semi-ring");
		for (std::size_t p : d->pieces) {
			if (inst.mu(p).is_infinite())
				throw StructuralError("decomposition piece of infinite measure;"
				                      " the premeasure is not additive");
			out.push_back(cls[p]);
		}
	}
	return out;
}

UniquenessReport verify_sigma_uniqueness(const TwoMeasureInstance &two,
                                         std::size_t cap)
{
	UniquenessReport rep;
	std::string why = gate_reason(two, cap, false);
	if (why.empty())
		for (const Instance *inst : {&two.first(), &two.second()})
			if (!is_sigma_finite(*inst).sigma_finite)
				why = "premeasure is not sigma-finite";
	if (!why.empty()) {
		rep.verdict = Verdict::skipped;
		rep.reason = std::move(why);
		return rep;
	}
	const SetClass &cls = two.first().set_class();
	GeneratedRing ring = generate_ring(cls);
	std::vector<Subset> sigma = generated_sigma_algebra(cls);
	rep.ring_size = ring.members.size();
	rep.sigma_size = sigma.size();
	rep.full_in_ring = ring.contains(two.first().universe().full());
	rep.sigma_equals_ring = sigma == ring.members;
	if (!rep.full_in_ring || !rep.sigma_equals_ring) {
		rep.verdict = Verdict::fail;
		rep.reason = !rep.full_in_ring
		           ? "sigma-finite class whose ring misses the universe"
		           : "generated sigma-algebra differs from the generated ring";
		return rep;
	}
	OuterMeasureTable t1 = outer_measure_table(two.first(), cap);
	OuterMeasureTable t2 = outer_measure_table(two.second(), cap);
	if (compare_on(ring.members, t1, t2, rep))
		compare_on(sigma, t1, t2, rep);
	return rep;
}

/* ---- counterexample search ---- */

MeasureValue weight_of(std::span<const MeasureValue> weights, const Subset &s)
{
	MeasureValue total;
	for (std::size_t i : s.indices())
		total += weights[i];
	return total;
}

bool revalidate(const Instance &inst, const CounterexampleWitness &w)
{
	const std::size_t n = inst.size();
	if (w.first_weights.size() != n || w.second_weights.size() != n
	    || w.set.universe_size() != n)
		return false;
	const SetClass &cls = inst.set_class();
	for (std::size_t i = 0; i < cls.size(); ++i)
		if (weight_of(w.first_weights, cls[i]) != inst.mu(i)
		    || weight_of(w.second_weights, cls[i]) != inst.mu(i))
			return false;
	if (weight_of(w.first_weights, w.set) == weight_of(w.second_weights, w.set))
		return false;
	std::vector<Subset> ring = disjoint_union_closure(cls);
	return !std::binary_search(ring.begin(), ring.end(), w.set);
}

namespace {

MeasureValue random_finite(SplitMix &rng)
{
	return MeasureValue::finite(Rational(long(rng.below(10)), long(rng.below(4) + 1)));
}

struct SearchSpace {
	std::vector<std::size_t> free_atoms;
	std::vector<std::vector<std::size_t>> cells;  // atoms of each cell
	std::vector<MeasureValue> cell_values;

	bool rigid() const
	{
		return free_atoms.empty()
		    && std::all_of(cells.begin(), cells.end(),
		                   [](const auto &c) { return c.size() == 1; });
	}
};

SearchSpace build_space(const Instance &inst, const OuterMeasureTable &table)
{
	const SetClass &cls = inst.set_class();
	const std::size_t n = inst.size();
	SearchSpace sp;
	std::vector<std::pair<std::vector<bool>, std::vector<std::size_t>>> groups;
	for (std::size_t a = 0; a < n; ++a) {
		std::vector<bool> sig(cls.size());
		bool any = false;
		for (std::size_t i = 0; i < cls.size(); ++i) {
			sig[i] = cls[i].contains(a);
			any = any || sig[i];
		}
		if (!any) {
			sp.free_atoms.push_back(a);
			continue;
		}
		auto it = std::find_if(groups.begin(), groups.end(),
		                       [&](const auto &g) { return g.first == sig; });
		if (it == groups.end())
			groups.emplace_back(std::move(sig), std::vector<std::size_t>{a});
		else
			it->second.push_back(a);
	}
	for (auto &[sig, atoms] : groups) {
		sp.cell_values.push_back(table.at(Subset::of(n, atoms)));
		sp.cells.push_back(std::move(atoms));
	}
	return sp;
}

std::vector<MeasureValue> draw_extension(const SearchSpace &sp, std::size_t n,
                                         SplitMix &rng)
{
	std::vector<MeasureValue> w(n);
	for (std::size_t a : sp.free_atoms)
		w[a] = rng.below(8) == 0 ? MeasureValue::infinite() : random_finite(rng);
	for (std::size_t c = 0; c < sp.cells.size(); ++c) {
		const auto &atoms = sp.cells[c];
		const MeasureValue &total = sp.cell_values[c];
		if (atoms.size() == 1) {
			w[atoms[0]] = total;
			continue;
		}
		if (total.is_infinite()) {
			bool any = false;
			for (std::size_t a : atoms) {
				bool inf = rng.below(2) == 0;
				w[a] = inf ? MeasureValue::infinite() : random_finite(rng);
				any = any || inf;
			}
			if (!any)
				w[atoms[rng.below(atoms.size())]] = MeasureValue::infinite();
			continue;
		}
		std::vector<long> shares(atoms.size());
		long sum = 0;
		for (long &s : shares) {
			s = long(rng.below(10));
			sum += s;
		}
		if (sum == 0) {
			shares[rng.below(shares.size())] = 1;
			sum = 1;
		}
		for (std::size_t i = 0; i < atoms.size(); ++i)
			w[atoms[i]] = MeasureValue::finite(total.value() * Rational(shares[i], sum));
	}
	return w;
}

} // namespace

std::optional<CounterexampleWitness>
search_uniqueness_counterexample(const Instance &inst, SearchOptions opts)
{
	const std::size_t n = inst.size();
	OuterMeasureTable table = outer_measure_table(inst, opts.cap);
	SearchSpace sp = build_space(inst, table);
	if (sp.rigid())
		return std::nullopt;
	std::vector<Subset> ring = disjoint_union_closure(inst.set_class());
	std::vector<bool> in_ring(std::size_t(universe_mask(n)) + 1, false);
	for (const Subset &s : ring)
		in_ring[s.mask()] = true;

	/* singletons first, then every set in mask order */
	std::vector<Mask> candidates;
	for (std::size_t a = 0; a < n; ++a)
		candidates.push_back(Mask(1) << a);
	for (Mask m = 1;; ++m) {
		if (std::popcount(m) > 1)
			candidates.push_back(m);
		if (m == universe_mask(n))
			break;
	}

	for (std::uint64_t t = 0; t < opts.budget; ++t) {
		SplitMix rng = SplitMix::for_trial(opts.seed, t);
		CounterexampleWitness w;
		w.first_weights = draw_extension(sp, n, rng);
		w.second_weights = draw_extension(sp, n, rng);
		w.trial = t;
		for (Mask m : candidates) {
			if (in_ring[m])
				continue;
			Subset s(n, m);
			MeasureValue v1 = weight_of(w.first_weights, s);
			MeasureValue v2 = weight_of(w.second_weights, s);
			if (v1 == v2)
				continue;
			w.set = s;
			w.first_value = std::move(v1);
			w.second_value = std::move(v2);
			if (revalidate(inst, w))
				return w;
			break;
		}
	}
	return std::nullopt;
}

} // namespace qsr
