/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/generator.hpp"

#include <algorithm>
#include <deque>

#include "qsr/rng.hpp"
#include "qsr/structure.hpp"

namespace qsr {

std::optional<InstanceStyle> parse_style(std::string_view s)
{
	for (InstanceStyle st : {InstanceStyle::semiring, InstanceStyle::venn,
	                         InstanceStyle::rejection})
		if (to_string(st) == s)
			return st;
	return std::nullopt;
}

std::string_view to_string(InstanceStyle s)
{
	switch (s) {
	case InstanceStyle::semiring: return "semiring";
	case InstanceStyle::venn: return "venn";
	case InstanceStyle::rejection: return "rejection";
	}
	return "?";
}

Premeasure premeasure_from_weights(const SetClass &cls,
                                   const std::vector<Rational> &weights)
{
	Premeasure mu;
	for (const Subset &s : cls) {
		Rational total = 0;
		for (std::size_t a : s.indices())
			total += weights.at(a);
		mu.push_back(MeasureValue::finite(total));
	}
	return mu;
}

namespace {

template <class T>
void shuffle(std::vector<T> &v, SplitMix &rng)
{
	for (std::size_t i = v.size(); i > 1; --i)
		std::swap(v[i - 1], v[rng.below(i)]);
}

/* Splits `atoms` (in order) into m consecutive nonempty runs. */
std::vector<std::vector<std::size_t>> random_runs(const std::vector<std::size_t> &atoms,
                                                  std::size_t m, SplitMix &rng)
{
	std::vector<std::size_t> cuts;
	for (std::size_t i = 1; i < atoms.size(); ++i)
		cuts.push_back(i);
	shuffle(cuts, rng);
	cuts.resize(m - 1);
	std::sort(cuts.begin(), cuts.end());
	cuts.push_back(atoms.size());
	std::vector<std::vector<std::size_t>> runs;
	std::size_t from = 0;
	for (std::size_t to : cuts) {
		runs.emplace_back(atoms.begin() + static_cast<long>(from),
		                  atoms.begin() + static_cast<long>(to));
		from = to;
	}
	return runs;
}

Mask mask_of(const std::vector<std::size_t> &atoms)
{
	Mask m = 0;
	for (std::size_t a : atoms)
		m |= Mask(1) << a;
	return m;
}

std::vector<Mask> cell_masks(const std::vector<std::vector<std::size_t>> &runs)
{
	std::vector<Mask> out;
	for (const auto &r : runs)
		out.push_back(mask_of(r));
	return out;
}

Mask random_union(const std::vector<Mask> &cells, SplitMix &rng)
{
	std::uint64_t pick = 1 + rng.below((std::uint64_t(1) << cells.size()) - 1);
	Mask m = 0;
	for (std::size_t i = 0; i < cells.size(); ++i)
		if ((pick >> i) & 1u)
			m |= cells[i];
	return m;
}

std::vector<Mask> interval_class(const std::vector<Mask> &cells)
{
	std::vector<Mask> out{0};
	for (std::size_t len = 1; len <= cells.size(); ++len)
		for (std::size_t s = 0; s + len <= cells.size(); ++s) {
			Mask m = 0;
			for (std::size_t i = s; i < s + len; ++i)
				m |= cells[i];
			out.push_back(m);
		}
	return out;
}

std::vector<Mask> partition_tree_class(const std::vector<std::size_t> &atoms,
                                       std::size_t max_class, SplitMix &rng)
{
	std::vector<Mask> out{0, mask_of(atoms)};
	std::deque<std::vector<std::size_t>> open{atoms};
	while (!open.empty()) {
		std::vector<std::size_t> node = std::move(open.front());
		open.pop_front();
		if (node.size() < 2 || rng.one_in(3))
			continue;
		std::size_t k = static_cast<std::size_t>(
			rng.between(2, static_cast<long>(std::min<std::size_t>(3, node.size()))));
		if (out.size() + k > max_class)
			continue;
		for (auto &child : random_runs(node, k, rng)) {
			out.push_back(mask_of(child));
			open.push_back(std::move(child));
		}
	}
	return out;
}

std::vector<Mask> venn_class(const std::vector<Mask> &cells, SplitMix &rng)
{
	std::vector<Mask> out{0};
	std::size_t k = static_cast<std::size_t>(rng.between(1, 3));
	Mask covered = 0;
	for (std::size_t i = 0; i < k; ++i) {
		Mask big = random_union(cells, rng);
		out.push_back(big);
		covered |= big;
	}
	for (Mask c : cells)
		if ((c & ~covered) == 0)
			out.push_back(c);
	return out;
}

std::vector<Mask> dedupe(const std::vector<Mask> &in)
{
	std::vector<Mask> out;
	for (Mask m : in)
		if (std::find(out.begin(), out.end(), m) == out.end())
			out.push_back(m);
	return out;
}

/* Adds every cell no member reaches; a cell disjoint from all members
 * keeps the class a quasi-semi-ring. */
void cover_cells(std::vector<Mask> &masks, const std::vector<Mask> &cells)
{
	Mask reached = 0;
	for (Mask m : masks)
		reached |= m;
	for (Mask c : cells)
		if ((c & reached) == 0)
			masks.push_back(c);
}

SetClass to_class(std::size_t n, const std::vector<Mask> &masks)
{
	std::vector<Subset> members;
	for (Mask m : dedupe(masks))
		members.emplace_back(n, m);
	return SetClass(n, std::move(members));
}

} // namespace

GeneratedInstance generate_random_instance(std::uint64_t seed, std::size_t n,
                                           InstanceStyle style, GeneratorOptions opts)
{
	if (n == 0 || n > kDefaultMaxUniverse)
		throw CapacityError(n, kDefaultMaxUniverse);
	SplitMix rng = SplitMix::for_trial(seed, n * 4 + static_cast<std::size_t>(style));

	std::vector<std::string> labels;
	for (std::size_t i = 0; i < n; ++i)
		labels.emplace_back(1, static_cast<char>('a' + i));
	std::vector<Rational> weights;
	for (std::size_t i = 0; i < n; ++i)
		weights.emplace_back(rng.between(1, 9), rng.between(1, 6));
	for (Rational &w : weights)
		w.canonicalize();

	std::vector<std::size_t> order(n);
	for (std::size_t i = 0; i < n; ++i)
		order[i] = i;
	shuffle(order, rng);
	std::size_t covered = n;
	if (!opts.cover_universe && n > 1 && rng.one_in(4))
		covered = static_cast<std::size_t>(rng.between(1, static_cast<long>(n) - 1));
	std::vector<std::size_t> atoms(order.begin(),
	                               order.begin() + static_cast<long>(covered));

	auto cell_count = [&](std::size_t most) {
		return static_cast<std::size_t>(
			rng.between(1, static_cast<long>(std::min(most, atoms.size()))));
	};

	GeneratedInstance out;
	std::vector<Mask> masks;
	switch (style) {
	case InstanceStyle::semiring:
		if (rng.one_in(2))
			masks = interval_class(cell_masks(random_runs(atoms, cell_count(5), rng)));
		else
			masks = partition_tree_class(atoms, opts.max_class, rng);
		break;
	case InstanceStyle::venn: {
		std::vector<Mask> cells = cell_masks(random_runs(atoms, cell_count(6), rng));
		masks = venn_class(cells, rng);
		if (opts.cover_universe)
			cover_cells(masks, cells);
		break;
	}
	case InstanceStyle::rejection: {
		bool accepted = false;
		for (std::size_t attempt = 0; attempt < opts.rejection_attempts; ++attempt) {
			std::vector<Mask> cells = cell_masks(random_runs(atoms, cell_count(4), rng));
			std::size_t k = static_cast<std::size_t>(rng.between(1, 6));
			masks = {0};
			for (std::size_t i = 0; i < k; ++i)
				masks.push_back(random_union(cells, rng));
			if (opts.cover_universe)
				cover_cells(masks, cells);
			if (is_quasi_semi_ring(to_class(n, masks)).quasi_semi_ring) {
				accepted = true;
				break;
			}
		}
		if (!accepted) {
			out.verdict = Verdict::inconclusive;
			return out;
		}
		break;
	}
	}

	SetClass cls = to_class(n, masks);
	Premeasure mu = premeasure_from_weights(cls, weights);
	out.instance.emplace(Universe(labels), std::move(cls), std::move(mu));
	out.atom_weights = std::move(weights);
	return out;
}

} // namespace qsr
