/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qsr/set_core.hpp"

namespace qsr {

enum class InstanceStyle {
	semiring,   // interval runs over cells, or a nested partition tree
	venn,       // a few unions of cells plus every cell inside their union
	rejection,  // random unions of cells, kept when a quasi-semi-ring
};

std::optional<InstanceStyle> parse_style(std::string_view s);
std::string_view to_string(InstanceStyle s);

struct GeneratorOptions {
	std::size_t max_class = 20;
	std::size_t rejection_attempts = 10'000;
	/* Every atom lies in some member; otherwise some atoms may be left
	 * uncovered. */
	bool cover_universe = false;
};

struct GeneratedInstance {
	/* PASS, or INCONCLUSIVE when rejection sampling ran out of attempts. */
	Verdict verdict = Verdict::pass;
	std::optional<Instance> instance;
	/* Positive atom weights the premeasure sums; mu(A) = sum over A. */
	std::vector<Rational> atom_weights;
};

/* Deterministic in (seed, n, style, options). Atoms are labelled "a", "b",
 * ...; the premeasure is additive by construction. */
GeneratedInstance generate_random_instance(std::uint64_t seed, std::size_t n,
                                           InstanceStyle style,
                                           GeneratorOptions opts = {});

/* Premeasure that sums the given atom weights over each member. */
Premeasure premeasure_from_weights(const SetClass &cls,
                                   const std::vector<Rational> &weights);

} // namespace qsr
