/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstdint>

namespace qsr {

/* splitmix64. Bounded draws use rejection on the raw stream rather than
 * <random> distributions, whose output differs between standard library
 * implementations; every seeded result is therefore portable. */
class SplitMix {
public:
	explicit SplitMix(std::uint64_t seed)
	: state_(seed)
	{}

	/* Independent stream for trial `trial` of a run seeded with `seed`. */
	static SplitMix for_trial(std::uint64_t seed, std::uint64_t trial)
	{
		SplitMix s(seed ^ (0xD1B54A32D192ED03ull * (trial + 1)));
		s.next();
		return s;
	}

	std::uint64_t next()
	{
		std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
		z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
		z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
		return z ^ (z >> 31);
	}

	/* Uniform on [0, bound); bound > 0. */
	std::uint64_t below(std::uint64_t bound)
	{
		const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
		for (;;) {
			std::uint64_t x = next();
			if (x < limit)
				return x % bound;
		}
	}

	/* Uniform on [lo, hi]. */
	long between(long lo, long hi)
	{
		return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
	}

	bool one_in(std::uint64_t k) { return below(k) == 0; }

private:
	std::uint64_t state_;
};

} // namespace qsr
