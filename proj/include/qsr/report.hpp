/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsr/instance_io.hpp"
#include "qsr/set_core.hpp"

namespace qsr {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Report {
	std::string command;
	Verdict verdict = Verdict::pass;
	/* Ordered key/value pairs; values are exact (fractions, subset keys). */
	std::vector<std::pair<std::string, std::string>> witnesses;
	std::vector<Diagnostic> diagnostics;
	double elapsed_ms = 0;
	std::optional<std::uint64_t> seed;
	std::string version{kToolVersion};

	void add(std::string key, std::string value)
	{
		witnesses.emplace_back(std::move(key), std::move(value));
	}
	/* Value of the first witness named `key`. */
	std::optional<std::string> find(std::string_view key) const;
};

/* 0 for PASS and FOUND, 1 for FAIL and NONE, 3 for SKIPPED and
 * INCONCLUSIVE. Usage and parse errors (2) are decided by the caller. */
int exit_code(Verdict v);

/* Human-readable: a verdict line followed by one "key: value" line per
 * witness and one line per diagnostic. */
std::string render_text(const Report &r);

/* One JSON object per line: a "report" record, then "witness" and
 * "diagnostic" records in order, then a "timing" record. */
std::string render_records(const Report &r);

/* Inverse of render_records. Throws std::invalid_argument on malformed
 * input. */
Report parse_records(std::string_view text);

} // namespace qsr
