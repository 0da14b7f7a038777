/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/set_core.hpp"

namespace qsr {

/* One problem found while reading an instance file. `code` is one of
 *   MALFORMED_FILE, MISSING_FIELD, INVALID_LABEL, DUPLICATE_LABEL,
 *   UNIVERSE_TOO_LARGE, UNKNOWN_LABEL, DUPLICATE_SUBSET, MISSING_EMPTY_SET,
 *   MISSING_MEASURE, EXTRA_MEASURE, MALFORMED_FRACTION,
 *   NONZERO_EMPTY_MEASURE, IO_ERROR
 * and `field` locates it ("class[3]", "measure[\"a,b\"]", "line 4, column 2"). */
struct Diagnostic {
	std::string code;
	std::string field;
	std::string message;
};

class ParseError : public std::runtime_error {
public:
	explicit ParseError(std::vector<Diagnostic> diagnostics);
	const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

private:
	std::vector<Diagnostic> diagnostics_;
};

struct ParseOptions {
	std::size_t max_universe = kDefaultMaxUniverse;
};

/* All diagnostics are collected; `instance` is set only when there are
 * none. */
struct ParseResult {
	std::optional<Instance> instance;
	std::vector<Diagnostic> diagnostics;
};

ParseResult parse_instance_text(std::string_view text, ParseOptions opts = {});
ParseResult parse_instance_file(const std::filesystem::path &path,
                                ParseOptions opts = {});

/* Throws ParseError carrying every diagnostic. */
Instance parse_instance(const std::filesystem::path &path, ParseOptions opts = {});

/* Labels sorted lexicographically and joined by ","; "" for the empty set. */
std::string subset_key(const Universe &u, const Subset &s);

/* Inverse of subset_key; label order in the key is not significant.
 * nullopt on unknown or repeated labels. */
std::optional<Subset> parse_subset_key(const Universe &u, std::string_view key);

/* Canonical file text: universe in order, class in order with each member's
 * labels sorted, measure keyed by subset_key in key order. */
std::string serialize_instance(const Instance &inst);

} // namespace qsr
