/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <string>
#include <vector>

#include "qsr/report.hpp"

namespace qsr {

struct CommandResult {
	Report report;
	int exit_code = 0;
	/* What the tool writes to standard output. */
	std::string output;
};

/* Runs one invocation; `args` excludes the program name, e.g.
 * {"verify-extension", "-i", "example1.qsr"}. Never throws: usage, parse
 * and capacity problems come back as exit code 2 with diagnostics. */
CommandResult run_command(const std::vector<std::string> &args);

} // namespace qsr
