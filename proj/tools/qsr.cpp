/* SPDX-License-Identifier: Apache-2.0 */

#include <iostream>
#include <string>
#include <vector>

#include "qsr/commands.hpp"

int main(int argc, char **argv)
{
	std::vector<std::string> args(argv + 1, argv + argc);
	qsr::CommandResult res = qsr::run_command(args);
	std::cout << res.output;
	return res.exit_code;
}
