// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_CLI_HPP
#define ETASCAN_CLI_HPP

#include <string>
#include <vector>

namespace etascan {

/// Runs the etascan command line: simulate, construct, predict, evaluate.
/// args excludes the program name. Returns the process exit code
/// (0 iff no command-level error).
int run_cli(const std::vector<std::string>& args);

}  // namespace etascan

#endif  // ETASCAN_CLI_HPP
