#pragma once
// Command-line surface: every command is a pure function of its inputs with
// a deterministic text report on stdout. Exit codes: 0 all checks pass,
// 1 a check failed (certificate printed), 2 usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace stratum {

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stratum
