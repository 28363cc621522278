#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucr {

/// Runs one CLI command; reports are printed to `out` as JSON, errors to
/// `err`.  Exit codes: 0 success (classify: equivalent), 1 failed checks
/// (classify: disproved), 2 classify undecided, 3 usage/parse/validation
/// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ucr
