#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tvnet::cli {

/// Runs one tvnet command line (without the program name). Returns the
/// process exit status: 0 on success, 1 on validation or runtime errors (with
/// a JSON report on `err`), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvnet::cli
