#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dalg {

// Command-line entry point. Exit codes: 0 success, 2 legitimate not-found
// (or a failed certification), 1 error, 64 flag misuse.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dalg
