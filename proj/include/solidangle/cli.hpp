#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solidangle::cli {

// Runs one CLI invocation. Exit status: 0 on success, 1 when a
// verification reports violations, 2 on parse or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solidangle::cli
