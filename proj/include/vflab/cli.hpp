#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vflab::cli {

/// Dispatches one command.  Exit code 0 on success, 1 on domain errors,
/// 2 on usage errors.  Output goes to `out` (envelope or text), usage
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vflab::cli
