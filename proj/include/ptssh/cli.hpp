#pragma once

#include <string>
#include <vector>

namespace ptssh::cli {

/// Runs one CLI invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on domain errors or failed verification,
/// 2 on usage errors.
int run(std::vector<std::string> args);

}  // namespace ptssh::cli
