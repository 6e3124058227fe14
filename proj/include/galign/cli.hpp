#pragma once

#include <string>
#include <vector>

namespace galign {

/// Command-line entry point. Exit 0 on success, 2 on usage errors, 1 on
/// runtime failures (with a machine-parsable "galign-error: ..." line on
/// stderr).
int cli(int argc, char** argv);
int cli(const std::vector<std::string>& args);

} // namespace galign
