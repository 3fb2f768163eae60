#pragma once

namespace fqgate {

// Full command-line entry point (parse, run, report errors on stderr).
// Exit codes: 0 success, 1 runtime/data error, 2 usage/config error.
int run_cli(int argc, const char* const* argv);

}  // namespace fqgate
