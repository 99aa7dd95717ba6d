#pragma once

namespace fbcs {

// Entry point of the command-line tool. Exit codes: 0 success, 1 usage
// error, 2 data error, 3 numeric failure (divergent loop in `analyze`).
int run_cli(int argc, const char* const* argv);

} // namespace fbcs
