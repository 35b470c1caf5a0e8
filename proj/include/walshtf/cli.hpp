#pragma once

// Command line front end.  Subcommands are filled in as the library grows;
// run() returns the process exit code: 0 success, 1 verification failure,
// 2 usage error.

namespace walshtf::cli {

int run(int argc, char** argv);

}  // namespace walshtf::cli

#include "walshtf/cli_impl.hpp"
