#pragma once

#include <ostream>

namespace oar {

/// Entry point of the `oar` command line tool.
///
/// Subcommands: fit, query, recourse, sweep. Returns 0 on success, 1 on a
/// usage error (usage text goes to `err`), 2 on a data or solver error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oar
