#pragma once

namespace l0bb {

/// Command-line entry point: solve / path / lmax subcommands. Exit codes:
/// 0 on success (status optimal), 2 when a node or time limit terminated the
/// solve (result still emitted), 1 on parse or validation failures.
int run_cli(int argc, const char* const* argv);

}  // namespace l0bb
