#pragma once

namespace gwnk::sim {

/// Exit codes: 0 success, 1 usage or config error, 2 nonconvergence with
/// on_failure = abort, 3 I/O error.
int cli_main(int argc, char** argv);

}  // namespace gwnk::sim
