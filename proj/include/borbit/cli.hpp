#pragma once

namespace borbit {

// The command-line front end, callable in-process for tests. Returns the
// process exit code:
//   0 — the command ran and every check/verdict passed;
//   1 — the command ran but a verification failed or a run did not settle;
//   2 — usage or configuration error (nothing was computed);
//   3 — internal error.
int cli_main(int argc, const char* const* argv);

}  // namespace borbit
