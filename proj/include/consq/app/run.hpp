#pragma once

#include "consq/app/config.hpp"

#include <iosfwd>

namespace consq::app {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kViolations = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInterrupted = 3;
}  // namespace exit_code

/// Executes one command. Records and reports go to the output file, or to
/// `out` when there is none; diagnostics and run summaries go to `err`.
///
/// Output location: --output, else $CONSQ_OUTPUT_DIR/<command>.<ext> for
/// every command except `check`, else `out`. Streamed commands checkpoint
/// to <output>.ckpt after each outer unit (one M for scan, verify-
/// nonexistence and cross-check; one delta for verify-theorem; a block of
/// f values for family). Resuming truncates the output back to the last
/// checkpoint and continues after its cursor.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace consq::app
