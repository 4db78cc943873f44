#pragma once

#include <ostream>

#include "run_config.hpp"

namespace tricycle::harness {

inline constexpr double kBoundTolerance = 1e-10;

// Each command writes its table to `out`, diagnostics to `log`, and returns
// an ExitCode. Usage problems surface as UsageError; unexpected numerical
// failures propagate as tricycle::Error.

/// Grid over (alpha, tau_c, tau_p) with tau_h from the allocation constraint.
/// Returns kViolation if any feasible row has lh - rh < -1e-10.
int cmd_verify_bound(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Same grid and rows as verify-bound, as a dataset; violations do not change the exit code.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// First-order convergence ladder for every alpha. kViolation if a slope
/// falls outside [-2.5, -1.5]; kNumerical on integrator failure.
int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Fixed-COP allocation over (alpha, tau_c). Needs cop_target.
int cmd_optimize(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace tricycle::harness
