#pragma once

// Direct fixed-step RK4 integration of the TLS master equation over the
// cycle. Shares no code path with the perturbative functionals beyond the
// generator, schedule and Gibbs state.

#include <array>
#include <span>
#include <vector>

#include "tricycle/protocol.hpp"
#include "tricycle/quadrature.hpp"
#include "tricycle/superop.hpp"

namespace tricycle {

struct TrajectorySample {
    double s;
    StateVec rho;
};

struct Trajectory {
    ReservoirLabel branch = ReservoirLabel::c;
    double tau = 0.0;
    std::vector<TrajectorySample> samples;  ///< uniform in s, first at 0, last at 1

    const StateVec& final_state() const { return samples.back().rho; }
};

/// 20 tau / dt_char with dt_char = 1 / max_s gamma(2n+1), at least min_steps, rounded up to even.
int default_steps(const BranchProtocol& b, int min_steps = 4000);

/// RK4 on d rho/dt = L(t) rho with dt = tau / steps. Needs steps >= 1000 and
/// a physical initial state. Throws IntegratorError if a population leaves
/// [-1e-7, 1 + 1e-7].
Trajectory evolve_branch(const BranchProtocol& b, const StateVec& initial, int steps);

/// int_0^tau Tr[H(t) L(t) rho(t)] dt by Simpson on the trajectory grid.
double trajectory_heat(const BranchProtocol& b, const Trajectory& tr);

/// int_0^tau Tr[rho(t) dH/dt] dt by Simpson on the trajectory grid.
double trajectory_drive_work(const BranchProtocol& b, const Trajectory& tr);

struct CycleRun {
    std::array<Trajectory, 3> trajectories;
    std::array<double, 3> heats{};            ///< Q_v from the trajectory
    std::array<double, 3> drive_work{};       ///< work done by the drive during each branch
    std::array<double, 3> quench_energies{};  ///< after c, after h, after p
    StateVec initial;
    StateVec final_state;  ///< state on return to A
    double closure_norm = 0.0;   ///< ||final - initial||_1
    double energy_change = 0.0;  ///< U(final) - U(initial), both with H_c(0)
    double audit_residual = 0.0; ///< sum heats + drive work + quench energies - energy_change
    double throughput = 0.0;     ///< sum of |terms| entering the audit
};

/// Starts at the Gibbs state of branch c at s = 0 and chains c, h, p with the
/// state carried unchanged through each quench. steps_per_branch <= 0 picks
/// default_steps per branch.
CycleRun run_cycle(const CycleConfig& c, int steps_per_branch = 0);

struct OrderCheckRow {
    double tau;
    int steps;
    double state_error;  ///< max_s ||rho_numeric - rho_first_order||_1 on branch c
    double heat_error;   ///< |Q_c numeric - (Q0_c + Q1_c)|
};

struct OrderCheckReport {
    std::vector<OrderCheckRow> rows;
    double state_slope = 0.0;  ///< least-squares log-log slope
    double heat_slope = 0.0;
    bool exact = false;        ///< all errors at rounding level; slopes undefined
    bool pass = false;
};

inline constexpr double kSlopeLow = -2.5;
inline constexpr double kSlopeHigh = -1.5;

/// Runs branch c of the cycle alone at each tau (others untouched), starting
/// from its Gibbs state. Needs >= 3 entries. Throws IntegratorError if an
/// error sequence grows with tau.
OrderCheckReport perturbation_order_check(const CycleConfig& c, std::span<const double> tau_list,
                                          const QuadratureSpec& spec = {}, int min_steps = 4000);

}  // namespace tricycle
