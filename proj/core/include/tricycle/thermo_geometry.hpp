#pragma once

// Slow-driving thermodynamic functionals of the tricycle branches and the
// cycle-level performance metrics built from them.

#include <array>

#include "tricycle/protocol.hpp"
#include "tricycle/quadrature.hpp"
#include "tricycle/superop.hpp"

namespace tricycle {

/// -sum p ln p over the populations, with 0 ln 0 = 0.
double entropy(const StateVec& state);

/// S_eq(s = 1) - S_eq(s = 0) along the branch.
double delta_S_eq(const BranchProtocol& b);

/// Both evaluations of the dissipation coefficient Sigma.
struct SigmaForms {
    double direct;    ///< beta * int Tr[H d/ds(L^D d rho_eq/ds)], outer derivative by central difference
    double by_parts;  ///< -beta * int Tr[dH/ds L^D d rho_eq/ds]
    double error_estimate;
};

SigmaForms sigma_forms(const BranchProtocol& b, const QuadratureSpec& spec = {});

/// Sigma of the branch (<= 0). Throws RouteDisagreementError when the two
/// forms differ by more than 1e-6 relative.
double sigma(const BranchProtocol& b, const QuadratureSpec& spec = {});

/// Thermodynamic length int sqrt(Tr[dH/ds L^D d rho_eq/ds]) ds.
/// Integrand values in [-1e-12, 0) are clamped; lower throws IntegrandError.
double thermo_length(const BranchProtocol& b, const QuadratureSpec& spec = {});

/// Duration-independent branch data; compute once per (protocol, alpha).
struct BranchFunctionals {
    double dS_eq = 0.0;
    double sigma = 0.0;
    double length = 0.0;
    double q0_quadrature = 0.0;  ///< int Tr[H d rho_eq/ds] ds
    double sigma_error = 0.0;    ///< refinement estimates
    double length_error = 0.0;
};

BranchFunctionals branch_functionals(const BranchProtocol& b, const QuadratureSpec& spec = {});

std::array<BranchFunctionals, 3> cycle_functionals(const CycleConfig& c, const QuadratureSpec& spec = {});

struct BranchThermo {
    double dS_eq;
    double sigma;
    double q0;  ///< dS_eq / beta
    double q1;  ///< sigma / (beta tau)
    double q;
    double length;
    double q0_quadrature;
};

/// Throws RouteDisagreementError if the entropy and quadrature routes of Q0
/// differ by more than 1e-8 * max(1, |Q0|).
BranchThermo branch_thermo(const BranchProtocol& b, const BranchFunctionals& f);
BranchThermo branch_thermo(const BranchProtocol& b, const QuadratureSpec& spec = {});

struct HeatPumpMetrics {
    double psi;
    double psi_r;
    double qdot_h;
    double bound_lhs;  ///< qdot_h (psi_r / psi - 1)
    double bound_rhs;  ///< sum beta_v L_v^2 / ((beta_c - beta_h) tau_v tau)
};

struct EngineReductionMetrics {
    double work;        ///< -(Q_c + Q_p)
    double eps;         ///< Q_c / W
    double eps_carnot;  ///< Tc / (Tp - Tc)
    double power;       ///< W / (tau_c + tau_p)
    double eta;
    double eta_c;       ///< (Tp - Tc) / Tp
};

struct CycleMetrics {
    std::array<BranchThermo, 3> branches;
    double eps;
    double eps_r;
    double R;
    double tau;
    double dS_en;            ///< -sum Sigma_v / tau_v
    double dS_en_heat;       ///< -sum beta_v Q_v
    double Lbar2;
    double lh;               ///< R (eps_r / eps - 1)
    double rh;               ///< Lbar2 / tau
    double tradeoff_rhs;     ///< dS_en / ((beta_c - beta_p) tau)
    double tradeoff_residual;///< lh - tradeoff_rhs
    double heat_sum;         ///< Q_c + Q_h + Q_p
    double q0_sum;           ///< sum Q0_v
    double psi;
    double psi_r;
    double eta;
    double eta_c;
    double P;
    double W;
};

/// Reversible COP Tc (Th - Tp) / (Th (Tp - Tc)).
double reversible_cop(double Tc, double Tp, double Th);

/// The trade-off equality lh = dS_en / ((beta_c - beta_p) tau) presumes
/// Q_c + Q_h + Q_p = 0. The first-order TLS heats do not close (the quenches
/// exchange work), so the residual is reported, not enforced.
CycleMetrics cycle_metrics(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f);
CycleMetrics cycle_metrics(const CycleConfig& c, const QuadratureSpec& spec = {});

/// Heat-pump COP uses Sigma_p / tau_p in the Q_p factor.
HeatPumpMetrics heat_pump_metrics(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f);
HeatPumpMetrics heat_pump_metrics(const CycleConfig& c, const QuadratureSpec& spec = {});

/// Two-reservoir reduction over branches c and p with tau = tau_c + tau_p.
EngineReductionMetrics engine_reduction_metrics(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f);
EngineReductionMetrics engine_reduction_metrics(const CycleConfig& c, const QuadratureSpec& spec = {});

}  // namespace tricycle
