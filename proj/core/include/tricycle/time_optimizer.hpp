#pragma once

// Time allocation from the Lagrangian stationarity condition
//
//   dS_h tau_h^2 / Sigma_h + dS_p tau_p^2 / Sigma_p + dS_c tau_c^2 / Sigma_c
//     + 2 (tau_c + tau_h + tau_p) = 0,
//
// where dS and Sigma do not depend on the durations.

#include <array>

#include "tricycle/protocol.hpp"
#include "tricycle/thermo_geometry.hpp"

namespace tricycle {

/// Per-branch coefficients, indexed by BranchIndex.
using BranchTriple = std::array<double, 3>;

/// Left side of the constraint. Throws DomainError if any Sigma_v == 0.
double constraint_residual(const BranchTriple& dS, const BranchTriple& sigma, const BranchTriple& taus);

/// Real roots of a x^2 + b x + c = 0 by the cancellation-free formula.
struct QuadraticRoots {
    int count = 0;  ///< 0, 1 or 2 real roots
    double lo = 0.0;
    double hi = 0.0;
    double discriminant = 0.0;
};

QuadraticRoots solve_quadratic(double a, double b, double c);

/// How the returned duration was picked among positive roots.
enum class RootChoice { unique, r_max };

std::string_view to_string(RootChoice choice);

struct RootSolution {
    double tau;
    RootChoice choice;
    double discriminant;
};

/// tau_h solving the constraint for given tau_c, tau_p. Needs dS_h / Sigma_h < 0.
/// With two positive roots the one giving the larger cooling rate wins.
/// Throws InfeasibleError when no positive real root exists.
RootSolution solve_tau_h(const BranchTriple& dS, const BranchTriple& sigma, double tau_c, double tau_p);

/// tau_p solving the constraint for given tau_c, tau_h. Needs dS_p / Sigma_p > 0.
RootSolution solve_tau_p(const BranchTriple& dS, const BranchTriple& sigma, double tau_c, double tau_h);

struct AllocationResult {
    double tau_c;
    double tau_h;
    double tau_p;
    double residual;
    RootChoice choice;
    BranchTriple dS;
    BranchTriple sigma;
};

/// tau_h from the COP relation at the target, then tau_p from the constraint.
/// Throws InfeasibleError when eps_target is outside (0, eps_r), when the COP
/// relation gives tau_h <= 0, or when no positive tau_p exists.
AllocationResult solve_fixed_cop(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f,
                                 double tau_c, double eps_target);
AllocationResult solve_fixed_cop(const CycleConfig& c, double tau_c, double eps_target,
                                 const QuadratureSpec& spec = {});

}  // namespace tricycle
