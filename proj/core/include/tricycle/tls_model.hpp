#pragma once

#include "tricycle/protocol.hpp"
#include "tricycle/superop.hpp"

namespace tricycle {

struct BathResponse {
    double n;      ///< mean photon number
    double gamma;  ///< damping rate
};

/// 1 / (exp(beta*hbar*omega) - 1); exactly 0 once beta*hbar*omega > 700.
double mean_occupation(double omega, double beta, double hbar);

/// gamma0 * omega^alpha
double damping_rate(double omega, double gamma0, double alpha);

BathResponse bath_response(const BranchProtocol& b, double omega);

/// Generator of the driven TLS master equation at fixed (omega, gamma, n).
Superop liouvillian(double omega, double gamma, double n);

/// Instantaneous Gibbs state of (hbar*omega/2) sigma_z at inverse temperature beta >= 0.
StateVec gibbs_state(double omega, double beta, double hbar);

/// d/ds of the Gibbs state along branch b (analytic chain rule). Traceless.
StateVec d_gibbs_ds(const BranchProtocol& b, double s);

/// Closed-form Drazin inverse of liouvillian(omega, gamma, n).
Superop drazin_tls(double omega, double gamma, double n);

/// (hbar*omega/kB) / ln(rho00/rho11). DomainError unless rho00 > rho11 > 0.
double effective_temperature(const StateVec& state, double omega, double hbar, double kB);

/// Everything the functionals need at one rescaled time on a branch.
struct BranchPoint {
    double s;
    double omega;
    double domega_ds;
    BathResponse bath;
    StateVec gibbs;
    StateVec d_gibbs;
};

BranchPoint branch_point(const BranchProtocol& b, double s);

namespace detail {
BranchPoint branch_point_unchecked(const BranchProtocol& b, double s);
}

}  // namespace tricycle
