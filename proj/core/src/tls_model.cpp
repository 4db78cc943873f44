#include "tricycle/tls_model.hpp"

#include <cmath>
#include <sstream>

#include "tricycle/errors.hpp"

namespace tricycle {

namespace {
constexpr double kOverflowExponent = 700.0;
}

double mean_occupation(double omega, double beta, double hbar) {
    if (!(omega > 0.0) || !(beta > 0.0) || !(hbar > 0.0))
        throw DomainError("mean_occupation: need omega, beta, hbar > 0");
    const double x = beta * hbar * omega;
    if (x > kOverflowExponent) return 0.0;
    return 1.0 / std::expm1(x);
}

double damping_rate(double omega, double gamma0, double alpha) {
    return alpha == 0.0 ? gamma0 : gamma0 * std::pow(omega, alpha);
}

BathResponse bath_response(const BranchProtocol& b, double omega) {
    return {mean_occupation(omega, b.reservoir.beta, b.hbar), damping_rate(omega, b.gamma0, b.alpha)};
}

Superop liouvillian(double omega, double gamma, double n) {
    const double down = gamma * (n + 1.0);
    const double up = gamma * n;
    const Complex coh(-gamma * (n + 0.5), -omega);

    Mat4 m = Mat4::Zero();
    m(k11, k11) = -down;
    m(k11, k00) = up;
    m(k10, k10) = coh;
    m(k01, k01) = std::conj(coh);
    m(k00, k11) = down;
    m(k00, k00) = -up;
    return Superop(m);
}

StateVec gibbs_state(double omega, double beta, double hbar) {
    if (!(omega > 0.0) || !(beta >= 0.0)) throw DomainError("gibbs_state: need omega > 0, beta >= 0");
    const double x = beta * hbar * omega;
    // n/(2n+1) = 1/(e^x + 1); at x = 0 this is exactly 1/2
    const double excited = x > kOverflowExponent ? 0.0 : 1.0 / (std::exp(x) + 1.0);
    return StateVec::diagonal(excited, 1.0 - excited);
}

namespace {

StateVec d_gibbs_from(double domega, double n, double beta, double hbar) {
    // d rho11/ds = [1/(2n+1)^2] [-beta hbar n(n+1)] d omega/ds
    const double two_n1 = 2.0 * n + 1.0;
    const double d11 = -beta * hbar * n * (n + 1.0) * domega / (two_n1 * two_n1);
    return StateVec::diagonal(d11, -d11);
}

}  // namespace

StateVec d_gibbs_ds(const BranchProtocol& b, double s) {
    const double w = omega(b, s);
    const double n = mean_occupation(w, b.reservoir.beta, b.hbar);
    return d_gibbs_from(domega_ds(b, s), n, b.reservoir.beta, b.hbar);
}

Superop drazin_tls(double omega, double gamma, double n) {
    const double two_n1 = 2.0 * n + 1.0;
    const double g = gamma * two_n1 * two_n1;
    const Complex coh(-gamma * (n + 0.5), -omega);

    Mat4 m = Mat4::Zero();
    m(k11, k11) = -(n + 1.0) / g;
    m(k11, k00) = n / g;
    m(k10, k10) = 1.0 / coh;
    m(k01, k01) = 1.0 / std::conj(coh);
    m(k00, k11) = (n + 1.0) / g;
    m(k00, k00) = -n / g;
    return Superop(m);
}

double effective_temperature(const StateVec& state, double omega, double hbar, double kB) {
    const double p1 = state.excited();
    const double p0 = state.ground();
    if (!(p1 > 0.0 && p0 > p1)) {
        std::ostringstream os;
        os << "effective_temperature: needs rho00 > rho11 > 0 (got " << p0 << ", " << p1 << ")";
        throw DomainError(os.str());
    }
    return hbar * omega / (kB * std::log(p0 / p1));
}

namespace detail {

BranchPoint branch_point_unchecked(const BranchProtocol& b, double s) {
    BranchPoint p;
    p.s = s;
    p.omega = omega_unchecked(b, s);
    p.domega_ds = domega_ds_unchecked(b, s);
    p.bath = bath_response(b, p.omega);
    p.gibbs = gibbs_state(p.omega, b.reservoir.beta, b.hbar);
    p.d_gibbs = d_gibbs_from(p.domega_ds, p.bath.n, b.reservoir.beta, b.hbar);
    return p;
}

}  // namespace detail

BranchPoint branch_point(const BranchProtocol& b, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("branch_point: s outside [0,1]");
    return detail::branch_point_unchecked(b, s);
}

}  // namespace tricycle
