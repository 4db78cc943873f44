#include "tricycle/time_optimizer.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "tricycle/errors.hpp"

namespace tricycle {

std::string_view to_string(RootChoice choice) {
    return choice == RootChoice::unique ? "unique" : "r_max";
}

double constraint_residual(const BranchTriple& dS, const BranchTriple& sigma, const BranchTriple& taus) {
    double r = 0.0;
    for (std::size_t v = 0; v < 3; ++v) {
        if (sigma[v] == 0.0) throw DomainError("constraint_residual: Sigma_v = 0 (static branch)");
        r += dS[v] * taus[v] * taus[v] / sigma[v] + 2.0 * taus[v];
    }
    return r;
}

QuadraticRoots solve_quadratic(double a, double b, double c) {
    QuadraticRoots out;
    if (a == 0.0) {
        if (b != 0.0) {
            out.count = 1;
            out.lo = out.hi = -c / b;
        }
        return out;
    }
    out.discriminant = b * b - 4.0 * a * c;
    if (out.discriminant < 0.0) return out;

    const double root = std::sqrt(out.discriminant);
    const double q = -0.5 * (b + std::copysign(root, b));
    double r1 = q / a;
    double r2 = q != 0.0 ? c / q : r1;
    if (r1 > r2) std::swap(r1, r2);
    out.lo = r1;
    out.hi = r2;
    out.count = out.discriminant > 0.0 ? 2 : 1;
    return out;
}

namespace {

// cooling_weight(tau) is proportional to R for the candidate duration.
template <class Weight>
RootSolution pick_positive(const QuadraticRoots& roots, Weight cooling_weight, const char* who) {
    std::vector<double> positive;
    if (roots.count >= 1 && roots.lo > 0.0) positive.push_back(roots.lo);
    if (roots.count == 2 && roots.hi > 0.0) positive.push_back(roots.hi);

    if (positive.empty()) {
        std::ostringstream os;
        os << who << ": no positive real root (discriminant " << roots.discriminant << ")";
        throw InfeasibleError(os.str(), roots.discriminant);
    }
    if (positive.size() == 1) return {positive[0], RootChoice::unique, roots.discriminant};
    const double best = cooling_weight(positive[0]) >= cooling_weight(positive[1]) ? positive[0] : positive[1];
    return {best, RootChoice::r_max, roots.discriminant};
}

void require_nonzero(const BranchTriple& sigma) {
    for (double s : sigma)
        if (s == 0.0) throw DomainError("time_optimizer: Sigma_v = 0 (static branch)");
}

}  // namespace

RootSolution solve_tau_h(const BranchTriple& dS, const BranchTriple& sigma, double tau_c, double tau_p) {
    require_nonzero(sigma);
    const double a = dS[kHot] / sigma[kHot];
    if (!(a < 0.0)) throw DomainError("solve_tau_h: needs dS_h / Sigma_h < 0");
    const double C = dS[kAux] * tau_p * tau_p / sigma[kAux] + dS[kCold] * tau_c * tau_c / sigma[kCold] +
                     2.0 * (tau_c + tau_p);
    const double qc = dS[kCold] + sigma[kCold] / tau_c;
    return pick_positive(
        solve_quadratic(a, 2.0, C), [&](double tau_h) { return qc / (tau_c + tau_h + tau_p); }, "solve_tau_h");
}

RootSolution solve_tau_p(const BranchTriple& dS, const BranchTriple& sigma, double tau_c, double tau_h) {
    require_nonzero(sigma);
    const double a = dS[kAux] / sigma[kAux];
    if (!(a > 0.0)) throw DomainError("solve_tau_p: needs dS_p / Sigma_p > 0");
    const double C = dS[kHot] * tau_h * tau_h / sigma[kHot] + dS[kCold] * tau_c * tau_c / sigma[kCold] +
                     2.0 * (tau_c + tau_h);
    const double qc = dS[kCold] + sigma[kCold] / tau_c;
    return pick_positive(
        solve_quadratic(a, 2.0, C), [&](double tau_p) { return qc / (tau_c + tau_h + tau_p); }, "solve_tau_p");
}

AllocationResult solve_fixed_cop(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f,
                                 double tau_c, double eps_target) {
    const double Tc = c.cold().reservoir.temperature;
    const double Th = c.hot().reservoir.temperature;
    const double Tp = c.aux().reservoir.temperature;
    const double eps_r = reversible_cop(Tc, Tp, Th);
    // eps_r is a supremum; rounding in its evaluation must not admit it.
    if (!(eps_target > 0.0 && eps_target < eps_r * (1.0 - 1e-12))) {
        std::ostringstream os;
        os << "solve_fixed_cop: target " << eps_target << " outside (0, eps_r = " << eps_r << ")";
        throw InfeasibleError(os.str());
    }
    if (!(tau_c > 0.0)) throw DomainError("solve_fixed_cop: tau_c must be positive");

    AllocationResult out{};
    for (std::size_t v = 0; v < 3; ++v) {
        out.dS[v] = f[v].dS_eq;
        out.sigma[v] = f[v].sigma;
    }
    require_nonzero(out.sigma);

    // eps = Tc [dS_c + Sigma_c/tau_c] / (Th [dS_h + Sigma_h/tau_h]) solved for tau_h.
    const double cold = Tc * (out.dS[kCold] + out.sigma[kCold] / tau_c);
    const double denominator = cold / (Th * eps_target) - out.dS[kHot];
    const double tau_h = out.sigma[kHot] / denominator;
    if (!(tau_h > 0.0) || !std::isfinite(tau_h)) {
        std::ostringstream os;
        os << "solve_fixed_cop: COP " << eps_target << " needs tau_h = " << tau_h << " at tau_c = " << tau_c;
        throw InfeasibleError(os.str());
    }

    const RootSolution p = solve_tau_p(out.dS, out.sigma, tau_c, tau_h);
    out.tau_c = tau_c;
    out.tau_h = tau_h;
    out.tau_p = p.tau;
    out.choice = p.choice;
    out.residual = constraint_residual(out.dS, out.sigma, {tau_c, tau_h, p.tau});
    return out;
}

AllocationResult solve_fixed_cop(const CycleConfig& c, double tau_c, double eps_target, const QuadratureSpec& spec) {
    return solve_fixed_cop(c, cycle_functionals(c, spec), tau_c, eps_target);
}

}  // namespace tricycle
