#include "tricycle/thermo_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tricycle/errors.hpp"
#include "tricycle/tls_model.hpp"

namespace tricycle {

namespace {

constexpr double kOuterStep = 1e-5;      // central difference for the outer d/ds in Sigma
constexpr double kFormTolerance = 1e-6;  // direct vs integration-by-parts Sigma
constexpr double kLengthClamp = -1e-12;
constexpr double kQ0Tolerance = 1e-8;

// L^D(s) d rho_eq/ds at any s, including just outside [0,1].
StateVec lagged_response(const BranchPoint& p) {
    return apply(drazin_tls(p.omega, p.bath.gamma, p.bath.n), p.d_gibbs);
}

double metric_density(const BranchProtocol& b, const BranchPoint& p) {
    const ObservableVec dH = ObservableVec::sigma_z_energy(b.hbar, p.domega_ds);
    return trace_pair(dH, lagged_response(p));
}

double heat_rate(double beta, double dS, double sigma, double tau) {
    return (dS + sigma / tau) / beta;
}

}  // namespace

double entropy(const StateVec& state) {
    double s = 0.0;
    for (double p : {state.excited(), state.ground()}) {
        if (p < -1e-12) {
            std::ostringstream os;
            os << "entropy: negative population " << p;
            throw DomainError(os.str());
        }
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

double delta_S_eq(const BranchProtocol& b) {
    const double beta = b.reservoir.beta;
    return entropy(gibbs_state(omega(b, 1.0), beta, b.hbar)) -
           entropy(gibbs_state(omega(b, 0.0), beta, b.hbar));
}

SigmaForms sigma_forms(const BranchProtocol& b, const QuadratureSpec& spec) {
    const double beta = b.reservoir.beta;

    auto direct = [&](double s) {
        const BranchPoint p = detail::branch_point_unchecked(b, s);
        const StateVec ahead = lagged_response(detail::branch_point_unchecked(b, s + kOuterStep));
        const StateVec behind = lagged_response(detail::branch_point_unchecked(b, s - kOuterStep));
        const StateVec derivative = (0.5 / kOuterStep) * (ahead - behind);
        return beta * trace_pair(ObservableVec::sigma_z_energy(b.hbar, p.omega), derivative);
    };
    auto by_parts = [&](double s) {
        return -beta * metric_density(b, detail::branch_point_unchecked(b, s));
    };

    const Integral d = integrate(direct, spec);
    const Integral bp = integrate(by_parts, spec);
    return {d.value, bp.value, std::max(d.error_estimate, bp.error_estimate)};
}

namespace {

double checked_sigma(const SigmaForms& f) {
    const double scale = std::max(std::abs(f.direct), std::abs(f.by_parts));
    if (scale > 1e-14 && std::abs(f.direct - f.by_parts) > kFormTolerance * scale) {
        std::ostringstream os;
        os.precision(17);
        os << "sigma: direct form " << f.direct << " disagrees with integration by parts " << f.by_parts;
        throw RouteDisagreementError(os.str());
    }
    return f.direct;
}

}  // namespace

double sigma(const BranchProtocol& b, const QuadratureSpec& spec) {
    return checked_sigma(sigma_forms(b, spec));
}

namespace {

Integral length_integral(const BranchProtocol& b, const QuadratureSpec& spec) {
    auto integrand = [&](double s) {
        const double g = metric_density(b, branch_point(b, s));
        if (g < 0.0) {
            if (g < kLengthClamp) {
                std::ostringstream os;
                os << "thermo_length: negative metric density " << g << " at s = " << s;
                throw IntegrandError(os.str());
            }
            return 0.0;
        }
        return std::sqrt(g);
    };
    return integrate(integrand, spec);
}

}  // namespace

double thermo_length(const BranchProtocol& b, const QuadratureSpec& spec) {
    return length_integral(b, spec).value;
}

BranchFunctionals branch_functionals(const BranchProtocol& b, const QuadratureSpec& spec) {
    BranchFunctionals f;
    f.dS_eq = delta_S_eq(b);

    const SigmaForms sf = sigma_forms(b, spec);
    f.sigma = checked_sigma(sf);
    f.sigma_error = sf.error_estimate;

    const Integral len = length_integral(b, spec);
    f.length = len.value;
    f.length_error = len.error_estimate;

    f.q0_quadrature = integrate(
        [&](double s) {
            const BranchPoint p = branch_point(b, s);
            return trace_pair(ObservableVec::sigma_z_energy(b.hbar, p.omega), p.d_gibbs);
        },
        spec).value;
    return f;
}

std::array<BranchFunctionals, 3> cycle_functionals(const CycleConfig& c, const QuadratureSpec& spec) {
    return {branch_functionals(c.branches[kCold], spec), branch_functionals(c.branches[kHot], spec),
            branch_functionals(c.branches[kAux], spec)};
}

BranchThermo branch_thermo(const BranchProtocol& b, const BranchFunctionals& f) {
    const double beta = b.reservoir.beta;
    BranchThermo t;
    t.dS_eq = f.dS_eq;
    t.sigma = f.sigma;
    t.q0 = f.dS_eq / beta;
    t.q1 = f.sigma / (beta * b.tau);
    t.q = t.q0 + t.q1;
    t.length = f.length;
    t.q0_quadrature = f.q0_quadrature;

    if (std::abs(t.q0_quadrature - t.q0) > kQ0Tolerance * std::max(1.0, std::abs(t.q0))) {
        std::ostringstream os;
        os.precision(17);
        os << "branch_thermo: Q0 by quadrature " << t.q0_quadrature << " vs entropy route " << t.q0;
        throw RouteDisagreementError(os.str());
    }
    return t;
}

BranchThermo branch_thermo(const BranchProtocol& b, const QuadratureSpec& spec) {
    return branch_thermo(b, branch_functionals(b, spec));
}

double reversible_cop(double Tc, double Tp, double Th) {
    return Tc * (Th - Tp) / (Th * (Tp - Tc));
}

HeatPumpMetrics heat_pump_metrics(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f) {
    const BranchProtocol& bc = c.cold();
    const BranchProtocol& bh = c.hot();
    const BranchProtocol& bp = c.aux();
    const double Tc = bc.reservoir.temperature;
    const double Th = bh.reservoir.temperature;
    const double Tp = bp.reservoir.temperature;
    const double tau = bc.tau + bh.tau + bp.tau;

    const double qh = heat_rate(bh.reservoir.beta, f[kHot].dS_eq, f[kHot].sigma, bh.tau);
    const double qp = heat_rate(bp.reservoir.beta, f[kAux].dS_eq, f[kAux].sigma, bp.tau);

    HeatPumpMetrics m;
    m.psi = qh / qp;
    m.psi_r = Th * (Tp - Tc) / (Tp * (Th - Tc));
    m.qdot_h = qh / tau;
    m.bound_lhs = m.qdot_h * (m.psi_r / m.psi - 1.0);
    double weighted = 0.0;
    for (std::size_t v = 0; v < 3; ++v) {
        const BranchProtocol& b = c.branches[v];
        weighted += b.reservoir.beta * f[v].length * f[v].length / b.tau;
    }
    m.bound_rhs = weighted / ((bc.reservoir.beta - bh.reservoir.beta) * tau);
    return m;
}

HeatPumpMetrics heat_pump_metrics(const CycleConfig& c, const QuadratureSpec& spec) {
    return heat_pump_metrics(c, cycle_functionals(c, spec));
}

EngineReductionMetrics engine_reduction_metrics(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f) {
    const BranchProtocol& bc = c.cold();
    const BranchProtocol& bh = c.hot();
    const BranchProtocol& bp = c.aux();
    const double Tc = bc.reservoir.temperature;
    const double Tp = bp.reservoir.temperature;

    const double qc = heat_rate(bc.reservoir.beta, f[kCold].dS_eq, f[kCold].sigma, bc.tau);
    const double qh = heat_rate(bh.reservoir.beta, f[kHot].dS_eq, f[kHot].sigma, bh.tau);
    const double qp = heat_rate(bp.reservoir.beta, f[kAux].dS_eq, f[kAux].sigma, bp.tau);

    EngineReductionMetrics m;
    m.work = -(qc + qp);
    m.eps = qc / m.work;
    m.eps_carnot = Tc / (Tp - Tc);
    m.power = m.work / (bc.tau + bp.tau);
    m.eta = qh / qp;  // same Sigma_p / tau_p reading as psi
    m.eta_c = (Tp - Tc) / Tp;
    return m;
}

EngineReductionMetrics engine_reduction_metrics(const CycleConfig& c, const QuadratureSpec& spec) {
    return engine_reduction_metrics(c, cycle_functionals(c, spec));
}

CycleMetrics cycle_metrics(const CycleConfig& c, const std::array<BranchFunctionals, 3>& f) {
    CycleMetrics m{};
    double tau = 0.0;
    for (std::size_t v = 0; v < 3; ++v) {
        m.branches[v] = branch_thermo(c.branches[v], f[v]);
        tau += c.branches[v].tau;
    }
    const BranchThermo& tc = m.branches[kCold];
    const BranchThermo& th = m.branches[kHot];
    const double beta_c = c.cold().reservoir.beta;
    const double beta_p = c.aux().reservoir.beta;

    m.tau = tau;
    m.eps = tc.q / th.q;
    m.eps_r = reversible_cop(c.cold().reservoir.temperature, c.aux().reservoir.temperature,
                             c.hot().reservoir.temperature);
    m.R = tc.q / tau;

    double length_weight = 0.0;
    m.dS_en = 0.0;
    m.dS_en_heat = 0.0;
    m.heat_sum = 0.0;
    m.q0_sum = 0.0;
    for (std::size_t v = 0; v < 3; ++v) {
        const BranchProtocol& b = c.branches[v];
        const BranchThermo& t = m.branches[v];
        m.dS_en -= t.sigma / b.tau;
        m.dS_en_heat -= b.reservoir.beta * t.q;
        m.heat_sum += t.q;
        m.q0_sum += t.q0;
        length_weight += b.reservoir.beta * t.length * t.length / b.tau;
    }
    m.Lbar2 = length_weight / (beta_c - beta_p);
    m.lh = m.R * (m.eps_r / m.eps - 1.0);
    m.rh = m.Lbar2 / tau;
    m.tradeoff_rhs = m.dS_en / ((beta_c - beta_p) * tau);
    m.tradeoff_residual = m.lh - m.tradeoff_rhs;

    const HeatPumpMetrics hp = heat_pump_metrics(c, f);
    m.psi = hp.psi;
    m.psi_r = hp.psi_r;
    const EngineReductionMetrics er = engine_reduction_metrics(c, f);
    m.eta = er.eta;
    m.eta_c = er.eta_c;
    m.P = er.power;
    m.W = er.work;
    return m;
}

CycleMetrics cycle_metrics(const CycleConfig& c, const QuadratureSpec& spec) {
    return cycle_metrics(c, cycle_functionals(c, spec));
}

}  // namespace tricycle
