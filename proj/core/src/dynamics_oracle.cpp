#include "tricycle/dynamics_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tricycle/errors.hpp"
#include "tricycle/thermo_geometry.hpp"
#include "tricycle/tls_model.hpp"

namespace tricycle {

namespace {

constexpr double kPositivitySlack = 1e-7;

Mat4 generator_at(const BranchProtocol& b, double s) {
    const double w = detail::omega_unchecked(b, std::clamp(s, 0.0, 1.0));
    const BathResponse bath = bath_response(b, w);
    return liouvillian(w, bath.gamma, bath.n).matrix();
}

double population_breach(const Vec4& rho) {
    const double p1 = rho(k11).real();
    const double p0 = rho(k00).real();
    return std::max({-p1, -p0, p1 - 1.0, p0 - 1.0});
}

double simpson_over_samples(const std::vector<double>& y) {
    const int count = static_cast<int>(y.size());
    if (count < 3 || count % 2 == 0) throw DomainError("trajectory quadrature needs an even number of steps");
    return simpson_sum(y.data(), count, 1.0 / (count - 1));
}

}  // namespace

int default_steps(const BranchProtocol& b, int min_steps) {
    double max_rate = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double w = detail::omega_unchecked(b, i / 100.0);
        const BathResponse bath = bath_response(b, w);
        max_rate = std::max(max_rate, bath.gamma * (2.0 * bath.n + 1.0));
    }
    int steps = std::max(min_steps, static_cast<int>(std::ceil(20.0 * b.tau * max_rate)));
    if (steps % 2) ++steps;
    return steps;
}

Trajectory evolve_branch(const BranchProtocol& b, const StateVec& initial, int steps) {
    if (steps < 1000) throw DomainError("evolve_branch: needs at least 1000 steps");
    if (!(b.tau > 0.0)) throw DomainError("evolve_branch: tau must be positive");
    if (!initial.is_physical(1e-9)) throw DomainError("evolve_branch: initial state is not physical");

    Trajectory tr;
    tr.branch = b.reservoir.label;
    tr.tau = b.tau;
    tr.samples.reserve(static_cast<std::size_t>(steps) + 1);
    tr.samples.push_back({0.0, initial});

    const double dt = b.tau / steps;
    const double ds = 1.0 / steps;
    Vec4 rho = initial.vec();
    Mat4 l_start = generator_at(b, 0.0);

    for (int i = 0; i < steps; ++i) {
        const double s = i * ds;
        const Mat4 l_mid = generator_at(b, s + 0.5 * ds);
        const Mat4 l_end = generator_at(b, (i + 1) * ds);

        const Vec4 k1 = l_start * rho;
        const Vec4 k2 = l_mid * (rho + 0.5 * dt * k1);
        const Vec4 k3 = l_mid * (rho + 0.5 * dt * k2);
        const Vec4 k4 = l_end * (rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (const double breach = population_breach(rho); breach > kPositivitySlack) {
            std::ostringstream os;
            os << "evolve_branch: population outside [0,1] by " << breach << " at s = " << (i + 1) * ds
               << " (" << steps << " steps too coarse)";
            throw IntegratorError(os.str());
        }
        tr.samples.push_back({i + 1 == steps ? 1.0 : (i + 1) * ds, StateVec(rho)});
        l_start = l_end;
    }
    return tr;
}

double trajectory_heat(const BranchProtocol& b, const Trajectory& tr) {
    std::vector<double> y;
    y.reserve(tr.samples.size());
    for (const auto& [s, rho] : tr.samples) {
        const double w = detail::omega_unchecked(b, s);
        const StateVec rate(Vec4(generator_at(b, s) * rho.vec()));
        y.push_back(trace_pair(ObservableVec::sigma_z_energy(b.hbar, w), rate));
    }
    // dt = tau ds
    return b.tau * simpson_over_samples(y);
}

double trajectory_drive_work(const BranchProtocol& b, const Trajectory& tr) {
    std::vector<double> y;
    y.reserve(tr.samples.size());
    for (const auto& [s, rho] : tr.samples) {
        const double dw = detail::domega_ds_unchecked(b, s);
        y.push_back(trace_pair(ObservableVec::sigma_z_energy(b.hbar, dw), rho));
    }
    return simpson_over_samples(y);
}

CycleRun run_cycle(const CycleConfig& c, int steps_per_branch) {
    CycleRun run;
    const BranchProtocol& first = c.cold();
    run.initial = gibbs_state(omega(first, 0.0), first.reservoir.beta, first.hbar);

    StateVec rho = run.initial;
    for (std::size_t v = 0; v < 3; ++v) {
        const BranchProtocol& b = c.branches[v];
        int steps = steps_per_branch > 0 ? steps_per_branch : default_steps(b);
        if (steps % 2) ++steps;

        run.trajectories[v] = evolve_branch(b, rho, steps);
        run.heats[v] = trajectory_heat(b, run.trajectories[v]);
        run.drive_work[v] = trajectory_drive_work(b, run.trajectories[v]);
        rho = run.trajectories[v].final_state();

        // Sudden quench: state unchanged, frequency jumps to the next branch's start.
        const BranchProtocol& next = c.branches[(v + 1) % 3];
        const double jump = omega(next, 0.0) - omega(b, 1.0);
        run.quench_energies[v] = trace_pair(ObservableVec::sigma_z_energy(c.hbar, jump), rho);
    }
    run.final_state = rho;
    run.closure_norm = (run.final_state - run.initial).norm1();

    const ObservableVec h_start = ObservableVec::sigma_z_energy(c.hbar, omega(first, 0.0));
    run.energy_change = trace_pair(h_start, run.final_state) - trace_pair(h_start, run.initial);

    double total = 0.0;
    run.throughput = 0.0;
    for (std::size_t v = 0; v < 3; ++v) {
        for (double term : {run.heats[v], run.drive_work[v], run.quench_energies[v]}) {
            total += term;
            run.throughput += std::abs(term);
        }
    }
    run.audit_residual = total - run.energy_change;
    return run;
}

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace

OrderCheckReport perturbation_order_check(const CycleConfig& c, std::span<const double> tau_list,
                                          const QuadratureSpec& spec, int min_steps) {
    if (tau_list.size() < 3) throw DomainError("perturbation_order_check: needs at least 3 durations");
    for (std::size_t i = 0; i < tau_list.size(); ++i) {
        if (!(tau_list[i] > 0.0) || (i > 0 && !(tau_list[i] > tau_list[i - 1])))
            throw DomainError("perturbation_order_check: durations must be positive and increasing");
    }

    BranchProtocol b = c.cold();
    const BranchFunctionals f = branch_functionals(b, spec);
    const double beta = b.reservoir.beta;

    OrderCheckReport report;
    std::vector<double> taus, state_err, heat_err;
    for (double tau : tau_list) {
        b.tau = tau;
        const int steps = default_steps(b, min_steps);
        const StateVec start = gibbs_state(omega(b, 0.0), beta, b.hbar);
        const Trajectory tr = evolve_branch(b, start, steps);

        double e = 0.0;
        for (const auto& [s, rho] : tr.samples) {
            const BranchPoint p = branch_point(b, s);
            const StateVec lag = apply(drazin_tls(p.omega, p.bath.gamma, p.bath.n), p.d_gibbs);
            const StateVec first_order = p.gibbs + (1.0 / tau) * lag;
            e = std::max(e, (rho - first_order).norm1());
        }
        const double predicted = (f.dS_eq + f.sigma / tau) / beta;
        const double d = std::abs(trajectory_heat(b, tr) - predicted);

        report.rows.push_back({tau, steps, e, d});
        taus.push_back(tau);
        state_err.push_back(e);
        heat_err.push_back(d);
    }

    const auto tiny = [](double x) { return x < 1e-13; };
    if (std::all_of(state_err.begin(), state_err.end(), tiny) &&
        std::all_of(heat_err.begin(), heat_err.end(), tiny)) {
        report.exact = true;
        report.pass = true;
        return report;
    }

    for (std::size_t i = 1; i < taus.size(); ++i) {
        if (state_err[i] > state_err[i - 1] || heat_err[i] > heat_err[i - 1]) {
            std::ostringstream os;
            os << "perturbation_order_check: error grows from tau = " << taus[i - 1] << " to " << taus[i];
            throw IntegratorError(os.str());
        }
    }
    report.state_slope = loglog_slope(taus, state_err);
    report.heat_slope = loglog_slope(taus, heat_err);
    auto in_band = [](double slope) { return slope >= kSlopeLow && slope <= kSlopeHigh; };
    report.pass = in_band(report.state_slope) && in_band(report.heat_slope);
    return report;
}

}  // namespace tricycle
