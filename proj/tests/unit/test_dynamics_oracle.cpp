#include <doctest.h>

#include <array>
#include <cmath>

#include "tricycle/dynamics_oracle.hpp"
#include "tricycle/errors.hpp"
#include "tricycle/protocol.hpp"
#include "tricycle/thermo_geometry.hpp"
#include "tricycle/tls_model.hpp"

using namespace tricycle;

namespace {

CycleConfig frozen_cycle(double tau) {
    CycleSeeds s = caption_defaults();
    s.drive = DriveMode::frozen;
    s.tau_c = s.tau_h = s.tau_p = tau;
    return make_cycle(s);
}

}  // namespace

TEST_CASE("default step count") {
    const CycleConfig c = make_cycle(caption_defaults());
    const int n = default_steps(c.cold());
    CHECK(n >= 4000);
    CHECK(n % 2 == 0);
    CHECK(default_steps(c.cold(), 10001) == 10002);
}

TEST_CASE("relaxation at a frozen frequency matches the analytic solution") {
    const CycleConfig c = frozen_cycle(3.0);
    const BranchProtocol& b = c.cold();
    const double w = omega(b, 0.0);
    const BathResponse bath = bath_response(b, w);
    const double rate = bath.gamma * (2 * bath.n + 1);
    const double p_eq = bath.n / (2 * bath.n + 1);

    const StateVec start{0.9, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.1};
    const Trajectory tr = evolve_branch(b, start, 2000);
    REQUIRE(tr.samples.size() == 2001);
    for (std::size_t i = 0; i < tr.samples.size(); i += 250) {
        const double t = tr.samples[i].s * b.tau;
        const double p = p_eq + (0.9 - p_eq) * std::exp(-rate * t);
        const Complex coh = Complex(0.2, 0.1) * std::exp(Complex(-bath.gamma * (bath.n + 0.5), -w) * t);
        CHECK(tr.samples[i].rho[k11].real() == doctest::Approx(p).epsilon(1e-10));
        CHECK(std::abs(tr.samples[i].rho[k10] - coh) < 1e-9);
    }

    // with no drive all energy change is heat
    const double du = trace_pair(ObservableVec::sigma_z_energy(1.0, w), tr.final_state() - start);
    CHECK(trajectory_heat(b, tr) == doctest::Approx(du).epsilon(1e-9));
    CHECK(trajectory_drive_work(b, tr) == 0.0);
}

TEST_CASE("Gibbs state is preserved under a frozen drive") {
    const CycleConfig c = frozen_cycle(5.0);
    const BranchProtocol& b = c.hot();
    const StateVec g = gibbs_state(omega(b, 0.0), b.reservoir.beta, b.hbar);
    const Trajectory tr = evolve_branch(b, g, 1000);
    CHECK((tr.final_state() - g).norm1() < 1e-13);
}

TEST_CASE("evolve_branch preconditions") {
    const CycleConfig c = make_cycle(caption_defaults());
    const StateVec g = StateVec::diagonal(0.2, 0.8);
    CHECK_THROWS_AS(evolve_branch(c.cold(), g, 999), DomainError);
    CHECK_THROWS_AS(evolve_branch(c.cold(), StateVec::diagonal(0.2, 0.7), 1000), DomainError);
    CHECK_THROWS_AS(trajectory_heat(c.cold(), evolve_branch(c.cold(), g, 1001)), DomainError);
}

TEST_CASE("quench continuity of the equilibrium states") {
    for (double alpha : {0.0, 0.8}) {
        const CycleConfig c = with_alpha(make_cycle(caption_defaults()), alpha);
        const std::array<std::pair<const BranchProtocol*, const BranchProtocol*>, 3> quenches{{
            {&c.cold(), &c.hot()}, {&c.hot(), &c.aux()}, {&c.aux(), &c.cold()}}};
        for (const auto& [from, to] : quenches) {
            const StateVec end = gibbs_state(omega(*from, 1.0), from->reservoir.beta, from->hbar);
            const StateVec start = gibbs_state(omega(*to, 0.0), to->reservoir.beta, to->hbar);
            CHECK((end - start).norm1() < 1e-12);
        }
    }
}

TEST_CASE("cycle energy audit including drive work") {
    const CycleConfig c = with_durations(make_cycle(caption_defaults()), 10.0, 10.0, 10.0);
    const CycleRun run = run_cycle(c);
    CHECK(std::abs(run.audit_residual) < 1e-9 * run.throughput);
    // the state does not return to its start exactly at finite tau
    CHECK(run.closure_norm > 0.0);
    CHECK(run.closure_norm < 0.05);

    // leading-order heats are close to the perturbative values
    const CycleMetrics m = cycle_metrics(c);
    for (std::size_t v = 0; v < 3; ++v)
        CHECK(run.heats[v] == doctest::Approx(m.branches[v].q).epsilon(0.05));
}

TEST_CASE("perturbation order on a short ladder") {
    const CycleConfig c = make_cycle(caption_defaults());
    const std::array<double, 3> taus{20.0, 40.0, 80.0};
    const OrderCheckReport r = perturbation_order_check(c, taus);
    REQUIRE(r.rows.size() == 3);
    CHECK_FALSE(r.exact);
    CHECK(r.state_slope == doctest::Approx(-2.0).epsilon(0.1));
    CHECK(r.heat_slope == doctest::Approx(-2.0).epsilon(0.1));
    CHECK(r.pass);
}

TEST_CASE("perturbation order with a frozen drive is exact") {
    const std::array<double, 3> taus{1.0, 2.0, 4.0};
    const OrderCheckReport r = perturbation_order_check(frozen_cycle(1.0), taus);
    CHECK(r.exact);
    CHECK(r.pass);
}

TEST_CASE("perturbation order input validation") {
    const CycleConfig c = make_cycle(caption_defaults());
    const std::array<double, 2> two{40.0, 80.0};
    CHECK_THROWS_AS(perturbation_order_check(c, two), DomainError);
    const std::array<double, 3> unordered{40.0, 20.0, 80.0};
    CHECK_THROWS_AS(perturbation_order_check(c, unordered), DomainError);
}
