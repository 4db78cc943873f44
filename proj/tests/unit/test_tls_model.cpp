#include <doctest.h>

#include <cmath>

#include "tricycle/errors.hpp"
#include "tricycle/protocol.hpp"
#include "tricycle/tls_model.hpp"
#include "unit/random_draws.hpp"

using namespace tricycle;

TEST_CASE("mean occupation") {
    // 1 / (e^3 - 1)
    CHECK(mean_occupation(6.0, 0.5, 1.0) == doctest::Approx(0.052395696491255952).epsilon(1e-14));
    CHECK(mean_occupation(1.0, std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mean_occupation(1.0, 701.0, 1.0) == 0.0);
    CHECK(mean_occupation(1e-9, 1.0, 1.0) == doctest::Approx(1e9).epsilon(1e-8));
}

TEST_CASE("damping rate") {
    CHECK(damping_rate(4.0, 1.5, 0.0) == 1.5);
    CHECK(damping_rate(4.0, 1.0, 0.5) == doctest::Approx(2.0));
    CHECK(damping_rate(2.0, 1.0, 0.8) == doctest::Approx(std::pow(2.0, 0.8)));
}

TEST_CASE("Gibbs state") {
    const StateVec g = gibbs_state(std::log(2.0), 1.0, 1.0);
    CHECK(g.excited() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(g.ground() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(g.is_physical());

    const StateVec inf_t = gibbs_state(3.0, 0.0, 1.0);
    CHECK(inf_t.excited() == doctest::Approx(0.5));

    const StateVec cold = gibbs_state(3.0, 1e4, 1.0);
    CHECK(cold.excited() == 0.0);
    CHECK(cold.ground() == 1.0);
}

TEST_CASE("Gibbs state is stationary for random draws") {
    TlsSampler draws(7);
    for (int i = 0; i < 100; ++i) {
        const double w = draws.log_uniform(0.05, 20.0);
        const double beta = draws.log_uniform(0.05, 5.0);
        const double gamma = draws.log_uniform(0.05, 20.0);
        const double n = mean_occupation(w, beta, 1.0);
        const StateVec r = apply(liouvillian(w, gamma, n), gibbs_state(w, beta, 1.0));
        CHECK(r.norm1() < 1e-12 * std::max(1.0, gamma * (n + 1)));
    }
}

TEST_CASE("d_gibbs_ds against a finite difference") {
    const CycleConfig c = make_cycle(caption_defaults());
    for (const auto& b : c.branches) {
        for (double s : {0.0, 0.21, 0.5, 0.9, 1.0}) {
            const double h = 1e-6;
            const auto g = [&](double t) {
                return gibbs_state(detail::omega_unchecked(b, t), b.reservoir.beta, b.hbar).excited();
            };
            const double fd = (g(s + h) - g(s - h)) / (2 * h);
            const StateVec d = d_gibbs_ds(b, s);
            CHECK(d.excited() == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
            CHECK(std::abs(d.trace()) < 1e-15);
        }
    }
}

TEST_CASE("closed-form Drazin inverse entries") {
    const Superop d = drazin_tls(1.0, 1.0, 1.0);
    // population block: -(n+1)/(gamma (2n+1)^2), n/(gamma (2n+1)^2)
    CHECK(d(k11, k11).real() == doctest::Approx(-2.0 / 9.0));
    CHECK(d(k11, k00).real() == doctest::Approx(1.0 / 9.0));
    CHECK(d(k00, k11).real() == doctest::Approx(2.0 / 9.0));
    CHECK(d(k00, k00).real() == doctest::Approx(-1.0 / 9.0));
    CHECK(d(k10, k10).real() == doctest::Approx(-0.46153846153846154));
    CHECK(d(k10, k10).imag() == doctest::Approx(0.30769230769230769));
}

TEST_CASE("effective temperature") {
    const StateVec g = gibbs_state(3.0, 1.0 / 2.5, 1.0);
    CHECK(effective_temperature(g, 3.0, 1.0, 1.0) == doctest::Approx(2.5).epsilon(1e-13));
    CHECK_THROWS_AS(effective_temperature(StateVec::diagonal(0.5, 0.5), 3.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(effective_temperature(StateVec::diagonal(0.0, 1.0), 3.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(effective_temperature(StateVec::diagonal(0.6, 0.4), 3.0, 1.0, 1.0), DomainError);
}

TEST_CASE("branch point") {
    const CycleConfig c = make_cycle(caption_defaults());
    const BranchPoint p = branch_point(c.cold(), 0.25);
    CHECK(p.omega == doctest::Approx(omega(c.cold(), 0.25)));
    CHECK(p.bath.gamma == doctest::Approx(std::pow(p.omega, 0.8)));
    CHECK(p.bath.n == doctest::Approx(mean_occupation(p.omega, 0.5, 1.0)));
    CHECK_THROWS_AS(branch_point(c.cold(), 1.5), DomainError);
}
