#include <doctest.h>

#include <cmath>
#include <vector>

#include "tricycle/errors.hpp"
#include "tricycle/protocol.hpp"
#include "tricycle/thermo_geometry.hpp"
#include "tricycle/time_optimizer.hpp"

using namespace tricycle;

namespace {

CycleConfig caption(double alpha) {
    return with_alpha(make_cycle(caption_defaults()), alpha);
}

// Independent root oracle: dense sign scan of f on (0, hi] refined by bisection.
template <class F>
std::vector<double> scan_roots(F f, double hi, int samples = 200000) {
    std::vector<double> roots;
    double x0 = hi / samples;
    double f0 = f(x0);
    for (int i = 2; i <= samples; ++i) {
        const double x1 = hi * i / samples;
        const double f1 = f(x1);
        if ((f0 < 0) != (f1 < 0)) {
            double a = x0, b = x1, fa = f0;
            for (int k = 0; k < 200 && b - a > 1e-14 * b; ++k) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if ((fm < 0) == (fa < 0)) { a = m; fa = fm; } else { b = m; }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace

TEST_CASE("stable quadratic") {
    SUBCASE("two distinct roots") {
        const QuadraticRoots r = solve_quadratic(-0.5, 2.0, -1.5);
        REQUIRE(r.count == 2);
        CHECK(r.lo == doctest::Approx(1.0));
        CHECK(r.hi == doctest::Approx(3.0));
    }
    SUBCASE("double root") {
        const QuadraticRoots r = solve_quadratic(-0.5, 2.0, -2.0);
        CHECK(r.count == 1);
        CHECK(r.lo == doctest::Approx(2.0));
        CHECK(r.discriminant == 0.0);
    }
    SUBCASE("no real root") {
        const QuadraticRoots r = solve_quadratic(1.0, 0.0, 1.0);
        CHECK(r.count == 0);
        CHECK(r.discriminant == doctest::Approx(-4.0));
    }
    SUBCASE("cancellation-prone small root") {
        const QuadraticRoots r = solve_quadratic(1.0, 1e8, 1.0);
        REQUIRE(r.count == 2);
        CHECK(r.hi == doctest::Approx(-1e-8).epsilon(1e-12));
    }
    SUBCASE("linear") {
        const QuadraticRoots r = solve_quadratic(0.0, 2.0, -3.0);
        CHECK(r.count == 1);
        CHECK(r.lo == doctest::Approx(1.5));
    }
}

TEST_CASE("solve_tau_h on synthetic coefficients") {
    // a = dS_h / Sigma_h = -0.5 and C = -1.5 give roots {1, 3}
    const BranchTriple dS{1.0, 0.5, -1.5};
    const BranchTriple sigma{-1.0, -1.0, -1.0};
    // C = dS_p tp^2 / Sigma_p + dS_c tc^2 / Sigma_c + 2 (tc + tp) = 1.5 tp^2 - tc^2 + 2 tc + 2 tp
    // tc = 1, tp = 0.5: 0.375 - 1 + 2 + 1 = 2.375 > 0 -> single positive root
    const RootSolution single = solve_tau_h(dS, sigma, 1.0, 0.5);
    CHECK(single.choice == RootChoice::unique);
    CHECK(constraint_residual(dS, sigma, {1.0, single.tau, 0.5}) == doctest::Approx(0.0).scale(1.0));

    // tc = 3, tp = 0.5: 0.375 - 9 + 6 + 1 = -1.625 -> two positive roots
    const RootSolution pair = solve_tau_h(dS, sigma, 3.0, 0.5);
    CHECK(pair.choice == RootChoice::r_max);
    CHECK(pair.discriminant > 0.0);
    CHECK(constraint_residual(dS, sigma, {3.0, pair.tau, 0.5}) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("solve_tau_h reports infeasibility with the discriminant") {
    const BranchTriple dS{1.0, 0.5, -1.5};
    const BranchTriple sigma{-1.0, -1.0, -1.0};
    // tc = 3, tp = 0: C = -3 -> 4 - 4 * (-0.5) * (-3) = -2
    try {
        solve_tau_h(dS, sigma, 3.0, 0.0);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.discriminant() == doctest::Approx(-2.0));
    }
}

TEST_CASE("coefficient sign preconditions") {
    CHECK_THROWS_AS(solve_tau_h({1, -0.5, 1}, {-1, -1, -1}, 1, 1), DomainError);
    CHECK_THROWS_AS(solve_tau_p({1, 1, 1}, {-1, -1, -1}, 1, 1), DomainError);
    CHECK_THROWS_AS(constraint_residual({1, 1, 1}, {-1, 0, -1}, {1, 1, 1}), DomainError);
}

TEST_CASE("solve_tau_h agrees with a scan-and-bisect oracle on the caption cycle") {
    for (double alpha : {0.0, 0.4, 0.8, 1.2}) {
        const auto f = cycle_functionals(caption(alpha));
        const BranchTriple dS{f[0].dS_eq, f[1].dS_eq, f[2].dS_eq};
        const BranchTriple sg{f[0].sigma, f[1].sigma, f[2].sigma};
        for (double tc : {10.0, 25.0, 40.0}) {
            for (double tp : {10.0, 25.0, 40.0}) {
                CAPTURE(alpha);
                CAPTURE(tc);
                CAPTURE(tp);
                const auto roots = scan_roots([&](double th) { return constraint_residual(dS, sg, {tc, th, tp}); }, 400.0);
                if (roots.empty()) {
                    CHECK_THROWS_AS(solve_tau_h(dS, sg, tc, tp), InfeasibleError);
                    continue;
                }
                const RootSolution r = solve_tau_h(dS, sg, tc, tp);
                // pick the oracle root with the larger cooling rate
                const double qc = dS[kCold] + sg[kCold] / tc;
                double best = roots.front();
                for (double x : roots)
                    if (qc / (tc + x + tp) > qc / (tc + best + tp)) best = x;
                CHECK(r.tau == doctest::Approx(best).epsilon(1e-9));
                CHECK(r.choice == (roots.size() == 1 ? RootChoice::unique : RootChoice::r_max));
            }
        }
    }
}

TEST_CASE("fixed-COP allocation") {
    const CycleConfig c = caption(0.8);
    const auto f = cycle_functionals(c);
    const AllocationResult a = solve_fixed_cop(c, f, 20.0, 2.0);
    CHECK(a.tau_h == doctest::Approx(0.3874).epsilon(1e-3));
    CHECK(a.tau_p == doctest::Approx(24.0294).epsilon(1e-4));
    CHECK(std::abs(a.residual) < 1e-9 * 2.0 * (a.tau_c + a.tau_h + a.tau_p));

    const CycleMetrics m = cycle_metrics(with_durations(c, a.tau_c, a.tau_h, a.tau_p), f);
    CHECK(m.eps == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("fixed-COP infeasibility") {
    const CycleConfig c = caption(0.8);
    const auto f = cycle_functionals(c);
    CHECK_THROWS_AS(solve_fixed_cop(c, f, 20.0, 3.0), InfeasibleError);
    CHECK_THROWS_AS(solve_fixed_cop(c, f, 20.0, 3.5), InfeasibleError);
    CHECK_THROWS_AS(solve_fixed_cop(c, f, 20.0, 0.0), InfeasibleError);
}

TEST_CASE("fixed-COP near the reversible value stays finite") {
    // The COP rises as tau_h shrinks. tau_h diverges at the lower edge
    // eps = Tc (dS_c + Sigma_c / tau_c) / (Th dS_h), not at eps_r.
    const CycleConfig c = caption(0.8);
    const auto f = cycle_functionals(c);
    const double tc = 20.0;
    const double edge = 2.0 * (f[kCold].dS_eq + f[kCold].sigma / tc) / (6.0 * f[kHot].dS_eq);
    CHECK(edge < 3.0);
    CHECK_THROWS_AS(solve_fixed_cop(c, f, tc, edge * (1 - 1e-6)), InfeasibleError);

    const AllocationResult near_edge = solve_fixed_cop(c, f, tc, edge * (1 + 1e-6));
    CHECK(near_edge.tau_h > 1e4);

    const AllocationResult near_rev = solve_fixed_cop(c, f, tc, 3.0 * (1 - 1e-8));
    CHECK(near_rev.tau_h == doctest::Approx(0.2356).epsilon(1e-3));
}
