#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "tricycle/errors.hpp"
#include "tricycle/quadrature.hpp"

using namespace tricycle;

TEST_CASE("Simpson is exact on cubics") {
    const Integral r = integrate([](double s) { return 4 * s * s * s - 3 * s * s + 2 * s + 1; }, {3, 0});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.nodes_used == 3);
    CHECK(r.error_estimate == 0.0);
}

TEST_CASE("refinement doubles the grid and estimates the error") {
    const Integral r = integrate([](double s) { return std::exp(s); }, {11, 1});
    CHECK(r.nodes_used == 21);
    const double exact = std::numbers::e - 1.0;
    CHECK(std::abs(r.value - exact) < 1e-7);
    CHECK(r.error_estimate > std::abs(r.value - exact));
    // fourth order: error drops by about 16 per doubling
    CHECK(r.error_estimate / std::abs(r.value - exact) == doctest::Approx(15.0).epsilon(0.05));
}

TEST_CASE("default grid on a smooth periodic-free integrand") {
    const Integral r = integrate([](double s) { return std::sin(std::numbers::pi * s); });
    CHECK(r.value == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-13));
    CHECK(r.nodes_used == 1601);
}

TEST_CASE("invalid specs and integrands") {
    const auto one = [](double) { return 1.0; };
    CHECK_THROWS_AS(integrate(one, {4, 0}), DomainError);
    CHECK_THROWS_AS(integrate(one, {1, 0}), DomainError);
    CHECK_THROWS_AS(integrate(one, {5, -1}), DomainError);
    CHECK_THROWS_AS(integrate([](double s) { return s > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0; }),
                    IntegrandError);
    CHECK_THROWS_AS(integrate([](double s) { return 1.0 / (s - 0.5); }, {5, 0}), IntegrandError);
}

TEST_CASE("simpson_sum on a raw grid") {
    const double y[] = {0.0, 1.0, 4.0, 9.0, 16.0};  // s^2 on [0, 4]
    CHECK(simpson_sum(y, 5, 1.0) == doctest::Approx(64.0 / 3.0));
}
