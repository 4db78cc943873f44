#pragma once

#include <functional>

namespace tricycle {

/// Composite Simpson on [0,1].
struct QuadratureSpec {
    int nodes = 801;       ///< odd, >= 3
    int refinements = 1;   ///< node-doubling passes (nodes -> 2*nodes - 1)
};

struct Integral {
    double value = 0.0;           ///< value on the finest grid
    double error_estimate = 0.0;  ///< |finest - previous|, 0 without refinement
    int nodes_used = 0;
};

/// Throws DomainError for an invalid spec and IntegrandError for non-finite samples.
Integral integrate(const std::function<double(double)>& f, const QuadratureSpec& spec = {});

/// Composite Simpson weights for a uniform grid of odd size on [a, b].
double simpson_sum(const double* samples, int count, double h);

}  // namespace tricycle
