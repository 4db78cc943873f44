#include "tricycle/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "tricycle/errors.hpp"

namespace tricycle {

double simpson_sum(const double* samples, int count, double h) {
    double odd = 0.0;
    double even = 0.0;
    for (int i = 1; i < count - 1; ++i) (i % 2 ? odd : even) += samples[i];
    return h / 3.0 * (samples[0] + samples[count - 1] + 4.0 * odd + 2.0 * even);
}

Integral integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    if (spec.nodes < 3 || spec.nodes % 2 == 0) throw DomainError("integrate: nodes must be odd and >= 3");
    if (spec.refinements < 0) throw DomainError("integrate: refinements must be >= 0");

    int finest = spec.nodes;
    for (int r = 0; r < spec.refinements; ++r) finest = 2 * finest - 1;

    std::vector<double> y(static_cast<std::size_t>(finest));
    const double h = 1.0 / (finest - 1);
    for (int i = 0; i < finest; ++i) {
        const double s = i == finest - 1 ? 1.0 : i * h;
        y[i] = f(s);
        if (!std::isfinite(y[i])) {
            std::ostringstream os;
            os << "integrate: non-finite sample " << y[i] << " at s = " << s;
            throw IntegrandError(os.str());
        }
    }

    Integral out;
    out.nodes_used = finest;
    out.value = simpson_sum(y.data(), finest, h);
    if (spec.refinements > 0) {
        // Previous level = every other sample of the finest grid.
        const int coarse = (finest + 1) / 2;
        std::vector<double> yc(static_cast<std::size_t>(coarse));
        for (int i = 0; i < coarse; ++i) yc[i] = y[2 * i];
        out.error_estimate = std::abs(out.value - simpson_sum(yc.data(), coarse, 2.0 * h));
    }
    return out;
}

}  // namespace tricycle
