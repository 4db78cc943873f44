#include "tricycle/superop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tricycle/errors.hpp"

namespace tricycle {

double StateVec::hermiticity_defect() const {
    const double coh = std::abs(v_(k01) - std::conj(v_(k10)));
    return std::max({coh, std::abs(v_(k11).imag()), std::abs(v_(k00).imag())});
}

bool StateVec::is_physical(double tol) const {
    if (std::abs(trace() - Complex(1.0)) > tol || hermiticity_defect() > tol) return false;
    const double p1 = excited();
    const double p0 = ground();
    return p1 >= -tol && p1 <= 1.0 + tol && p0 >= -tol && p0 <= 1.0 + tol;
}

double trace_pair(const ObservableVec& obs, const StateVec& x) {
    // Tr[A rho] = A11 rho11 + A10 rho01 + A01 rho10 + A00 rho00
    const Complex t = obs[k11] * x[k11] + obs[k10] * x[k01] + obs[k01] * x[k10] + obs[k00] * x[k00];
    if (std::abs(t.imag()) > 1e-10) {
        std::ostringstream os;
        os << "trace_pair: imaginary residue " << t.imag();
        throw HermiticityError(os.str());
    }
    return t.real();
}

StateVec apply(const Superop& s, const StateVec& x) {
    return StateVec(Vec4(s.matrix() * x.vec()));
}

namespace {

double inf_norm(const Mat4& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

Superop drazin(const Superop& s) {
    const Mat4& l = s.matrix();
    const double scale = std::max(1.0, inf_norm(l));

    Eigen::ComplexEigenSolver<Mat4> es(l);
    if (es.info() != Eigen::Success) throw DegenerateSpectrumError("drazin: eigendecomposition failed");

    const auto& lambda = es.eigenvalues();
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(lambda(a)) < std::abs(lambda(b)); });

    const double kernel = std::abs(lambda(order[0]));
    const double next = std::abs(lambda(order[1]));
    if (kernel >= 1e-12 * scale) {
        std::ostringstream os;
        os << "drazin: no null eigenvalue (smallest modulus " << kernel << ")";
        throw DegenerateSpectrumError(os.str());
    }
    if (next - kernel < 1e-9 * scale || next < 1e-13) {
        std::ostringstream os;
        os << "drazin: kernel not one-dimensional or gap too small (next modulus " << next << ")";
        throw DegenerateSpectrumError(os.str());
    }

    Eigen::Matrix<Complex, 4, 1> inv = Eigen::Matrix<Complex, 4, 1>::Zero();
    for (int k = 1; k < 4; ++k) inv(order[k]) = 1.0 / lambda(order[k]);

    const Mat4& v = es.eigenvectors();
    Eigen::FullPivLU<Mat4> lu(v);
    if (!lu.isInvertible()) throw DegenerateSpectrumError("drazin: generator is not diagonalizable");
    return Superop(Mat4(v * inv.asDiagonal() * lu.inverse()));
}

DrazinResiduals drazin_residuals(const Superop& l, const Superop& ld) {
    const Mat4& a = l.matrix();
    const Mat4& d = ld.matrix();
    auto rel = [](const Mat4& diff, const Mat4& ref) {
        return diff.cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff());
    };
    return {
        rel(a * d * a - a, a),
        rel(d * a * d - d, d),
        rel(a * d - d * a, a * d),
    };
}

double max_abs_diff(const Superop& a, const Superop& b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace tricycle
