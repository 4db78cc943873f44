#pragma once

// Vectorized two-level density-matrix algebra.
//
// All vectors and matrices use the fixed ordering (rho11, rho10, rho01, rho00),
// where |1> is the excited state.

#include <complex>

#include <Eigen/Dense>

namespace tricycle {

using Complex = std::complex<double>;
using Vec4 = Eigen::Matrix<Complex, 4, 1>;
using Mat4 = Eigen::Matrix<Complex, 4, 4>;

enum Entry : int { k11 = 0, k10 = 1, k01 = 2, k00 = 3 };

/// Vectorized 2x2 density matrix (or a difference of two of them).
class StateVec {
public:
    StateVec() : v_(Vec4::Zero()) {}
    explicit StateVec(const Vec4& v) : v_(v) {}
    StateVec(Complex r11, Complex r10, Complex r01, Complex r00) { v_ << r11, r10, r01, r00; }

    static StateVec diagonal(double excited, double ground) { return {excited, 0.0, 0.0, ground}; }

    Complex operator[](Entry e) const { return v_(e); }
    const Vec4& vec() const { return v_; }

    double excited() const { return v_(k11).real(); }
    double ground() const { return v_(k00).real(); }
    Complex trace() const { return v_(k11) + v_(k00); }

    /// Largest deviation from rho01 = conj(rho10) and from real populations.
    double hermiticity_defect() const;

    /// Trace one, hermitian, populations in [0,1], all within tol.
    bool is_physical(double tol = 1e-12) const;

    double norm1() const { return v_.cwiseAbs().sum(); }

    StateVec& operator+=(const StateVec& o) { v_ += o.v_; return *this; }
    StateVec& operator-=(const StateVec& o) { v_ -= o.v_; return *this; }
    StateVec& operator*=(double a) { v_ *= a; return *this; }

    friend StateVec operator+(StateVec a, const StateVec& b) { return a += b; }
    friend StateVec operator-(StateVec a, const StateVec& b) { return a -= b; }
    friend StateVec operator*(double a, StateVec x) { return x *= a; }

private:
    Vec4 v_;
};

/// Hermitian observable in the same vectorization, paired with states via trace_pair.
class ObservableVec {
public:
    ObservableVec() : v_(Vec4::Zero()) {}
    ObservableVec(Complex a11, Complex a10, Complex a01, Complex a00) { v_ << a11, a10, a01, a00; }

    /// (hbar*omega/2) sigma_z, the TLS Hamiltonian.
    static ObservableVec sigma_z_energy(double hbar, double omega) {
        const double e = 0.5 * hbar * omega;
        return {e, 0.0, 0.0, -e};
    }

    Complex operator[](Entry e) const { return v_(e); }
    const Vec4& vec() const { return v_; }

private:
    Vec4 v_;
};

/// Tr[A rho]. Throws HermiticityError if the imaginary part exceeds 1e-10.
double trace_pair(const ObservableVec& obs, const StateVec& x);

/// Linear map on StateVec: a Liouvillian (1/time) or its Drazin inverse (time).
class Superop {
public:
    Superop() : m_(Mat4::Zero()) {}
    explicit Superop(const Mat4& m) : m_(m) {}

    static Superop identity() { return Superop(Mat4::Identity()); }

    Complex operator()(int row, int col) const { return m_(row, col); }
    const Mat4& matrix() const { return m_; }

    friend Superop operator*(const Superop& a, const Superop& b) { return Superop(a.m_ * b.m_); }

private:
    Mat4 m_;
};

StateVec apply(const Superop& s, const StateVec& x);

/// Drazin inverse via eigendecomposition: invert on the non-null eigenspaces,
/// annihilate the one-dimensional kernel.
///
/// Throws DegenerateSpectrumError if no eigenvalue is below the kernel
/// threshold, more than one is, or the next eigenvalue is not separated by
/// the spectral gap. Both thresholds scale with max(1, ||s||_inf).
Superop drazin(const Superop& s);

struct DrazinResiduals {
    double outer;    ///< L L^D L - L
    double inner;    ///< L^D L L^D - L^D
    double commute;  ///< L L^D - L^D L
};

/// Max-entry residuals of the three Drazin identities, each relative to the
/// largest entry of the matrix it should reproduce (floored at 1).
DrazinResiduals drazin_residuals(const Superop& l, const Superop& ld);

/// Largest entrywise |a - b|.
double max_abs_diff(const Superop& a, const Superop& b);

}  // namespace tricycle
