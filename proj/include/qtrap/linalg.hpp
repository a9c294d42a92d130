#pragma once

#include "qtrap/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>

namespace qtrap {

template <typename Real>
using Mat2 = Eigen::Matrix<std::complex<Real>, 2, 2>;
template <typename Real>
using Mat4 = Eigen::Matrix<std::complex<Real>, 4, 4>;

struct DensityCheck {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;

    bool ok(double trace_tol, double herm_tol, double psd_tol) const {
        return trace_error <= trace_tol && hermiticity_error <= herm_tol &&
               min_eigenvalue >= -psd_tol;
    }
};

/// Trace, Hermiticity and positivity diagnostics of a square complex matrix.
template <typename Derived>
DensityCheck check_density(const Eigen::MatrixBase<Derived>& rho) {
    using Scalar = typename Derived::Scalar;
    using Plain = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    const Plain m = rho;
    DensityCheck c;
    c.trace_error = static_cast<double>(std::abs(m.trace() - Scalar(1)));
    c.hermiticity_error = static_cast<double>((m - m.adjoint()).cwiseAbs().maxCoeff());
    const Plain h = (m + m.adjoint()) / typename Derived::RealScalar(2);
    Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = static_cast<double>(es.eigenvalues().minCoeff());
    return c;
}

/// sigma_y (x) sigma_y; real and basis-order independent up to sign.
template <typename Real>
Mat4<Real> spin_flip() {
    Mat4<Real> s = Mat4<Real>::Zero();
    s(0, 3) = -1;
    s(1, 2) = 1;
    s(2, 1) = 1;
    s(3, 0) = -1;
    return s;
}

/// Hermitian square root of a PSD matrix; eigenvalues in [-1e-12, 0] clamp to zero.
template <typename Derived>
auto psd_sqrt(const Eigen::MatrixBase<Derived>& rho) {
    using Scalar = typename Derived::Scalar;
    using Real = typename Derived::RealScalar;
    using Plain = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    const Plain h = (rho + rho.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Plain> es(h);
    auto ev = es.eigenvalues().eval();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < Real(-1e-12)) throw DomainError("matrix is not positive semidefinite");
        ev[i] = ev[i] < Real(0) ? Real(0) : ev[i];
    }
    const Plain v = es.eigenvectors();
    return Plain(v * ev.cwiseSqrt().asDiagonal() * v.adjoint());
}

/// Throws DomainError unless rho is a density matrix (trace 1, Hermitian within 1e-9).
template <typename Derived>
void require_density(const Eigen::MatrixBase<Derived>& rho, const char* who) {
    const DensityCheck c = check_density(rho);
    if (c.trace_error > 1e-9 || c.hermiticity_error > 1e-9 || c.min_eigenvalue < -1e-12)
        throw DomainError(std::string(who) + ": argument is not a valid density matrix");
}

/// Wootters concurrence. sqrt(lambda_i) are the singular values of
/// sqrt(rho) S sqrt(rho)^*, S = sigma_y (x) sigma_y, which are the square roots of
/// the spectrum of zeta = rho S rho^* S.
template <typename Derived>
typename Derived::RealScalar concurrence_wootters(const Eigen::MatrixBase<Derived>& rho) {
    using Real = typename Derived::RealScalar;
    static_assert(Derived::RowsAtCompileTime == 4 || Derived::RowsAtCompileTime == Eigen::Dynamic);
    if (rho.rows() != 4 || rho.cols() != 4) throw DomainError("concurrence: need a 4x4 matrix");
    require_density(rho, "concurrence");
    const Mat4<Real> r = psd_sqrt(rho);
    const Mat4<Real> a = r * spin_flip<Real>() * r.conjugate();
    Eigen::JacobiSVD<Mat4<Real>> svd(a);
    const auto s = svd.singularValues();  // descending
    const Real c = s[0] - s[1] - s[2] - s[3];
    return std::clamp(c, Real(0), Real(1));
}

/// Wootters concurrence from the eigenvalues of zeta by a general (non-Hermitian)
/// eigensolver. Accurate to ~1e-8 near degenerate spectra.
template <typename Derived>
typename Derived::RealScalar concurrence_wootters_eigen(const Eigen::MatrixBase<Derived>& rho) {
    using Real = typename Derived::RealScalar;
    if (rho.rows() != 4 || rho.cols() != 4) throw DomainError("concurrence: need a 4x4 matrix");
    require_density(rho, "concurrence");
    const Mat4<Real> m = rho;
    const Mat4<Real> s = spin_flip<Real>();
    const Mat4<Real> zeta = m * s * m.conjugate() * s;
    Eigen::ComplexEigenSolver<Mat4<Real>> es(zeta, false);
    std::array<Real, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        const auto v = es.eigenvalues()[i];
        Real re = v.real();
        if (re < Real(-1e-12)) throw DomainError("zeta has a negative eigenvalue");
        lam[i] = std::sqrt(std::max(re, Real(0)));
    }
    std::sort(lam.begin(), lam.end(), std::greater<Real>());
    return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], Real(0), Real(1));
}

/// Reduced density matrix of two of the four two-level factors of a pure state
/// psi[8 i0 + 4 i1 + 2 i2 + i3]; result indexed 2 x_a + x_b.
template <typename Derived>
auto reduce_pure_state(const Eigen::MatrixBase<Derived>& psi, int a, int b) {
    using Scalar = typename Derived::Scalar;
    using Real = typename Derived::RealScalar;
    if (psi.size() != 16) throw DomainError("reduce_pure_state: need a 16-component vector");
    if (a < 0 || a > 3 || b < 0 || b > 3 || a == b)
        throw DomainError("reduce_pure_state: need two distinct factors in 0..3");
    std::array<int, 2> rest{};
    int k = 0;
    for (int f = 0; f < 4; ++f)
        if (f != a && f != b) rest[k++] = f;
    auto index = [](int f, int bit) { return bit << (3 - f); };
    Mat4<Real> out = Mat4<Real>::Zero();
    for (int xa = 0; xa < 2; ++xa)
        for (int xb = 0; xb < 2; ++xb)
            for (int ya = 0; ya < 2; ++ya)
                for (int yb = 0; yb < 2; ++yb) {
                    Scalar sum(0);
                    for (int r0 = 0; r0 < 2; ++r0)
                        for (int r1 = 0; r1 < 2; ++r1) {
                            const int env = index(rest[0], r0) + index(rest[1], r1);
                            const int i = index(a, xa) + index(b, xb) + env;
                            const int j = index(a, ya) + index(b, yb) + env;
                            sum += psi[i] * std::conj(psi[j]);
                        }
                    out(2 * xa + xb, 2 * ya + yb) = sum;
                }
    return out;
}

} // namespace qtrap
