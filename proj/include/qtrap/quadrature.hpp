#pragma once

#include <complex>
#include <functional>

namespace qtrap::quad {

using cplx = std::complex<double>;

template <class T>
struct Result {
    T value;
    double error;
};

/// Globally adaptive 61-point Gauss-Kronrod on [a, b]; b may be +infinity.
/// Stops when the summed error estimate is below max(abs_tol, rel_tol * int|f|);
/// throws NumericError when the panel budget is exhausted first.
Result<cplx> integrate(const std::function<cplx(double)>& f, double a, double b,
                       double rel_tol = 1e-12, double abs_tol = 0.0);

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double rel_tol = 1e-12, double abs_tol = 0.0);

} // namespace qtrap::quad
