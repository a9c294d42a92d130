#include "qtrap/quadrature.hpp"

#include "qtrap/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace qtrap::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
using G30 = boost::math::quadrature::gauss<double, 30>;

constexpr std::size_t kMaxPanels = 20000;

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    double l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One 61-point Kronrod panel with the embedded 30-point Gauss rule as error estimate.
template <class T, class F>
Panel<T> panel(const F& f, double a, double b) {
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G30::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T k = fc * wk[0];
    T g = T(0);
    double l1 = std::abs(fc) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const T fp = f(c + h * x[i]);
        const T fm = f(c - h * x[i]);
        k += (fp + fm) * wk[i];
        l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
        if (i % 2 == 1) g += (fp + fm) * wg[i / 2];
    }
    const double err = std::max(std::abs(k - g), 4.0 * std::numeric_limits<double>::epsilon() * l1);
    return {a, b, h * k, std::abs(h) * err, std::abs(h) * l1};
}

template <class T, class F>
Result<T> adaptive(const F& f, double a, double b, double rel_tol, double abs_tol) {
    std::priority_queue<Panel<T>> heap;
    Panel<T> first = panel<T>(f, a, b);
    T value = first.value;
    double error = first.error;
    double l1 = first.l1;
    heap.push(first);
    std::size_t panels = 1;
    auto done = [&] { return error <= std::max(abs_tol, rel_tol * l1); };
    while (!done()) {
        if (panels >= kMaxPanels) {
            std::ostringstream os;
            os.precision(17);
            os << "quadrature on [" << a << ", " << b << "] did not converge: error estimate "
               << error << " > " << std::max(abs_tol, rel_tol * l1);
            throw NumericError(os.str(), error);
        }
        const Panel<T> worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel<T> left = panel<T>(f, worst.a, mid);
        const Panel<T> right = panel<T>(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
        ++panels;
        if (error < 0.0) {
            // drift from incremental updates; recompute
            error = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {value, error};
}

template <class T, class Fn>
Result<T> dispatch(const Fn& f, double a, double b, double rel_tol, double abs_tol) {
    if (!(a <= b)) throw DomainError("quadrature: need a <= b");
    if (a == b) return {T(0), 0.0};
    if (std::isinf(b)) {
        // x = a + t / (1 - t)
        auto g = [&](double t) -> T {
            const double u = 1.0 - t;
            return f(a + t / u) / (u * u);
        };
        return adaptive<T>(g, 0.0, 1.0, rel_tol, abs_tol);
    }
    return adaptive<T>(f, a, b, rel_tol, abs_tol);
}

} // namespace

Result<cplx> integrate(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                       double abs_tol) {
    return dispatch<cplx>(f, a, b, rel_tol, abs_tol);
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double rel_tol, double abs_tol) {
    return dispatch<double>(f, a, b, rel_tol, abs_tol).value;
}

} // namespace qtrap::quad
