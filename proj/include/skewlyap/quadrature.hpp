#pragma once

// Adaptive Simpson quadrature for the closed-interval integrals of the
// harmonic-analysis checks. The integrands there are smooth once split at
// their known kink points, so plain Simpson with recursion is enough.

#include <cmath>
#include <functional>

namespace skewlyap {

namespace detail {

template <class F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6 * (fa + 4 * fm + fb);
}

template <class F>
double adapt(const F& f, double a, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, m, fa, flm, fm);
    double right = simpson(f, m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15 * tol) return left + right + delta / 15;
    return adapt(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace detail

template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-12, int max_depth = 40) {
    if (a == b) return 0;
    double m = (a + b) / 2;
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Trapezoidal rule on one period; geometrically convergent for smooth
// periodic integrands like the Poisson kernel.
template <class F>
double integrate_periodic(const F& f, int n = 4096) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += f((double)i / n);
    return s / n;
}

} // namespace skewlyap
