#pragma once

// The explicit constants attached to the Riesz representation on nested
// disks D_R2 < D_R1 < D_R, the exponential-integrability constants, the
// Fourier-decay constant, and the Herman-regularization bounds. Everything
// is a pure function of (R, R1, R2, lambda, n) and instantiates for plain
// double (estimation paths) or Interval (certified paths).

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "interval.hpp"

namespace skewlyap {

struct Radii {
    double R, R1, R2;

    void validate() const {
        if (!(1 < R2 && R2 < R1 && R1 < R))
            throw std::invalid_argument("Radii: need 1 < R2 < R1 < R");
    }
};

namespace detail {

// B0 has a two-case branch on the sign of R^2 - R1^2 - R; the boundary
// itself is rejected at the Radii level before this is called.
template <class T>
T b0_impl(T R, T R1, T R2, bool log_r_branch) {
    T pref = num::from_int<T>(1) / (num::from_int<T>(2) * num::log(R / R1));
    T harn = (R1 + R2) / (R1 - R2);
    T tail = log_r_branch ? num::log(R)
                          : num::log(R * R / (R * R - R1 * R1));
    return pref * harn * tail;
}

} // namespace detail

template <class T>
struct ConstantsT {
    T B0, B1, B2, B3, C, C0;
};

// Branch selection happens once, in double, on validated radii; the paper
// never evaluates at the undefined boundary R^2 - R1^2 = R.
inline bool b0_branch_is_log_r(const Radii& r) {
    double gap = r.R * r.R - r.R1 * r.R1;
    if (gap == r.R)
        throw std::domain_error("b0: branch boundary R^2 - R1^2 = R is undefined");
    return gap > r.R;
}

// Radii in this artifact are small integers (the paper works at (4,3,2)),
// but the general real case must also evaluate; promote through exact
// integers when the doubles are integral, else through the double value.
template <class T>
T lift(double v) {
    if (v == (long)v) return num::from_int<T>((long)v);
    return T(v);
}
template <>
inline double lift<double>(double v) { return v; }

template <class T>
T b0(const Radii& rd) {
    rd.validate();
    bool branch = b0_branch_is_log_r(rd);
    return detail::b0_impl(lift<T>(rd.R), lift<T>(rd.R1), lift<T>(rd.R2), branch);
}

template <class T>
ConstantsT<T> make_constants(const Radii& rd) {
    rd.validate();
    bool branch = b0_branch_is_log_r(rd);
    T R = lift<T>(rd.R), R1 = lift<T>(rd.R1), R2 = lift<T>(rd.R2);
    T one = num::from_int<T>(1);
    ConstantsT<T> c;
    c.B0 = detail::b0_impl(R, R1, R2, branch);
    T R2sq = R2 * R2;
    c.B1 = c.B0 * num::from_int<T>(8) * R2 / (R2sq - one);
    T surd = num::sqrt(R2sq * R2sq + num::from_int<T>(34) * R2sq + one);
    T inner = num::from_int<T>(16) * R2sq - (surd - one - R2sq) * (surd - one - R2sq);
    c.B2 = c.B0 * num::from_int<T>(16) * num::pi<T>() * (R2sq - one) * num::sqrt(inner) /
           ((num::from_int<T>(3) * R2sq + num::from_int<T>(3) - surd) *
            (num::from_int<T>(3) * R2sq + num::from_int<T>(3) - surd));
    T logRR1 = num::log(R / R1);
    c.B3 = num::sqrt(num::from_int<T>(5) * c.B2 + num::from_int<T>(10) * num::pi<T>() / logRR1);
    c.C = one / (num::from_int<T>(2) * logRR1) + c.B1 / (num::from_int<T>(2) * num::pi<T>());
    c.C0 = num::from_int<T>(2) * num::sqrt(num::from_int<T>(2)) *
           num::exp(num::pi<T>() * (num::from_ratio<T>(17, 144) +
                                    c.B1 / (num::from_int<T>(16) * c.B3 * c.B3)));
    return c;
}

using Constants = ConstantsT<double>;

inline double b0(const Radii& rd) { return b0<double>(rd); }
inline double b1(const Radii& rd) { return make_constants<double>(rd).B1; }
inline double b2(const Radii& rd) { return make_constants<double>(rd).B2; }
inline double b3(const Radii& rd) { return make_constants<double>(rd).B3; }
inline double c_fourier(const Radii& rd) { return make_constants<double>(rd).C; }
inline double c0_exp(const Radii& rd) { return make_constants<double>(rd).C0; }

// U(lambda, R3), the uniform bound on the regularized cocycle logs.
template <class T>
T u_lambda(T lam, T R3) {
    T one = num::from_int<T>(1);
    T two = num::from_int<T>(2);
    T invR3 = one / (R3 * R3);
    T base = lam * (one + invR3) * (one + invR3) + two / R3;
    return num::log(base * base + two * invR3) / two;
}

inline double u_lambda(double lam, double R3) {
    if (lam <= 0) throw std::invalid_argument("u_lambda: lambda must be positive");
    if (R3 < 1) throw std::invalid_argument("u_lambda: R3 must be >= 1");
    return u_lambda<double>(lam, R3);
}

// B4 - m4 = 2 log R + U(lambda, R) - log lambda
template <class T>
T b4m4(T lam, T R) {
    return num::from_int<T>(2) * num::log(R) + u_lambda<T>(lam, R) - num::log(lam);
}
inline double b4m4(double lam, double R) {
    if (lam <= 0 || R <= 1) throw std::invalid_argument("b4m4: need lambda > 0, R > 1");
    return b4m4<double>(lam, R);
}

// B5^(n) - m5^(n) = (n+1) log R + U(lambda, R) - log lambda
template <class T>
T b5m5(long n, T lam, T R) {
    return num::from_int<T>(n + 1) * num::log(R) + u_lambda<T>(lam, R) - num::log(lam);
}
inline double b5m5(long n, double lam, double R) {
    if (n < 1) throw std::invalid_argument("b5m5: need n >= 1");
    return b5m5<double>(n, lam, R);
}

struct DeviationDeltas {
    double delta0;   // (9/2) e0 + 2 B3 sqrt(e1 (B-m))
    double delta0_1; // (9/2) e0 + 2 B3 sqrt(e1^r (B4-m4))
    double delta0_2; // (9/2) e3 + 4 B3 sqrt(B6) sqrt(e1^(1-r) (B5-m5))
};

inline DeviationDeltas deviation_deltas(double e0, double e1, double e3, double bm_first,
                                        double bm_second, double b6, double r,
                                        const Radii& rd) {
    if (e0 < 0 || e1 < 0 || e3 < 0)
        throw std::invalid_argument("deviation_deltas: epsilons must be nonnegative");
    if (bm_first <= 0 || bm_second <= 0)
        throw std::invalid_argument("deviation_deltas: B - m must be positive");
    double B3 = b3(rd);
    DeviationDeltas d;
    d.delta0 = 4.5 * e0 + 2 * B3 * std::sqrt(e1 * bm_first);
    d.delta0_1 = 4.5 * e0 + 2 * B3 * std::sqrt(std::pow(e1, r) * bm_first);
    d.delta0_2 = 4.5 * e3 + 4 * B3 * std::sqrt(b6) * std::sqrt(std::pow(e1, 1 - r) * bm_second);
    return d;
}

struct EpsSmallReport {
    bool pass;
    Interval margin; // B3^2 - 289 (B0 + 13/(20 log(R/R1)))
};

// The structural smallness condition: certified with outward rounding, pass
// iff the margin's lower endpoint is strictly positive.
inline EpsSmallReport check_eps_small(const Radii& rd) {
    auto c = make_constants<Interval>(rd);
    Interval logRR1 = i_log(lift<Interval>(rd.R) / lift<Interval>(rd.R1));
    Interval lhs = Interval(289l) *
                   (c.B0 + Interval(Rational(13)) / (Interval(20l) * logRR1));
    Interval margin = c.B3 * c.B3 - lhs;
    return {margin.is_positive(), margin};
}

} // namespace skewlyap
