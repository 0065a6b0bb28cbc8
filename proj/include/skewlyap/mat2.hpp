#pragma once

// 2x2 real matrices with the closed-form singular value decomposition.
// The operator norm used throughout is the exact spectral norm s1, never
// the Frobenius surrogate.

#include <cmath>
#include <utility>

namespace skewlyap {

template <class T>
struct Mat2T {
    T a = 1, b = 0, c = 0, d = 1; // [[a, b], [c, d]]

    friend Mat2T operator*(const Mat2T& x, const Mat2T& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2T operator*(T s, const Mat2T& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

    Mat2T transpose() const { return {a, c, b, d}; }
    T det() const { return a * d - b * c; }

    T max_abs() const {
        using std::fabs;
        T m = fabs(a);
        if (fabs(b) > m) m = fabs(b);
        if (fabs(c) > m) m = fabs(c);
        if (fabs(d) > m) m = fabs(d);
        return m;
    }
};

using Mat2 = Mat2T<double>;

// Singular values via the rotation-invariant closed form:
//   s1 = q + r,  s2 = |q - r|  with q = hypot((a+d)/2, (c-b)/2),
//   r = hypot((a-d)/2, (b+c)/2).
template <class T>
inline std::pair<T, T> singular_values(const Mat2T<T>& m) {
    using std::hypot;
    using std::fabs;
    T q = hypot((m.a + m.d) / 2, (m.c - m.b) / 2);
    T r = hypot((m.a - m.d) / 2, (m.b + m.c) / 2);
    return {q + r, fabs(q - r)};
}

template <class T>
inline T spectral_norm(const Mat2T<T>& m) {
    return singular_values(m).first;
}

// Unit eigenvector of the symmetric matrix [[p, q], [q, r]] for its larger
// eigenvalue; sign fixed by first nonzero coordinate positive.
inline std::pair<double, double> top_eigvec_sym(double p, double q, double r) {
    double tr = p + r;
    double disc = std::hypot(p - r, 2 * q);
    double lam = (tr + disc) / 2;
    // pick the better-conditioned of the two row equations
    double vx, vy;
    if (std::fabs(p - lam) > std::fabs(r - lam)) {
        vx = q;
        vy = lam - p;
    } else {
        vx = lam - r;
        vy = q;
    }
    double n = std::hypot(vx, vy);
    if (n == 0) { vx = 1; vy = 0; n = 1; } // isotropic: any direction
    vx /= n; vy /= n;
    if (vx < 0 || (vx == 0 && vy < 0)) { vx = -vx; vy = -vy; }
    return {vx, vy};
}

// Most expanding input direction of m: top eigenvector of m^T m.
inline std::pair<double, double> most_expanding(const Mat2& m) {
    return top_eigvec_sym(m.a * m.a + m.c * m.c, m.a * m.b + m.c * m.d,
                          m.b * m.b + m.d * m.d);
}

} // namespace skewlyap
