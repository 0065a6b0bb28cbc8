#pragma once

// Skew-shift Schrodinger cocycle: one-step SL2 matrices over exact torus
// phases, renormalized ordered products, and the regularized complex
// matrix used for the pole-free boundary identities.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "frac128.hpp"
#include "mat2.hpp"

namespace skewlyap {

struct CocycleParams {
    double lambda;
    double E;
    Frac128 omega;

    static CocycleParams make(double lambda, double E) {
        if (!(lambda >= 0.5 && lambda <= 1.0))
            throw std::invalid_argument("CocycleParams: lambda must lie in [1/2, 1]");
        double band = 2 + 2 * lambda;
        if (!(E >= -band && E <= band))
            throw std::invalid_argument("CocycleParams: E outside [-2-2l, 2+2l]");
        return {lambda, E, golden_ratio_frac()};
    }
};

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

// [[E - 2 lambda cos(2 pi x), -1], [1, 0]]
inline Mat2 one_step_matrix(const CocycleParams& p, Frac128 phase_x) {
    double pot = p.E - 2 * p.lambda * std::cos(two_pi * phase_x.to_double());
    return {pot, -1.0, 1.0, 0.0};
}

// A renormalized product: represented value = exp(log_scale) * m, with the
// 2x2 factor kept at max-abs entry in [1/2, 2] after each rescale.
struct ScaledMatrix {
    Mat2 m;
    double log_scale = 0;

    double log_spectral_norm() const { return log_scale + std::log(spectral_norm(m)); }
    double log_det_abs() const { return 2 * log_scale + std::log(std::fabs(m.det())); }

    void renormalize() {
        double s = m.max_abs();
        if (s <= 0) throw std::domain_error("ScaledMatrix: zero matrix");
        m = (1.0 / s) * m;
        log_scale += std::log(s);
    }

    void maybe_renormalize() {
        double s = m.max_abs();
        if (s > 0x1p30 || s < 0x1p-30) renormalize();
    }
};

enum class Accumulation { plain, double_double };

// Ordered product M_n = M(T^n) ... M(T^1); n = 0 gives the identity.
// The double-double mode keeps the log-scale sum to ~1e-30, used as the
// oracle path for long products.
inline ScaledMatrix transfer_product(const CocycleParams& p, Frac128 x, Frac128 y,
                                     std::uint64_t n,
                                     Accumulation acc = Accumulation::plain) {
    ScaledMatrix out;
    double comp = 0; // Kahan-style compensation in double_double mode
    for (std::uint64_t j = 0; j < n; ++j) {
        skew_step(x, y, p.omega); // arrive at T^{j+1}(x,y)
        out.m = one_step_matrix(p, x) * out.m;
        double s = out.m.max_abs();
        if (s > 0x1p30 || s < 0x1p-30) {
            out.m = (1.0 / s) * out.m;
            double term = std::log(s);
            if (acc == Accumulation::double_double) {
                double t = out.log_scale + term;
                if (std::fabs(out.log_scale) >= std::fabs(term))
                    comp += (out.log_scale - t) + term;
                else
                    comp += (term - t) + out.log_scale;
                out.log_scale = t;
            } else {
                out.log_scale += term;
            }
        }
    }
    out.log_scale += comp;
    return out;
}

// u_n = (1/n) log ||M_n||
inline double u_n(const CocycleParams& p, Frac128 x, Frac128 y, std::uint64_t n,
                  Accumulation acc = Accumulation::plain) {
    if (n < 1) throw std::invalid_argument("u_n: n must be >= 1");
    return transfer_product(p, x, y, n, acc).log_spectral_norm() / (double)n;
}

using cplx = std::complex<double>;

struct CMat2 {
    cplx a, b, c, d;

    friend CMat2 operator*(const CMat2& x, const CMat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    CMat2& scale(double s) { a *= s; b *= s; c *= s; d *= s; return *this; }
    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
};

// Spectral norm of a complex 2x2 matrix: sqrt of the top eigenvalue of A*A.
inline double spectral_norm(const CMat2& m) {
    double p = std::norm(m.a) + std::norm(m.c);
    double r = std::norm(m.b) + std::norm(m.d);
    cplx q = std::conj(m.a) * m.b + std::conj(m.c) * m.d;
    double tr = p + r;
    double disc = std::sqrt((p - r) * (p - r) + 4 * std::norm(q));
    return std::sqrt((tr + disc) / 2);
}

// The regularized one-step matrix  [[E z w - l z^2 w^2 a - l conj(a), -z w], [z w, 0]].
inline CMat2 regularized_matrix_A(double lambda, double E, cplx z, cplx w, cplx a) {
    if (std::abs(std::abs(a) - 1.0) > 1e-12)
        throw std::invalid_argument("regularized_matrix_A: |a| must be 1");
    cplx zw = z * w;
    return {E * zw - lambda * z * z * w * w * a - lambda * std::conj(a), -zw, zw, {0, 0}};
}

// v_n(z, w) = (1/n) log || prod_j A(E, z, w^j, a^{j(j-1)}) ||  with a = e^{pi i omega}.
// The quadratic exponent j(j-1) is even, so a^{j(j-1)} = e(omega j(j-1)/2) reduces
// exactly in the 128-bit ring.
inline double v_n_regularized(const CocycleParams& p, cplx z, cplx w, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("v_n_regularized: n must be >= 1");
    CMat2 prod{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
    double log_scale = 0;
    cplx wj = 1;
    for (std::uint64_t j = 1; j <= n; ++j) {
        wj *= w;
        u128 tri = (j % 2 == 0) ? (u128)(j / 2) * (j - 1) : (u128)j * ((j - 1) / 2);
        double ang = two_pi * Frac128{tri * p.omega.v}.to_double();
        cplx a{std::cos(ang), std::sin(ang)};
        prod = regularized_matrix_A(p.lambda, p.E, z, wj, a) * prod;
        double s = prod.max_abs();
        if (s > 0x1p30 || (s < 0x1p-30 && s > 0)) {
            prod.scale(1.0 / s);
            log_scale += std::log(s);
        }
    }
    return (log_scale + std::log(spectral_norm(prod))) / (double)n;
}

} // namespace skewlyap
