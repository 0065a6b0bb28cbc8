#pragma once

// Effective avalanche principle machinery: singular gaps, expansion rifts,
// projective angles, the a (+) b algebra, and a verifier that checks the
// hypotheses (G), (A) and conclusions (i), (ii) on concrete chains.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mat2.hpp"
#include "rng.hpp"

namespace skewlyap {

// Dense d x d matrix, row-major. d stays tiny (2 in the application), so
// no attempt at blocking or expression templates.
struct MatD {
    int d = 0;
    std::vector<double> a;

    MatD() = default;
    explicit MatD(int dim) : d(dim), a((std::size_t)dim * dim, 0.0) {}
    static MatD identity(int dim) {
        MatD m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }
    static MatD from_mat2(const Mat2& m) {
        MatD r(2);
        r(0, 0) = m.a; r(0, 1) = m.b; r(1, 0) = m.c; r(1, 1) = m.d;
        return r;
    }

    double& operator()(int i, int j) { return a[(std::size_t)i * d + j]; }
    double operator()(int i, int j) const { return a[(std::size_t)i * d + j]; }

    friend MatD operator*(const MatD& x, const MatD& y) {
        MatD r(x.d);
        for (int i = 0; i < x.d; ++i)
            for (int k = 0; k < x.d; ++k) {
                double v = x(i, k);
                for (int j = 0; j < x.d; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    MatD transpose() const {
        MatD r(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (double v : a) m = std::max(m, std::fabs(v));
        return m;
    }
    void scale(double s) {
        for (double& v : a) v *= s;
    }
};

struct SVD {
    std::vector<double> s;           // descending
    std::vector<std::vector<double>> u; // left singular vectors, u[k]
    std::vector<std::vector<double>> v; // right singular vectors, v[k]
};

namespace detail {

inline void canonical_sign(std::vector<double>& x) {
    for (double c : x) {
        if (c > 0) return;
        if (c < 0) {
            for (double& y : x) y = -y;
            return;
        }
    }
}

} // namespace detail

// One-sided Jacobi on columns; d = 2 needs a single exact rotation, larger
// d a few sweeps. Adequate for the small dimensions the AP chains use.
inline SVD svd(const MatD& m) {
    const int d = m.d;
    MatD b = m;                 // columns will become u_k s_k
    MatD v = MatD::identity(d); // accumulated right rotations
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int p = 0; p < d - 1; ++p)
            for (int q = p + 1; q < d; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (int i = 0; i < d; ++i) {
                    app += b(i, p) * b(i, p);
                    aqq += b(i, q) * b(i, q);
                    apq += b(i, p) * b(i, q);
                }
                off = std::max(off, std::fabs(apq) / std::sqrt(app * aqq + 1e-300));
                if (apq == 0) continue;
                double zeta = (aqq - app) / (2 * apq);
                double t = (zeta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(zeta) + std::sqrt(1 + zeta * zeta));
                double c = 1 / std::sqrt(1 + t * t), s = c * t;
                for (int i = 0; i < d; ++i) {
                    double bp = b(i, p), bq = b(i, q);
                    b(i, p) = c * bp - s * bq;
                    b(i, q) = s * bp + c * bq;
                    double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        if (off < 1e-15) break;
    }
    SVD out;
    std::vector<int> order(d);
    std::vector<double> norms(d);
    for (int k = 0; k < d; ++k) {
        double n2 = 0;
        for (int i = 0; i < d; ++i) n2 += b(i, k) * b(i, k);
        norms[k] = std::sqrt(n2);
        order[k] = k;
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) { return norms[x] > norms[y]; });
    for (int k : order) {
        out.s.push_back(norms[k]);
        std::vector<double> uk(d), vk(d);
        for (int i = 0; i < d; ++i) {
            uk[i] = norms[k] > 0 ? b(i, k) / norms[k] : (i == k ? 1.0 : 0.0);
            vk[i] = v(i, k);
        }
        detail::canonical_sign(uk);
        detail::canonical_sign(vk);
        out.u.push_back(std::move(uk));
        out.v.push_back(std::move(vk));
    }
    return out;
}

inline double spectral_norm(const MatD& m) { return svd(m).s[0]; }

// gr(g) = s1/s2
inline double gap_ratio(const MatD& g) {
    auto dec = svd(g);
    double sd = dec.s.back();
    if (!(sd > 0) || !std::isfinite(sd)) throw std::domain_error("gap_ratio: singular matrix");
    return dec.s[0] / dec.s[1];
}

// Most expanding input direction v(g) and output direction v*(g) = v(g^T).
inline std::vector<double> most_expanding_dir(const MatD& g) { return svd(g).v[0]; }
inline std::vector<double> most_expanding_dir_out(const MatD& g) { return svd(g).u[0]; }

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}
inline double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

// delta(x^, y^) = sin of the angle between lines; alpha = |cos|.
inline double projective_distance(const std::vector<double>& x, const std::vector<double>& y) {
    double nx = norm2(x), ny = norm2(y);
    if (nx == 0 || ny == 0) throw std::invalid_argument("projective_distance: zero vector");
    if (x.size() == 2) {
        return std::fabs(x[0] * y[1] - x[1] * y[0]) / (nx * ny);
    }
    double c = dot(x, y) / (nx * ny);
    double s2 = std::max(0.0, 1 - c * c);
    return std::sqrt(s2);
}

inline double projective_alpha(const std::vector<double>& x, const std::vector<double>& y) {
    double nx = norm2(x), ny = norm2(y);
    if (nx == 0 || ny == 0) throw std::invalid_argument("projective_alpha: zero vector");
    return std::fabs(dot(x, y)) / (nx * ny);
}

inline double oplus(double a, double b) { return a + b - a * b; }

// rho(g, g') = ||g' g|| / (||g'|| ||g||)
inline double rho_pair(const MatD& g, const MatD& gp) {
    return spectral_norm(gp * g) / (spectral_norm(g) * spectral_norm(gp));
}

struct Angles {
    double alpha, beta;
};

// Lower and upper angles of a pair; rejects gap ratio 1 where the most
// expanding direction is undefined.
inline Angles angles(const MatD& g, const MatD& gp) {
    double grg = gap_ratio(g), grp = gap_ratio(gp);
    if (!(grg > 1) || !(grp > 1))
        throw std::domain_error("angles: gap ratio must exceed 1");
    double al = projective_alpha(most_expanding_dir_out(g), most_expanding_dir(gp));
    double be = std::sqrt(oplus(oplus(1 / (grg * grg), al * al), 1 / (grp * grp)));
    return {al, be};
}

struct APParams {
    double eps;
    double kappa;

    static APParams make(double eps, double kappa) {
        if (!(eps > 0 && eps <= 0.1))
            throw std::invalid_argument("APParams: need 0 < eps <= 1/10");
        if (!(kappa > 0 && kappa <= eps * eps / 10))
            throw std::invalid_argument("APParams: need 0 < kappa <= eps^2/10");
        return {eps, kappa};
    }
};

using MatrixChain = std::vector<MatD>;

// Product g^n = g_{n-1} ... g_0 with max-abs renormalization; returns the
// normalized matrix and log of the scale.
inline std::pair<MatD, double> scaled_chain_product(const MatrixChain& chain, std::size_t upto) {
    MatD prod = MatD::identity(chain.front().d);
    double log_scale = 0;
    for (std::size_t j = 0; j < upto; ++j) {
        prod = chain[j] * prod;
        double s = prod.max_abs();
        if (s > 0x1p30 || s < 0x1p-30) {
            prod.scale(1 / s);
            log_scale += std::log(s);
        }
    }
    return {prod, log_scale};
}

// log rho(g_0, ..., g_{n-1}) computed stably as log||prod|| - sum log||g_i||.
inline double log_expansion_rift(const MatrixChain& chain) {
    if (chain.empty()) throw std::invalid_argument("expansion_rift: empty chain");
    auto [prod, log_scale] = scaled_chain_product(chain, chain.size());
    double lr = log_scale + std::log(spectral_norm(prod));
    for (const auto& g : chain) lr -= std::log(spectral_norm(g));
    return lr;
}

inline double expansion_rift(const MatrixChain& chain) { return std::exp(log_expansion_rift(chain)); }

struct APReport {
    bool hypotheses_ok = false;
    int first_failing_index = -1;   // -1 when hypotheses hold
    std::string failed_hypothesis;  // "G" or "A"
    double delta_in = 0;            // delta(v(g^n), v(g_0))
    double delta_out = 0;           // delta(v*(g^n), v*(g_{n-1}))
    double bound_i = 0;             // 3 kappa / eps
    double log_ratio = 0;           // log of the rift ratio in (ii)
    double log_lower = 0, log_upper = 0;
    bool conclusion_i = false, conclusion_ii = false;
};

inline APReport ap_verify(const MatrixChain& chain, const APParams& p) {
    if (chain.empty()) throw std::invalid_argument("ap_verify: empty chain");
    APReport rep;
    const std::size_t n = chain.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (gap_ratio(chain[i]) < 1 / p.kappa) {
            rep.first_failing_index = (int)i;
            rep.failed_hypothesis = "G";
            return rep;
        }
    }
    std::vector<double> log_rho_pairs;
    for (std::size_t j = 1; j < n; ++j) {
        double r = rho_pair(chain[j - 1], chain[j]);
        if (r < p.eps) {
            rep.first_failing_index = (int)j;
            rep.failed_hypothesis = "A";
            return rep;
        }
        log_rho_pairs.push_back(std::log(r));
    }
    rep.hypotheses_ok = true;

    auto [prod, log_scale] = scaled_chain_product(chain, n);
    rep.delta_in = projective_distance(most_expanding_dir(prod), most_expanding_dir(chain.front()));
    rep.delta_out =
        projective_distance(most_expanding_dir_out(prod), most_expanding_dir_out(chain.back()));
    rep.bound_i = 3 * p.kappa / p.eps;
    rep.conclusion_i = std::max(rep.delta_in, rep.delta_out) <= rep.bound_i;

    double log_rift = log_scale + std::log(spectral_norm(prod));
    for (const auto& g : chain) log_rift -= std::log(spectral_norm(g));
    rep.log_ratio = log_rift;
    for (double lr : log_rho_pairs) rep.log_ratio -= lr;
    double nk = (double)n * p.kappa / (p.eps * p.eps);
    rep.log_lower = -5 * nk;
    rep.log_upper = 11 * nk;
    rep.conclusion_ii = rep.log_ratio >= rep.log_lower && rep.log_ratio <= rep.log_upper;
    return rep;
}

struct SandwichReport {
    double alpha, growth, upper;
    bool ok;
};

// Sandwich check: the normalized growth ||g x|| / (||x|| ||g||) sits
// between alpha(x^, v(g)^) and sqrt(alpha^2 (+) gr^-2).
inline SandwichReport ap_lemma22_check(const MatD& g, const std::vector<double>& x) {
    double gr = gap_ratio(g);
    if (!(gr > 1)) throw std::domain_error("ap_lemma22_check: need gr > 1");
    double nx = norm2(x);
    if (nx == 0) throw std::invalid_argument("ap_lemma22_check: zero vector");
    double al = projective_alpha(x, most_expanding_dir(g));
    std::vector<double> gx((std::size_t)g.d, 0.0);
    for (int i = 0; i < g.d; ++i)
        for (int j = 0; j < g.d; ++j) gx[(std::size_t)i] += g(i, j) * x[(std::size_t)j];
    double growth = norm2(gx) / nx / spectral_norm(g);
    double upper = std::sqrt(oplus(al * al, 1 / (gr * gr)));
    const double tol = 1e-12;
    return {al, growth, upper, al - tol <= growth && growth <= upper + tol};
}

inline MatD rotation2(double theta) {
    MatD r(2);
    r(0, 0) = std::cos(theta); r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta); r(1, 1) = std::cos(theta);
    return r;
}

// g = R(phi) diag(s, 1/s) R(psi): gr = s^2, v(g) = R(-psi) e1, v*(g) = R(phi) e1.
inline MatD rot_diag_rot(double phi, double s, double psi) {
    MatD d(2);
    d(0, 0) = s;
    d(1, 1) = 1 / s;
    return rotation2(phi) * (d * rotation2(psi));
}

// Admissible chains by construction: every gap ratio >= kappa^-1 and every
// consecutive lower angle >= eps (whence (A) via alpha <= rho). Rejection
// sampling would be hopeless for small eps, so the angles are drawn
// directly from the allowed set.
inline MatrixChain make_admissible_chain(std::uint64_t seed, std::size_t n, const APParams& p) {
    SplitMix64 rng(seed);
    MatrixChain chain;
    chain.reserve(n);
    double phi_prev = 0;
    const double margin = 1e-6;
    for (std::size_t j = 0; j < n; ++j) {
        double s = std::sqrt(1 / p.kappa) * std::exp(rng.uniform(1e-3, 0.5));
        double phi = rng.uniform(0.0, 2 * 3.14159265358979323846);
        double psi;
        if (j == 0) {
            psi = rng.uniform(0.0, 2 * 3.14159265358979323846);
        } else {
            // need |cos(phi_prev + psi)| >= eps (1 + margin)
            double amax = std::acos(std::min(1.0, p.eps * (1 + margin)));
            double theta = rng.uniform(-amax, amax) + (rng.next() & 1 ? 3.14159265358979323846 : 0.0);
            psi = theta - phi_prev;
        }
        chain.push_back(rot_diag_rot(phi, s, psi));
        phi_prev = phi;
    }
    return chain;
}

} // namespace skewlyap
