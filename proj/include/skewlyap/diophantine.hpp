#pragma once

// Golden-ratio continued fraction facts, exponential sums with exactly
// reduced quadratic phases, the Weyl-differenced sums S1..S5, and divisor
// function bounds, all at desk scale against the closed-form bounds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "frac128.hpp"

namespace skewlyap {

struct ContinuedFraction {
    std::vector<std::uint64_t> partial_quotients; // a_1, a_2, ...
    std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents; // (p_n, q_n)
};

// Continued fraction of the exact rational v / 2^128 in (0,1), by Euclid.
// The first division has numerator 2^128, one past the u128 range, so it
// is taken as floor((2^128 - v)/v) + 1 with remainder (2^128 - v) mod v.
inline ContinuedFraction continued_fraction(Frac128 x, int depth) {
    if (x.v == 0) throw std::invalid_argument("continued_fraction: zero input");
    ContinuedFraction cf;
    u128 v = x.v;
    u128 quot = ((u128)0 - v) / v + 1;
    u128 prev_r = v;
    u128 cur_r = ((u128)0 - v) % v;
    std::uint64_t p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;
    for (int i = 0; i < depth; ++i) {
        cf.partial_quotients.push_back((std::uint64_t)quot);
        std::uint64_t p_next = (std::uint64_t)quot * p_cur + p_prev;
        std::uint64_t q_next = (std::uint64_t)quot * q_cur + q_prev;
        p_prev = p_cur; p_cur = p_next;
        q_prev = q_cur; q_cur = q_next;
        cf.convergents.emplace_back(p_cur, q_cur);
        if (cur_r == 0) break;
        quot = prev_r / cur_r;
        u128 next_r = prev_r % cur_r;
        prev_r = cur_r;
        cur_r = next_r;
    }
    return cf;
}

struct GoldSeparationReport {
    double sigma;
    std::vector<std::uint64_t> hits; // ell with ||ell w|| <= sigma, ascending
    bool min_ok;                     // smallest hit >= 1/(3 sigma)
    bool gap_ok;                     // consecutive gaps >= 1/(6 sigma)
};

inline GoldSeparationReport gold_separation(double sigma, Frac128 omega) {
    if (!(sigma > 0 && sigma < 0.5))
        throw std::invalid_argument("gold_separation: need 0 < sigma < 1/2");
    GoldSeparationReport rep{sigma, {}, true, true};
    std::uint64_t lmax = (std::uint64_t)std::ceil(10.0 / sigma);
    u128 thr = Frac128::from_double(sigma).v;
    for (std::uint64_t l = 1; l <= lmax; ++l) {
        if (torus_norm_raw(l, omega) <= thr) rep.hits.push_back(l);
    }
    double min_l = 1.0 / (3 * sigma), min_gap = 1.0 / (6 * sigma);
    if (!rep.hits.empty() && (double)rep.hits.front() < min_l) rep.min_ok = false;
    for (std::size_t i = 1; i < rep.hits.size(); ++i)
        if ((double)(rep.hits[i] - rep.hits[i - 1]) < min_gap) rep.gap_ok = false;
    return rep;
}

inline constexpr double pi_dioph = 3.14159265358979323846264338327950288;

// |sum_{k=1}^R e(k l w)| = |sin(pi R l w)| / |sin(pi l w)|, with both
// arguments reduced exactly in the 128-bit ring first. R*l must fit u64.
inline double exp_sum_magnitude_exact(std::uint64_t ell, std::uint64_t R, Frac128 omega) {
    double num = std::sin(pi_dioph * torus_norm(R * ell, omega));
    double den = std::sin(pi_dioph * torus_norm(ell, omega));
    return num / den;
}

struct ExpSumReport {
    double magnitude;
    double bound;
    bool ok;
};

// Full-angle mode checks |sum e(k l w)| <= min(R, 1/(2 ||l w||)); half mode
// checks |sum e(k l w / 2)| <= min(R, 1 / ||l w||).
inline ExpSumReport exp_sum(std::uint64_t ell, std::uint64_t R, bool half, Frac128 omega) {
    if (R < 1) throw std::invalid_argument("exp_sum: R >= 1");
    double norm = torus_norm(ell, omega);
    ExpSumReport rep{};
    if (!half) {
        rep.magnitude = exp_sum_magnitude_exact(ell, R, omega);
        rep.bound = std::min((double)R, 1 / (2 * norm));
    } else {
        std::complex<double> acc = 0;
        for (std::uint64_t k = 1; k <= R; ++k) {
            double ph = frac_half(k * ell, omega);
            acc += std::complex<double>(std::cos(2 * pi_dioph * ph), std::sin(2 * pi_dioph * ph));
        }
        rep.magnitude = std::abs(acc);
        rep.bound = std::min((double)R, 1 / norm);
    }
    rep.ok = rep.magnitude <= rep.bound * (1 + 1e-12) + 1e-12;
    return rep;
}

struct WeylS1Report {
    double measured, bound;
    bool ok;
};

// S1 = (1/K) sum_{1<=|l2|<=p2} |sum_k e(l2 k w)| / |l2|  vs  26 ln(K) ln(p2) / K.
inline WeylS1Report weyl_S1(std::uint64_t K, std::uint64_t p2, Frac128 omega) {
    if (K < 38 || p2 < K) throw std::invalid_argument("weyl_S1: need p2 >= K >= 38");
    double s = 0;
    for (std::uint64_t l = 1; l <= p2; ++l) {
        double mag = exp_sum_magnitude_exact(l, K, omega);
        s += 2 * mag / (double)l; // +l and -l give conjugate sums
    }
    s /= (double)K;
    double bound = 26 * std::log((double)K) / (double)K * std::log((double)p2);
    return {s, bound, s <= bound};
}

struct WeylS23Report {
    double s2, bound2;
    double s3, bound3;
    bool ok2, ok3;
};

// Quadratic-phase double sums at a supplied y. The k(k-1)/2 w phase is
// reduced in the exact 128-bit ring before any trigonometry.
inline WeylS23Report weyl_S2_S3(std::uint64_t K, std::uint64_t p1, std::uint64_t p2, Frac128 y,
                                Frac128 omega, std::uint64_t tau_star_p1K) {
    if (K < 38 || p2 < K) throw std::invalid_argument("weyl_S2_S3: need p2 >= K >= 38");
    if (p1 * K > 100000000ull) throw std::invalid_argument("weyl_S2_S3: p1*K above desk cap");

    // phases phi_k = k y + k(k-1)/2 w, exact
    std::vector<Frac128> base(K + 1);
    for (std::uint64_t k = 1; k <= K; ++k) {
        u128 tri = (k % 2 == 0) ? (u128)(k / 2) * (k - 1) : (u128)k * ((k - 1) / 2);
        base[k] = Frac128{(u128)k * y.v + tri * omega.v};
    }

    auto inner_sq_sum = [&](std::int64_t l2) {
        // sum over 1<=|l1|<=p1 of |sum_k e(l1 phi_k + l2 k w)|^2
        double tot = 0;
        for (std::uint64_t l1 = 1; l1 <= p1; ++l1) {
            std::complex<double> plus = 0, minus = 0;
            for (std::uint64_t k = 1; k <= K; ++k) {
                u128 ph = (u128)l1 * base[k].v;
                if (l2 >= 0)
                    ph += (u128)k * ((u128)(std::uint64_t)l2 * omega.v);
                else
                    ph -= (u128)k * ((u128)(std::uint64_t)(-l2) * omega.v);
                double t = Frac128{ph}.to_double() * 2 * pi_dioph;
                double c = std::cos(t), s = std::sin(t);
                plus += std::complex<double>(c, s);
                minus += std::complex<double>(c, -s); // l1 -> -l1 conjugates the phase
            }
            tot += std::norm(plus) + std::norm(minus);
        }
        return tot;
    };

    WeylS23Report rep{};
    rep.s2 = 2.0 / (double)K * std::sqrt(inner_sq_sum(0));
    double cstar = std::min((double)p1, (double)tau_star_p1K);
    rep.bound2 = 20 * std::sqrt(cstar) * std::sqrt((double)p1) / std::sqrt((double)K) *
                 std::sqrt(std::log((double)K));
    rep.ok2 = rep.s2 <= rep.bound2;

    double s3 = 0;
    for (std::uint64_t l2 = 1; l2 <= p2; ++l2) {
        double a = std::sqrt(inner_sq_sum((std::int64_t)l2));
        double b = std::sqrt(inner_sq_sum(-(std::int64_t)l2));
        s3 += (a + b) / (double)l2;
    }
    rep.s3 = s3 / (double)K;
    rep.bound3 = 25 * std::log((double)p2) * std::sqrt(cstar) * std::sqrt((double)p1) /
                 std::sqrt((double)K) * std::sqrt(std::log((double)K));
    rep.ok3 = rep.s3 <= rep.bound3;
    return rep;
}

struct WeylS45Report {
    double s4, s5;
    bool ok4, ok5;
};

// The small-divisor split of sum_{l <= p1 K} min(1, 1/(2K ||l w||)):
// S4 counts the near-resonances below 1/(2K), S5 the dyadic shells above.
inline WeylS45Report weyl_S4_S5(std::uint64_t K, std::uint64_t p1, Frac128 omega) {
    double s4 = 0, s5 = 0;
    for (std::uint64_t l = 1; l <= p1 * K; ++l) {
        double nrm = torus_norm(l, omega);
        double ratio = 2 * (double)K * nrm;
        if (ratio < 1) {
            s4 += 1;
        } else {
            int j = (int)std::floor(std::log2(ratio)) + 1; // 2^{j-1} <= ratio < 2^j
            s5 += std::ldexp(1.0, 1 - j);
        }
    }
    WeylS45Report rep{};
    rep.s4 = s4;
    rep.s5 = s5;
    rep.ok4 = s4 <= 3.0 * (double)p1;
    rep.ok5 = s5 <= 6 * (std::log2((double)K) + 1) * (double)p1;
    return rep;
}

struct DivisorReport {
    std::uint64_t m;
    std::uint64_t tau_star;
    std::uint64_t argmax;
    bool ok_nicolas;  // tau(n) <= n^{1.06602/lnln n} for 3 <= n <= m
    bool ok_sqrt;     // tau* <= 2 sqrt(m)
    bool ok_eighth;   // tau* <= 42000 m^{1/8}
    bool ok_fiftieth; // tau* <= 702 m^{1/50}, valid for m <= 327680000
};

// Divisor-count sieve up to m; checks both the running max and the per-n bound.
inline DivisorReport divisor_max(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("divisor_max: need m >= 2");
    if (m > 1000000000ull) throw std::invalid_argument("divisor_max: sieve above 1e9 refused");
    std::vector<std::uint16_t> tau((std::size_t)m + 1, 0);
    for (std::uint64_t d = 1; d <= m; ++d)
        for (std::uint64_t n = d; n <= m; n += d) ++tau[(std::size_t)n];
    DivisorReport rep{m, 0, 0, true, true, true, true};
    for (std::uint64_t n = 2; n <= m; ++n) {
        if (tau[(std::size_t)n] > rep.tau_star) {
            rep.tau_star = tau[(std::size_t)n];
            rep.argmax = n;
        }
        if (n >= 3) {
            double bnd = std::pow((double)n, 1.06602 / std::log(std::log((double)n)));
            if ((double)tau[(std::size_t)n] > bnd) rep.ok_nicolas = false;
        }
    }
    double md = (double)m;
    if ((double)rep.tau_star > 2 * std::sqrt(md)) rep.ok_sqrt = false;
    if ((double)rep.tau_star > 42000 * std::pow(md, 0.125)) rep.ok_eighth = false;
    if (m <= 327680000ull && (double)rep.tau_star > 702 * std::pow(md, 0.02)) rep.ok_fiftieth = false;
    return rep;
}

struct SinHalfAngleReport {
    double worst_margin; // min over samples of |sin(pi theta / 2)| - ||theta||
    bool ok;
};

inline SinHalfAngleReport sin_halfangle_bound(const std::vector<double>& thetas) {
    SinHalfAngleReport rep{1e300, true};
    for (double th : thetas) {
        double dist = std::fabs(th - std::round(th));
        double lhs = std::fabs(std::sin(pi_dioph * th / 2));
        double margin = lhs - dist;
        rep.worst_margin = std::min(rep.worst_margin, margin);
        if (margin < -1e-12) rep.ok = false;
    }
    return rep;
}

} // namespace skewlyap
