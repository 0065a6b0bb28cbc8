#pragma once

// Desk-scale numeric verification of the closed-form harmonic-analysis
// quantities: Poisson-kernel derivative integrals, the L1 norm of
// log|1-e(phi)|, the Hardy-atom Hilbert bounds, and exponential
// integrability of H on bounded functions.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hilbert.hpp"
#include "quadrature.hpp"

namespace skewlyap {

inline constexpr double pi_d = 3.14159265358979323846264338327950288;

inline double poisson_kernel(double r, double theta) {
    if (!(r >= 0 && r < 1)) throw std::invalid_argument("poisson_kernel: need 0 <= r < 1");
    return (1 - r * r) / (1 - 2 * r * std::cos(2 * pi_d * theta) + r * r);
}

inline double poisson_kernel_dtheta(double R2, double theta) {
    double den = R2 * R2 - 2 * R2 * std::cos(2 * pi_d * theta) + 1;
    return -4 * pi_d * R2 * (R2 * R2 - 1) * std::sin(2 * pi_d * theta) / (den * den);
}

inline double poisson_kernel_d2theta(double R2, double theta) {
    double c = std::cos(2 * pi_d * theta);
    double den = R2 * R2 - 2 * R2 * c + 1;
    return -8 * pi_d * pi_d * R2 * (R2 * R2 - 1) *
           (2 * R2 * c * c + (R2 * R2 + 1) * c - 4 * R2) / (den * den * den);
}

struct PoissonDerivativeReport {
    double measured1, closed1; // int |d/dtheta P_{1/R2}|
    double measured2, closed2; // int |d^2/dtheta^2 P_{1/R2}|
    double theta0;
};

// Quadrature of the absolute derivative integrals against the closed forms
// evaluated through theta0 = arccos((sqrt(R2^4+34R2^2+1)-(R2^2+1))/(4R2))/2pi.
inline PoissonDerivativeReport verify_poisson_derivative_integrals(double R2) {
    if (!(R2 > 1)) throw std::invalid_argument("verify_poisson_derivative_integrals: R2 > 1");
    PoissonDerivativeReport rep{};
    auto abs_d1 = [R2](double t) { return std::fabs(poisson_kernel_dtheta(R2, t)); };
    // sign changes exactly at theta = 0, 1/2
    rep.measured1 = integrate(abs_d1, 0.0, 0.5) + integrate(abs_d1, 0.5, 1.0);
    rep.closed1 = 8 * R2 / (R2 * R2 - 1);

    double surd = std::sqrt(std::pow(R2, 4) + 34 * R2 * R2 + 1);
    rep.theta0 = std::acos((surd - (R2 * R2 + 1)) / (4 * R2)) / (2 * pi_d);
    auto abs_d2 = [R2](double t) { return std::fabs(poisson_kernel_d2theta(R2, t)); };
    double t0 = rep.theta0;
    rep.measured2 = integrate(abs_d2, 0.0, t0) + integrate(abs_d2, t0, 0.5) +
                    integrate(abs_d2, 0.5, 1 - t0) + integrate(abs_d2, 1 - t0, 1.0);
    double s0 = std::sin(2 * pi_d * t0), c0 = std::cos(2 * pi_d * t0);
    double den = R2 * R2 - 2 * R2 * c0 + 1;
    rep.closed2 = 16 * pi_d * R2 * (R2 * R2 - 1) * s0 / (den * den);
    return rep;
}

// || log|r - e(phi)| ||_{L1(T)}. For r < 1 the integrand is bounded; at
// r = 1 the endpoint log singularity is split off analytically.
inline double log_distance_l1(double r) {
    if (r == 0) return 0;
    if (r < 1) {
        auto f = [r](double phi) {
            return std::fabs(0.5 * std::log(1 + r * r - 2 * r * std::cos(2 * pi_d * phi)));
        };
        double phi0 = std::acos(r / 2) / (2 * pi_d);
        return integrate(f, 0.0, phi0) + integrate(f, phi0, 1 - phi0) + integrate(f, 1 - phi0, 1.0);
    }
    // h(1) = -4 int_0^{1/6} log(2 sin(pi phi)) dphi; peel off log(2 pi phi)
    auto smooth = [](double phi) {
        if (phi == 0) return 0.0;
        return std::log(std::sin(pi_d * phi) / (pi_d * phi));
    };
    double a = 1.0 / 6;
    double singular = a * (std::log(2 * pi_d * a) - 1); // int_0^a log(2 pi phi) dphi
    return -4 * (integrate(smooth, 0.0, a) + singular);
}

struct H1Report {
    double h1;                      // || log|1-e| ||_1
    std::vector<double> h_samples;  // h(r) at the probe radii
};

inline H1Report verify_h1_bound() {
    H1Report rep;
    rep.h1 = log_distance_l1(1.0);
    for (double r : {0.0, 0.25, 0.5, 0.9}) rep.h_samples.push_back(log_distance_l1(r));
    return rep;
}

// The Hardy-space atom tau' of the T^1 splitting argument: a tent of
// height 1/eps rising over [a-3e, a-2e] and falling over [a-2e, a-e],
// mirrored with opposite sign on [a+e, a+3e]. Mean zero; its
// antiderivative tau is the plateau function with <tau> = 4 eps.
inline double atom_tau_prime(double x, double a, double eps) {
    double d = x - a;
    d -= std::round(d); // representative in [-1/2, 1/2)
    double t = std::fabs(d);
    double tent = 0;
    if (t >= eps && t <= 2 * eps) tent = (t - eps) / (eps * eps);
    else if (t > 2 * eps && t <= 3 * eps) tent = (3 * eps - t) / (eps * eps);
    return d < 0 ? tent : -tent;
}

struct AtomReport {
    double l1, linf;
    double tau_prime_mean; // should vanish
    double tau_mean;       // should equal 4 eps
};

inline AtomReport verify_atom_bounds(double eps, double a, std::size_t grid = 1 << 16) {
    if (!(eps > 0 && eps <= 1.0 / 17))
        throw std::invalid_argument("verify_atom_bounds: need 0 < eps <= 1/17");
    if (eps < 0x1p-10)
        throw std::invalid_argument("verify_atom_bounds: eps below 2^-10 grid floor");
    std::vector<double> v(grid);
    for (std::size_t i = 0; i < grid; ++i)
        v[i] = atom_tau_prime((double)i / (double)grid, a, eps);
    auto sample = PeriodicFunctionSample::from_values(std::move(v));
    AtomReport rep{};
    rep.tau_prime_mean = sample.mean;
    // antiderivative from a - 1/2, then its mean
    {
        std::size_t start = (std::size_t)std::llround(
            std::fmod(std::fmod(a - 0.5, 1.0) + 1.0, 1.0) * (double)grid) % grid;
        double acc = 0, total = 0;
        for (std::size_t k = 0; k < grid; ++k) {
            acc += sample.values[(start + k) % grid] / (double)grid;
            total += acc;
        }
        rep.tau_mean = total / (double)grid;
    }
    auto h = hilbert_transform(sample.mean_subtracted());
    rep.l1 = h.l1_norm();
    rep.linf = h.linf_norm();
    return rep;
}

struct ExpIntegrabilityReport {
    double worst;  // max over trials of int e^{alpha |H f|}
    double bound;  // 2 sec alpha
    int trials;
};

inline ExpIntegrabilityReport verify_exp_integrability(double alpha, int trials = 100,
                                                       std::size_t grid = 1 << 16,
                                                       std::uint64_t seed = 7) {
    if (!(alpha >= 0 && alpha < pi_d / 2))
        throw std::invalid_argument("verify_exp_integrability: need 0 <= alpha < pi/2");
    ExpIntegrabilityReport rep{0, 2.0 / std::cos(alpha), trials};
    for (int t = 0; t < trials; ++t) {
        auto f = random_trig_poly(grid, 50, seed, (std::uint64_t)t);
        double m = f.linf_norm();
        if (m == 0) continue;
        for (auto& x : f.values) x /= m; // |f| <= 1, sup attained
        f.mean = 0; // mean-zero by construction (no k=0 coefficient)
        auto h = hilbert_transform(f);
        double integral = 0;
        for (double x : h.values) integral += std::exp(alpha * std::fabs(x));
        integral /= (double)grid;
        rep.worst = std::max(rep.worst, integral);
    }
    return rep;
}

} // namespace skewlyap
