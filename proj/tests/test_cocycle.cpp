#include <catch2/catch_amalgamated.hpp>

#include <quadmath.h>

#include "skewlyap/cocycle.hpp"
#include "skewlyap/rng.hpp"

using namespace skewlyap;

namespace {

const __float128 pi_q = 3.141592653589793238462643383279502884Q;

// Independent oracle: unrenormalized direct product in quad precision.
// Stays independent of the ScaledMatrix path it checks.
double u_n_quad(double lambda, double E, Frac128 x, Frac128 y, Frac128 w, std::uint64_t n) {
    __float128 a = 1, b = 0, c = 0, d = 1;
    Frac128 cx = x, cy = y;
    for (std::uint64_t j = 0; j < n; ++j) {
        skew_step(cx, cy, w);
        __float128 pot = (__float128)E - 2 * (__float128)lambda * cosq(2 * pi_q * (__float128)cx.to_double());
        __float128 na = pot * a - c, nb = pot * b - d;
        c = a;
        d = b;
        a = na;
        b = nb;
    }
    __float128 q = sqrtq(((a + d) / 2) * ((a + d) / 2) + ((c - b) / 2) * ((c - b) / 2));
    __float128 r = sqrtq(((a - d) / 2) * ((a - d) / 2) + ((b + c) / 2) * ((b + c) / 2));
    return (double)(logq(q + r) / (__float128)n);
}

} // namespace

TEST_CASE("one-step matrix basics", "[cocycle]") {
    auto p = CocycleParams::make(1.0, 0.0);
    SECTION("determinant one, explicit entry at phase 0") {
        auto m = one_step_matrix(p, Frac128{});
        REQUIRE(m.det() == Catch::Approx(1.0));
        REQUIRE(m.a == Catch::Approx(-2.0));
        REQUIRE(m.b == -1.0);
        REQUIRE(m.c == 1.0);
        REQUIRE(m.d == 0.0);
    }
    SECTION("entry bound |E - 2 l cos| <= 2 + 4 l") {
        SplitMix64 rng(11);
        for (int t = 0; t < 200; ++t) {
            double lam = rng.uniform(0.5, 1.0);
            double E = rng.uniform(-2 - 2 * lam, 2 + 2 * lam);
            auto pp = CocycleParams::make(lam, E);
            auto m = one_step_matrix(pp, Frac128::from_double(rng.uniform()));
            REQUIRE(std::fabs(m.a) <= 2 + 4 * lam + 1e-12);
        }
    }
}

TEST_CASE("transfer product vs quad oracle", "[cocycle]") {
    auto p = CocycleParams::make(1.0, 0.0);

    SECTION("n = 0 is the identity with zero log scale") {
        auto m = transfer_product(p, {}, {}, 0);
        REQUIRE(m.log_scale == 0.0);
        REQUIRE(m.m.a == 1.0);
        REQUIRE(m.m.d == 1.0);
    }

    SECTION("n <= 12 at the origin and random phases, rel 1e-10") {
        for (std::uint64_t n = 1; n <= 12; ++n) {
            double mine = u_n(p, {}, {}, n);
            double oracle = u_n_quad(1, 0, {}, {}, p.omega, n);
            REQUIRE(mine == Catch::Approx(oracle).margin(1e-10 * std::max(1.0, std::fabs(oracle))));
        }
        for (int t = 0; t < 30; ++t) {
            Frac128 x = counter_frac128(5, 0, (std::uint64_t)t);
            Frac128 y = counter_frac128(5, 1, (std::uint64_t)t);
            for (std::uint64_t n : {std::uint64_t(3), std::uint64_t(12)}) {
                double mine = u_n(p, x, y, n);
                double oracle = u_n_quad(1, 0, x, y, p.omega, n);
                REQUIRE(std::fabs(mine - oracle) <= 1e-10 * std::max(1.0, std::fabs(oracle)));
            }
        }
    }

    SECTION("n = 1000 log-norm agreement to 1e-8 over seeded phases") {
        for (int t = 0; t < 40; ++t) {
            Frac128 x = counter_frac128(6, 0, (std::uint64_t)t);
            Frac128 y = counter_frac128(6, 1, (std::uint64_t)t);
            double mine = u_n(p, x, y, 1000);
            double oracle = u_n_quad(1, 0, x, y, p.omega, 1000);
            REQUIRE(std::fabs(mine - oracle) <= 1e-8 * std::fabs(oracle));
        }
    }

    SECTION("reconstructed determinant stays 1 at n = 1e4") {
        auto m = transfer_product(p, Frac128::from_double(0.3), Frac128::from_double(0.4), 10000);
        REQUIRE(m.log_det_abs() == Catch::Approx(0.0).margin(1e-9));
    }

    SECTION("double-double accumulation agrees with plain at these sizes") {
        Frac128 x = Frac128::from_double(0.21), y = Frac128::from_double(0.43);
        double a = u_n(p, x, y, 2000, Accumulation::plain);
        double b = u_n(p, x, y, 2000, Accumulation::double_double);
        REQUIRE(a == Catch::Approx(b).margin(1e-12));
    }
}

TEST_CASE("u_n basics", "[cocycle]") {
    SECTION("rotation at phase sum 1/4 has zero log norm") {
        auto p = CocycleParams::make(1.0, 0.0);
        // T^1 first coordinate is x + y; choose x + y = 1/4
        Frac128 x = Frac128::ratio(1, 8), y = Frac128::ratio(1, 8);
        REQUIRE(u_n(p, x, y, 1) == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("u_n >= 0 and u_n <= U(lambda,1) on random draws") {
        SplitMix64 rng(17);
        for (int t = 0; t < 300; ++t) {
            double lam = rng.uniform(0.5, 1.0);
            double E = rng.uniform(-2 - 2 * lam, 2 + 2 * lam);
            auto p = CocycleParams::make(lam, E);
            std::uint64_t n = 1 + (rng.next() % 300);
            double u = u_n(p, counter_frac128(3, 0, (std::uint64_t)t), counter_frac128(3, 1, (std::uint64_t)t), n);
            double cap = std::log(std::pow(4 * lam + 2, 2) + 2) / 2; // U(lambda, 1)
            REQUIRE(u >= -1e-12);
            REQUIRE(u <= cap + 1e-12);
        }
    }
}

TEST_CASE("cocycle identity M_{m+n}(x,y) = M_m(T^n(x,y)) M_n(x,y)", "[cocycle]") {
    auto p = CocycleParams::make(0.7, 0.9);
    SplitMix64 rng(23);
    for (int t = 0; t < 25; ++t) {
        std::uint64_t m = 1 + (rng.next() % 500), n = 1 + (rng.next() % 500);
        Frac128 x = counter_frac128(8, 0, (std::uint64_t)t), y = counter_frac128(8, 1, (std::uint64_t)t);
        auto whole = transfer_product(p, x, y, m + n);
        auto first = transfer_product(p, x, y, n);
        auto [tx, ty] = skew_orbit_closed(x, y, n, p.omega);
        auto second = transfer_product(p, tx, ty, m);
        ScaledMatrix combined{second.m * first.m, second.log_scale + first.log_scale};
        REQUIRE(whole.log_spectral_norm() ==
                Catch::Approx(combined.log_spectral_norm()).margin(1e-9));
    }
}

TEST_CASE("regularized matrix and boundary identities", "[cocycle]") {
    SECTION("|a| = 1 enforced") {
        REQUIRE_THROWS(regularized_matrix_A(0.5, 0.0, {1, 0}, {1, 0}, {2, 0}));
    }
    SECTION("v_n(0, w) = v_n(z, 0) = log lambda to 1e-12") {
        for (double lam : {0.5, 0.66, 1.0}) {
            auto p = CocycleParams::make(lam, 0.4);
            REQUIRE(v_n_regularized(p, {0, 0}, {0.3, 0.2}, 37) ==
                    Catch::Approx(std::log(lam)).margin(1e-12));
            REQUIRE(v_n_regularized(p, {0.5, -0.1}, {0, 0}, 37) ==
                    Catch::Approx(std::log(lam)).margin(1e-12));
        }
    }
    SECTION("dual path: v_n on the torus equals u_n, n <= 50") {
        auto p = CocycleParams::make(0.8, 1.1);
        SplitMix64 rng(31);
        for (int t = 0; t < 10; ++t) {
            Frac128 x = Frac128::from_double(rng.uniform());
            Frac128 y = Frac128::from_double(rng.uniform());
            cplx z{std::cos(two_pi * x.to_double()), std::sin(two_pi * x.to_double())};
            cplx w{std::cos(two_pi * y.to_double()), std::sin(two_pi * y.to_double())};
            for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(13), std::uint64_t(50)}) {
                REQUIRE(u_n(p, x, y, n) ==
                        Catch::Approx(v_n_regularized(p, z, w, n)).margin(1e-10));
            }
        }
    }
    SECTION("norm bound ||A||^2 <= (|E||zw| + l|zw|^2 + l)^2 + 2|z|^2|w|^2") {
        SplitMix64 rng(37);
        for (int t = 0; t < 200; ++t) {
            double lam = rng.uniform(0.5, 1.0), E = rng.uniform(-4, 4);
            cplx z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            cplx w{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            double ang = rng.uniform(0, 6.28);
            cplx a{std::cos(ang), std::sin(ang)};
            auto A = regularized_matrix_A(lam, E, z, w, a);
            double zw = std::abs(z * w);
            double cap = std::pow(std::fabs(E) * zw + lam * zw * zw + lam, 2) +
                         2 * std::norm(z) * std::norm(w);
            REQUIRE(spectral_norm(A) * spectral_norm(A) <= cap * (1 + 1e-12));
        }
    }
}

TEST_CASE("parameter validation", "[cocycle]") {
    REQUIRE_THROWS(CocycleParams::make(0.3, 0.0));  // lambda below band
    REQUIRE_THROWS(CocycleParams::make(0.5, 3.5));  // E outside [-3, 3]
    REQUIRE_THROWS(u_n(CocycleParams::make(0.5, 0.0), {}, {}, 0));
}
