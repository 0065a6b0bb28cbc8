#include <catch2/catch_amalgamated.hpp>

#include "skewlyap/frac128.hpp"

using namespace skewlyap;

TEST_CASE("golden ratio fixed point", "[frac128]") {
    Frac128 w = golden_ratio_frac();

    SECTION("leading decimal expansion 0.618033988749...") {
        // digits frozen from a 50-digit integer-sqrt computation
        const int want[12] = {6, 1, 8, 0, 3, 3, 9, 8, 8, 7, 4, 9};
        u128 f = w.v;
        for (int i = 0; i < 12; ++i) {
            auto [hi, lo] = mul_128_full(f, (u128)10);
            REQUIRE(hi == (u128)want[i]);
            f = lo;
        }
    }

    SECTION("omega + omega^2 = 1 (mod 1: residual at 2^-126)") {
        Frac128 w2 = mul_frac(w, w);
        u128 s = w.v + w2.v; // wraps; should be ~0 mod 2^128
        u128 dist = s < ((u128)0 - s) ? s : (u128)0 - s;
        REQUIRE(dist <= 4); // |omega + omega^2 - 1| <= 2^-126
    }

    SECTION("Fibonacci norms shrink") {
        std::uint64_t fib_prev = 1, fib = 1;
        double prev_norm = 1.0;
        for (int i = 0; i < 20; ++i) {
            double nrm = torus_norm(fib, w);
            REQUIRE(nrm < prev_norm);
            prev_norm = nrm;
            std::uint64_t next = fib + fib_prev;
            fib_prev = fib;
            fib = next;
        }
    }
}

TEST_CASE("skew orbit iterative equals closed form", "[frac128]") {
    Frac128 w = golden_ratio_frac();
    Frac128 x = Frac128::from_double(0.37), y = Frac128::from_double(0.91);

    SECTION("n = 0 is the identity") {
        auto [a, b] = skew_orbit_closed(x, y, 0, w);
        REQUIRE(a == x);
        REQUIRE(b == y);
    }

    SECTION("(0,0) at n=2 lands on (omega, 2 omega)") {
        auto [a, b] = skew_orbit_iter({}, {}, 2, w);
        REQUIRE(a.v == w.v);
        REQUIRE(b.v == w.v * 2);
    }

    SECTION("bit-exact agreement at n = 1e3 and 1e5") {
        for (std::uint64_t n : {std::uint64_t(1000), std::uint64_t(100000)}) {
            auto [a1, b1] = skew_orbit_iter(x, y, n, w);
            auto [a2, b2] = skew_orbit_closed(x, y, n, w);
            REQUIRE(a1 == a2);
            REQUIRE(b1 == b2);
        }
    }
}

TEST_CASE("exact norm comparison", "[frac128]") {
    Frac128 w = golden_ratio_frac();
    REQUIRE(torus_norm(1, w) == Catch::Approx(1 - 0.6180339887498949).epsilon(1e-12));
    for (std::uint64_t k = 1; k <= 1000; ++k) REQUIRE(torus_norm_at_least_inv3k(k, w));
}
