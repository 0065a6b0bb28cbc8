#pragma once

// Exact mod-1 arithmetic on the torus, carried as unsigned 128-bit
// fractions with denominator 2^128. Addition wraps exactly, so skew-shift
// orbits accumulate no rounding error regardless of length.

#include <array>
#include <cstdint>
#include <utility>

namespace skewlyap {

using u128 = unsigned __int128;

struct Frac128 {
    u128 v = 0; // represents v / 2^128 in [0,1)

    friend Frac128 operator+(Frac128 a, Frac128 b) { return {a.v + b.v}; }
    friend Frac128 operator-(Frac128 a, Frac128 b) { return {a.v - b.v}; }
    Frac128& operator+=(Frac128 o) { v += o.v; return *this; }
    friend bool operator==(Frac128 a, Frac128 b) { return a.v == b.v; }

    // frac(n * x), exact: multiplication mod 2^128 is multiplication mod 1.
    friend Frac128 operator*(std::uint64_t n, Frac128 x) { return {x.v * (u128)n}; }

    double to_double() const { return (double)v * 0x1p-128; }

    static Frac128 from_double(double d) {
        d -= (long long)d;
        if (d < 0) d += 1.0;
        // split to avoid losing low bits in the single rounding
        double hi = d * 0x1p64;
        double hif = (double)(std::uint64_t)hi;
        double lo = (hi - hif) * 0x1p64;
        return {((u128)(std::uint64_t)hif << 64) + (u128)(std::uint64_t)lo};
    }

    // i/n as a fraction, rounded down to the 2^-128 grid
    static Frac128 ratio(std::uint64_t i, std::uint64_t n) {
        u128 hi = ((u128)i << 64) / n;
        u128 rem = ((u128)i << 64) % n;
        u128 lo = (rem << 64) / n;
        return {(hi << 64) | lo};
    }
};

// Full 128x128 -> 256-bit product, returned as (hi, lo).
inline std::pair<u128, u128> mul_128_full(u128 a, u128 b) {
    const u128 mask = (~(u128)0) >> 64;
    u128 a0 = a & mask, a1 = a >> 64;
    u128 b0 = b & mask, b1 = b >> 64;
    u128 ll = a0 * b0;
    u128 lh = a0 * b1;
    u128 hl = a1 * b0;
    u128 hh = a1 * b1;
    u128 mid = (ll >> 64) + (lh & mask) + (hl & mask);
    u128 lo = (mid << 64) | (ll & mask);
    u128 hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    return {hi, lo};
}

// frac(x*y) truncated to 2^-128: the high word of the full product.
inline Frac128 mul_frac(Frac128 x, Frac128 y) { return {mul_128_full(x.v, y.v).first}; }

namespace detail {

// Minimal fixed-width 320-bit unsigned integer; only what the bitwise
// square root below needs.
struct U320 {
    std::array<std::uint64_t, 5> w{}; // little-endian limbs

    static U320 zero() { return {}; }

    int cmp(const U320& o) const {
        for (int i = 4; i >= 0; --i) {
            if (w[i] != o.w[i]) return w[i] < o.w[i] ? -1 : 1;
        }
        return 0;
    }
    bool operator>=(const U320& o) const { return cmp(o) >= 0; }

    U320 shl(unsigned k) const {
        U320 r{};
        unsigned limb = k / 64, bit = k % 64;
        for (int i = 4; i >= 0; --i) {
            std::uint64_t v = 0;
            int src = i - (int)limb;
            if (src >= 0) v = w[src] << bit;
            if (bit && src - 1 >= 0) v |= w[src - 1] >> (64 - bit);
            r.w[i] = v;
        }
        return r;
    }

    U320& or_low(std::uint64_t bits) { w[0] |= bits; return *this; }

    unsigned two_bits_at(unsigned pos) const { // bits [pos, pos+1]
        unsigned limb = pos / 64, bit = pos % 64;
        std::uint64_t v = w[limb] >> bit;
        if (bit == 63 && limb + 1 < 5) v |= w[limb + 1] << 1;
        return (unsigned)(v & 3);
    }
};

inline U320 sub(U320 a, const U320& b) {
    U320 r{};
    unsigned borrow = 0;
    for (int i = 0; i < 5; ++i) {
        std::uint64_t bi = b.w[i];
        std::uint64_t t = a.w[i] - bi;
        std::uint64_t r2 = t - borrow;
        unsigned nb = (a.w[i] < bi) || (t < borrow) ? 1u : 0u;
        r.w[i] = r2;
        borrow = nb;
    }
    return r;
}

// floor(sqrt(n)) for n < 2^320 by the classic two-bit shift-subtract loop.
inline U320 isqrt_u320(const U320& n) {
    U320 x{}, r{};
    for (int i = 159; i >= 0; --i) {
        r = r.shl(2).or_low(n.two_bits_at(2 * (unsigned)i));
        U320 t = x.shl(2).or_low(1);
        x = x.shl(1);
        if (r >= t) {
            r = sub(r, t);
            x.or_low(1);
        }
    }
    return x;
}

} // namespace detail

// floor(2^128 * (sqrt(5)-1)/2) via the integer square root of 5*2^256.
inline Frac128 golden_ratio_frac() {
    detail::U320 five{};
    five.w[4] = 5; // 5 * 2^256
    detail::U320 s = detail::isqrt_u320(five);
    // s = floor(sqrt(5)*2^128), a 130-bit value: (s - 2^128) >> 1 fits in 128
    u128 slow = ((u128)s.w[1] << 64) | s.w[0];
    u128 shi = ((u128)s.w[3] << 64) | s.w[2]; // bits 128..255
    // subtract 2^128: drop one from the high part
    u128 hi = shi - 1;
    // shift the 130-bit (hi:slow) right by one
    u128 res = (slow >> 1) | (hi << 127);
    return {res};
}

// One skew-shift step T(x,y) = (x+y, y+omega), all exact mod 1.
inline void skew_step(Frac128& x, Frac128& y, Frac128 omega) {
    x += y;
    y += omega;
}

// T^n(x,y) by exact iteration.
inline std::pair<Frac128, Frac128> skew_orbit_iter(Frac128 x, Frac128 y, std::uint64_t n,
                                                   Frac128 omega) {
    for (std::uint64_t j = 0; j < n; ++j) skew_step(x, y, omega);
    return {x, y};
}

// T^n(x,y) = (x + n y + n(n-1)/2 * omega, y + n omega) by exact multiply-reduce.
inline std::pair<Frac128, Frac128> skew_orbit_closed(Frac128 x, Frac128 y, std::uint64_t n,
                                                     Frac128 omega) {
    // n(n-1)/2 without overflow: one of n, n-1 is even
    u128 tri = (n % 2 == 0) ? (u128)(n / 2) * (n - 1) : (u128)n * ((n - 1) / 2);
    Frac128 fx{x.v + (u128)n * y.v + tri * omega.v};
    Frac128 fy{y.v + (u128)n * omega.v};
    return {fx, fy};
}

// Distance to the nearest integer of k*omega, as exact 128-bit value.
inline u128 torus_norm_raw(std::uint64_t k, Frac128 omega) {
    u128 v = (u128)k * omega.v;
    u128 c = ~v + 1; // 2^128 - v (mod), equals 1 - frac
    return v < c ? v : c;
}

inline double torus_norm(std::uint64_t k, Frac128 omega) {
    return (double)torus_norm_raw(k, omega) * 0x1p-128;
}

// Exact check  ||k omega|| >= 1/(3k):  3k * min(v, 2^128-v) >= 2^128.
inline bool torus_norm_at_least_inv3k(std::uint64_t k, Frac128 omega) {
    u128 m = torus_norm_raw(k, omega);
    auto [hi, lo] = mul_128_full(m, (u128)3 * k);
    (void)lo;
    return hi >= 1;
}

// frac(m * omega / 2): the full product m*W is taken mod 2^129 and scaled
// by 2^-129, exact up to the stored truncation of omega itself.
inline double frac_half(std::uint64_t m, Frac128 omega) {
    auto [hi, lo] = mul_128_full((u128)m, omega.v);
    u128 topbit = hi & 1; // bit 128 of the product
    long double val = (long double)lo * 0x1p-129L + (long double)topbit * 0.5L;
    return (double)val;
}

} // namespace skewlyap
