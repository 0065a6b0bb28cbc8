#pragma once

// Outward-rounded interval arithmetic over MPFR endpoints (default 128-bit
// mantissa). Every operation rounds the lower endpoint down and the upper
// endpoint up, so any real produced by the exact expression is enclosed.
// Exact rationals (GMP mpq) and big integers (mpz) feed endpoints without
// widening beyond one ulp.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace skewlyap {

using Rational = mpq_class;
using BigInt = mpz_class;

class Interval {
  public:
    static inline mpfr_prec_t default_precision = 128;

    Interval() { init_(); set_zero_(); }
    explicit Interval(long v) { init_(); mpfr_set_si(lo_, v, MPFR_RNDD); mpfr_set_si(hi_, v, MPFR_RNDU); }
    explicit Interval(double v) { init_(); mpfr_set_d(lo_, v, MPFR_RNDD); mpfr_set_d(hi_, v, MPFR_RNDU); }
    explicit Interval(const Rational& q) {
        init_();
        mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
    }
    explicit Interval(const BigInt& z) {
        init_();
        mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
    }
    Interval(double lo, double hi) {
        init_();
        mpfr_set_d(lo_, lo, MPFR_RNDD);
        mpfr_set_d(hi_, hi, MPFR_RNDU);
        check_order_();
    }

    // decimal string, outward-rounded ("2e-3", "1.25", ...)
    static Interval from_decimal(const std::string& s) {
        Interval r;
        if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 &&
            mpfr_nan_p(r.lo_))
            throw std::invalid_argument("Interval: bad decimal literal: " + s);
        mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
        return r;
    }

    static Interval hull(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    Interval(const Interval& o) { init_(); mpfr_set(lo_, o.lo_, MPFR_RNDD); mpfr_set(hi_, o.hi_, MPFR_RNDU); }
    Interval(Interval&& o) noexcept {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(Interval o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() { mpfr_clear(lo_); mpfr_clear(hi_); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a) {
        Interval r;
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_t t;
        mpfr_init2(t, default_precision);
        // lower endpoint: min of the four products rounded down
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD); mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD); mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD); mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        // upper endpoint: max rounded up
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU); mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU); mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU); mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero())
            throw std::domain_error("Interval division by interval containing zero");
        Interval r;
        mpfr_t t;
        mpfr_init2(t, default_precision);
        mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD); mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD); mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD); mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU); mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU); mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU); mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool is_positive() const { return mpfr_sgn(lo_) > 0; }

    // certified order relations on the real values
    friend bool certainly_less(const Interval& a, const Interval& b) {
        return mpfr_cmp(a.hi_, b.lo_) < 0;
    }
    friend bool certainly_leq(const Interval& a, const Interval& b) {
        return mpfr_cmp(a.hi_, b.lo_) <= 0;
    }
    friend bool certainly_greater(const Interval& a, const Interval& b) {
        return certainly_less(b, a);
    }

    double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const { return (lower_d() + upper_d()) / 2; }

    std::string to_string(int digits = 25) const {
        char* ls = nullptr;
        char* hs = nullptr;
        mpfr_asprintf(&ls, "%.*Rg", digits, lo_);
        mpfr_asprintf(&hs, "%.*Rg", digits, hi_);
        std::string out = std::string("[") + ls + ", " + hs + "]";
        mpfr_free_str(ls);
        mpfr_free_str(hs);
        return out;
    }

    friend Interval i_log(const Interval& x) {
        if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("i_log: argument not positive");
        Interval r;
        mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval i_exp(const Interval& x) {
        Interval r;
        mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval i_sqrt(const Interval& x) {
        if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("i_sqrt: negative argument");
        Interval r;
        mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
        return r;
    }
    // x^y for certainly-positive x
    friend Interval i_pow(const Interval& x, const Interval& y) {
        return i_exp(y * i_log(x));
    }

    static Interval pi() {
        Interval r;
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }

  private:
    void init_() {
        mpfr_init2(lo_, default_precision);
        mpfr_init2(hi_, default_precision);
    }
    void set_zero_() {
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    void check_order_() {
        if (mpfr_cmp(lo_, hi_) > 0) throw std::invalid_argument("Interval: lo > hi");
    }

    mpfr_t lo_, hi_;
};

// Scoped precision override for the certifier's --precision flag.
struct PrecisionGuard {
    mpfr_prec_t saved;
    explicit PrecisionGuard(mpfr_prec_t p) : saved(Interval::default_precision) {
        Interval::default_precision = p;
    }
    ~PrecisionGuard() { Interval::default_precision = saved; }
};

// Numeric shims so the constants formulas instantiate for both double and
// Interval. Template code calls num::log(x) etc.
namespace num {

using std::exp;
using std::log;
using std::sqrt;

inline Interval log(const Interval& x) { return i_log(x); }
inline Interval exp(const Interval& x) { return i_exp(x); }
inline Interval sqrt(const Interval& x) { return i_sqrt(x); }

template <class T> T pi();
template <> inline double pi<double>() { return 3.14159265358979323846264338327950288; }
template <> inline Interval pi<Interval>() { return Interval::pi(); }

template <class T> T from_int(long v);
template <> inline double from_int<double>(long v) { return (double)v; }
template <> inline Interval from_int<Interval>(long v) { return Interval(v); }

// q = a/b evaluated in T
template <class T> T from_ratio(long a, long b) {
    return from_int<T>(a) / from_int<T>(b);
}

} // namespace num

} // namespace skewlyap
