#pragma once

// Rigorous replay of the multiscale induction as a chain of certified
// inequalities. Scale arithmetic lives in the log domain (the scales reach
// 10^300+); comparisons that reduce to rationals are decided exactly, the
// rest by outward-rounded intervals. A pass is a certified strict (or
// stated non-strict) domination of endpoints, never a float comparison.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "interval.hpp"
#include "lyapunov.hpp"

namespace skewlyap {

// A quantity carried both as an exact rational (when the defining
// expression stayed rational) and as an interval enclosure.
struct CertValue {
    std::optional<Rational> exact;
    Interval iv;

    static CertValue from_rational(const Rational& q) { return {q, Interval(q)}; }
    static CertValue from_bigint(const BigInt& z) { return {Rational(z), Interval(z)}; }
    static CertValue from_interval(const Interval& i) { return {std::nullopt, i}; }
    static CertValue from_long(long v) { return from_rational(Rational(v)); }

    friend CertValue operator+(const CertValue& a, const CertValue& b) {
        CertValue r;
        if (a.exact && b.exact) r.exact = *a.exact + *b.exact;
        r.iv = r.exact ? Interval(*r.exact) : a.iv + b.iv;
        return r;
    }
    friend CertValue operator-(const CertValue& a, const CertValue& b) {
        CertValue r;
        if (a.exact && b.exact) r.exact = *a.exact - *b.exact;
        r.iv = r.exact ? Interval(*r.exact) : a.iv - b.iv;
        return r;
    }
    friend CertValue operator*(const CertValue& a, const CertValue& b) {
        CertValue r;
        if (a.exact && b.exact) r.exact = *a.exact * *b.exact;
        r.iv = r.exact ? Interval(*r.exact) : a.iv * b.iv;
        return r;
    }
    friend CertValue operator/(const CertValue& a, const CertValue& b) {
        CertValue r;
        if (a.exact && b.exact && *b.exact != 0) r.exact = *a.exact / *b.exact;
        r.iv = r.exact ? Interval(*r.exact) : a.iv / b.iv;
        return r;
    }
};

enum class Verdict { pass, fail, indeterminate };
enum class Rel { less, leq };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "indeterminate";
    }
}

struct LedgerEntry {
    std::string name;
    Interval lhs, rhs;
    Rel rel = Rel::less;
    Verdict verdict = Verdict::indeterminate;
    Interval margin; // rhs - lhs
    bool exact = false;
    std::string note;
};

inline LedgerEntry make_entry(std::string name, const Interval& lhs, const Interval& rhs,
                              Rel rel = Rel::less, std::string note = {}) {
    LedgerEntry e;
    e.name = std::move(name);
    e.lhs = lhs;
    e.rhs = rhs;
    e.rel = rel;
    e.margin = rhs - lhs;
    if (rel == Rel::less) {
        if (certainly_less(lhs, rhs)) e.verdict = Verdict::pass;
        else if (certainly_leq(rhs, lhs)) e.verdict = Verdict::fail;
    } else {
        if (certainly_leq(lhs, rhs)) e.verdict = Verdict::pass;
        else if (certainly_less(rhs, lhs)) e.verdict = Verdict::fail;
    }
    e.note = std::move(note);
    return e;
}

// Exact comparison route: never indeterminate.
inline LedgerEntry make_entry(std::string name, const Rational& lhs, const Rational& rhs,
                              Rel rel = Rel::less, std::string note = {}) {
    LedgerEntry e;
    e.name = std::move(name);
    e.lhs = Interval(lhs);
    e.rhs = Interval(rhs);
    e.rel = rel;
    e.margin = Interval(Rational(rhs - lhs));
    bool ok = rel == Rel::less ? lhs < rhs : lhs <= rhs;
    e.verdict = ok ? Verdict::pass : Verdict::fail;
    e.exact = true;
    e.note = std::move(note);
    return e;
}

inline LedgerEntry make_entry(std::string name, const CertValue& lhs, const CertValue& rhs,
                              Rel rel = Rel::less, std::string note = {}) {
    if (lhs.exact && rhs.exact)
        return make_entry(std::move(name), *lhs.exact, *rhs.exact, rel, std::move(note));
    return make_entry(std::move(name), lhs.iv, rhs.iv, rel, std::move(note));
}

// A scale held in the log domain, with the exact integer kept when it is
// representable at all (every explicit scale in the proofs is).
struct LogScale {
    std::optional<BigInt> value;
    Interval log_val;

    static LogScale from_int(const BigInt& z) {
        if (z <= 0) throw std::invalid_argument("LogScale: scale must be positive");
        return {z, i_log(Interval(z))};
    }
    static LogScale from_log(const Interval& l) { return {std::nullopt, l}; }
};

inline BigInt pow10(unsigned long e) {
    BigInt z;
    mpz_ui_pow_ui(z.get_mpz_t(), 10, e);
    return z;
}

// mpq two-argument construction does not canonicalize on its own
inline Rational ratio_of(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Def. 9.1 parameter pack.
struct DeviationParams {
    Rational delta{1, 8};
    Rational delta2{1};
    Rational delta3{2};
    Rational delta4{3, 2};
    Rational C2{203};
    Interval C4; // 145 / pi
    Interval C5; // 850 / pi
    Rational a{7};

    static DeviationParams standard(const Rational& a_val = Rational(7)) {
        DeviationParams d;
        d.C4 = Interval(145l) / Interval::pi();
        d.C5 = Interval(850l) / Interval::pi();
        d.a = a_val;
        return d;
    }
};

// x^y with positive interval base via exp(y log x).
inline Interval ipow(const Interval& x, const Rational& y) {
    return i_exp(Interval(y) * i_log(x));
}

// ---------------------------------------------------------------------------
// The constants-only ledger of the explicit-numbers section.
// ---------------------------------------------------------------------------

inline std::vector<LedgerEntry> paper_constants_ledger() {
    std::vector<LedgerEntry> out;
    const Radii rd{4, 3, 2};
    auto c = make_constants<Interval>(rd);
    Interval two(2l), half_log38 = i_log(Interval(38l)) / two;
    Interval log2 = i_log(two);

    {
        Interval lhs = Interval(289l) *
                       (c.B0 + Interval(Rational(13)) / (Interval(20l) * i_log(Interval(4l) / Interval(3l))));
        out.push_back(make_entry("epssmall: B3^2 - 289(B0 + 13/(20 log(4/3))) > 61", Interval(61l),
                                 c.B3 * c.B3 - lhs));
    }
    out.push_back(make_entry("C < 11.97", c.C, Interval(Rational(1197, 100))));
    out.push_back(make_entry("2 sqrt(2 C0) + C0 < 10", two * i_sqrt(two * c.C0) + c.C0, Interval(10l)));

    auto U = [&](const Interval& lam, long R3) {
        return u_lambda<Interval>(lam, Interval(R3));
    };
    out.push_back(make_entry("0.5 < U(1,4)", Interval(Rational(1, 2)), U(Interval(1l), 4)));

    // U(lambda, 1) <= (1/2) log 38 for lambda in [1/2, 1]; equality at 1, so
    // the algebraic form (4 lambda + 2)^2 + 2 <= 38 is compared exactly.
    out.push_back(make_entry("U(1/2,1) <= half log 38", U(Interval(Rational(1, 2)), 1), half_log38,
                             Rel::leq));
    out.push_back(make_entry("U(1,1) <= half log 38 (algebraic)", Rational(38), Rational(38), Rel::leq,
                             "(4l+2)^2+2 vs 38 at l=1"));

    Interval two_log6 = two * i_log(Interval(6l));
    out.push_back(make_entry("4 U(1/2,1) >= 2 log 6", two_log6,
                             Interval(4l) * U(Interval(Rational(1, 2)), 1), Rel::leq));
    out.push_back(make_entry("2 log 6 > 1", Interval(1l), two_log6));

    // B4 - m4 = 4 log 2 + (U(lambda,4) - log lambda), bracketed at both ends
    for (int which = 0; which < 2; ++which) {
        Interval lam = which == 0 ? Interval(Rational(1, 2)) : Interval(1l);
        Interval b4 = b4m4<Interval>(lam, Interval(4l));
        std::string tag = which == 0 ? "1/2" : "1";
        out.push_back(make_entry("4 log 2 + 0.5 <= B4-m4 (lambda=" + tag + ")",
                                 Interval(4l) * log2 + Interval(Rational(1, 2)), b4, Rel::leq));
        out.push_back(make_entry("B4-m4 <= 4 log 2 + 1 (lambda=" + tag + ")", b4,
                                 Interval(4l) * log2 + Interval(1l), Rel::leq));
    }

    // 48 B3 sqrt(2 U(lambda,1) (B4-m4)) < 11518, via the uniform upper bounds
    Interval b4m4_up = Interval(4l) * log2 + Interval(1l);
    out.push_back(make_entry("48 B3 sqrt(2 U (B4-m4)) < 11518 (uniform)",
                             Interval(48l) * c.B3 * i_sqrt(two * half_log38 * b4m4_up),
                             Interval(11518l)));
    for (int which = 0; which < 2; ++which) {
        Interval lam = which == 0 ? Interval(Rational(1, 2)) : Interval(1l);
        std::string tag = which == 0 ? "1/2" : "1";
        Interval v = Interval(48l) * c.B3 *
                     i_sqrt(two * U(lam, 1) * b4m4<Interval>(lam, Interval(4l)));
        out.push_back(make_entry("48 B3 sqrt(2 U (B4-m4)) < 11518 (lambda=" + tag + ")", v,
                                 Interval(11518l)));
    }

    out.push_back(make_entry("96 B3 U sqrt(2 log 2) < 13317 (uniform)",
                             Interval(96l) * c.B3 * half_log38 * i_sqrt(two * log2),
                             Interval(13317l)));

    Interval twelve_log10 = Interval(12l) * i_log(Interval(10l));
    out.push_back(make_entry("144 + (11518/203)(12 log 10)^{-23/10} < 145",
                             Interval(144l) + Interval(Rational(11518, 203)) *
                                                  ipow(twelve_log10, Rational(-23, 10)),
                             Interval(145l)));
    out.push_back(make_entry("831 + (13317/203)(12 log 10)^{-19/5} < 850",
                             Interval(831l) + Interval(Rational(13317, 203)) *
                                                  ipow(twelve_log10, Rational(-19, 5)),
                             Interval(850l)));

    auto dev = DeviationParams::standard();
    out.push_back(make_entry("18 C4 < 831", Interval(18l) * dev.C4, Interval(831l)));
    out.push_back(make_entry("46 < C4", Interval(46l), dev.C4));
    out.push_back(make_entry("C4 < 47", dev.C4, Interval(47l)));
    out.push_back(make_entry("270 < C5", Interval(270l), dev.C5));
    out.push_back(make_entry("C2 C5 < 5.5e4", Interval(203l) * dev.C5, Interval(55000l)));
    return out;
}

// ---------------------------------------------------------------------------
// Induction step and scale-sequence bookkeeping.
// ---------------------------------------------------------------------------

struct InductionStepResult {
    std::vector<LedgerEntry> entries;
    Interval L_N_lower;   // certified lower bound for L_N
    Interval diff_upper;  // certified upper bound for L_N - L_2N
    bool ok = false;
};

// One application of the induction lemma: from (L_n, L_2n) at scale n and a
// large-deviation hypothesis at scale N, bound L_N below and L_N - L_2N
// above. The error terms are
//   alpha = (11/n) e^{-n L_n / 2} + 8 C3 N^{-7/5 + 4 delta/5}
//   beta  = (22/n) e^{-n L_n / 2} + 24 C3 N^{-7/5 + 4 delta/5}.
inline InductionStepResult induction_step(const BigInt& n, const BigInt& N, const CertValue& L_n,
                                          const CertValue& L_2n, const Interval& C3,
                                          const Rational& delta, bool measure_hypothesis_ok) {
    if (!(delta > 0 && delta < Rational(1, 2)))
        throw std::invalid_argument("induction_step: delta in (0, 1/2)");
    if (N % n != 0) throw std::invalid_argument("induction_step: n must divide N");
    InductionStepResult res;
    CertValue nv = CertValue::from_bigint(n);
    res.entries.push_back(make_entry("induction.a: 7 <= n L_n", CertValue::from_long(7),
                                     nv * L_n, Rel::leq));
    res.entries.push_back(make_entry("induction.b: L_n - L_2n <= L_n / 8", L_n - L_2n,
                                     L_n / CertValue::from_long(8), Rel::leq));
    res.entries.push_back(make_entry("induction.c: measure hypothesis flag",
                                     Rational(measure_hypothesis_ok ? 0 : 1), Rational(1, 2),
                                     Rel::less, "caller-supplied |B_n|,|B_2n| <= N^{-12/5+4d/5}"));
    Interval logN = i_log(Interval(N));
    Interval e_term = i_exp(-(nv.iv * L_n.iv) / Interval(2l)) / nv.iv;
    Interval pow_term = i_exp((Interval(Rational(-7, 5)) + Interval(Rational(4, 5)) * Interval(delta)) * logN);
    Interval alpha = Interval(11l) * e_term + Interval(8l) * C3 * pow_term;
    Interval beta = Interval(22l) * e_term + Interval(24l) * C3 * pow_term;
    Interval ratio = Interval(n) / Interval(N); // n/N in (0,1]
    Interval diff = L_n.iv - L_2n.iv;
    res.L_N_lower = L_n.iv - (Interval(2l) - Interval(2l) * ratio) * diff - alpha;
    res.diff_upper = ratio * diff + beta;
    res.ok = true;
    for (auto& e : res.entries)
        if (e.verdict != Verdict::pass) res.ok = false;
    return res;
}

struct SequenceSchemeResult {
    std::vector<LedgerEntry> entries;
    Interval L_N1_lower, L_2N1_lower, diff_N1_upper;
    bool ok = false;
};

// Scale-sequence lemma specialized to the first step plus the closed
// geometric tails covering every later step: hypotheses (1)-(4), then the
// four conclusions at j = 1. The infinite part enters through the tail
// bounds folded into hypotheses (2) and (3).
inline SequenceSchemeResult sequence_scheme(const BigInt& N0, const BigInt& N1,
                                            const CertValue& L_N0, const CertValue& L_2N0,
                                            const Rational& delta, const Interval& C3,
                                            bool measure_bridge_ok) {
    SequenceSchemeResult res;
    CertValue n0 = CertValue::from_bigint(N0);
    CertValue diff = L_N0 - L_2N0;

    res.entries.push_back(make_entry("seq.h1: 7 <= N0 L_N0", CertValue::from_long(7), n0 * L_N0,
                                     Rel::leq));
    res.entries.push_back(make_entry("seq.h1': L_N0 - L_2N0 <= L_N0/8", diff,
                                     L_N0 / CertValue::from_long(8), Rel::leq));

    // (2): sum over m >= 0 of (1/N_m) e^{-N_m L_{N_m}/2} < L_N0 / 512.
    // First term exactly; later terms use N_m L >= 7 and N_{m+1} >= 10 N_m.
    Interval first = i_exp(-(n0.iv * L_N0.iv) / Interval(2l)) / n0.iv;
    Interval tail_e = Interval(Rational(10, 9)) * i_exp(Interval(Rational(-7, 2))) / Interval(N1);
    res.entries.push_back(make_entry("seq.h2: e-term sum < L_N0/512", first + tail_e,
                                     L_N0.iv / Interval(512l),
                                     Rel::less, "m=0 term + geometric tail over N_j >= N1"));

    // (3): sum over m >= 1 of N_m^{-7/5+4delta/5} < L_N0 / (1280 C3)
    Rational expo = Rational(-7, 5) + Rational(4, 5) * delta;
    Interval head = i_exp(Interval(expo) * i_log(Interval(N1)));
    // ratio between consecutive terms is at most 10^{expo} (scales grow by >= 10)
    Interval q = i_exp(Interval(expo) * i_log(Interval(10l)));
    Interval tail_p = head / (Interval(1l) - q);
    res.entries.push_back(make_entry("seq.h3: power-term sum < L_N0/(1280 C3)", tail_p,
                                     L_N0.iv / (Interval(1280l) * C3), Rel::less,
                                     "geometric bound, ratio 10^{-7/5+4d/5}"));

    res.entries.push_back(make_entry("seq.h4: measure bridge supplied",
                                     Rational(measure_bridge_ok ? 0 : 1), Rational(1, 2), Rel::less,
                                     "|B| bridge to N1^{-23/10} certified separately"));

    // conclusions at j = 1
    Interval e_term = first;
    Interval pw = head;
    Interval alpha1 = Interval(11l) * e_term + Interval(8l) * C3 * pw;
    Interval beta1 = Interval(22l) * e_term + Interval(24l) * C3 * pw;
    Interval ratio = Interval(N0) / Interval(N1);
    res.L_N1_lower = L_N0.iv - (Interval(2l) - Interval(2l) * ratio) * diff.iv - alpha1;
    res.diff_N1_upper = ratio * diff.iv + beta1;
    res.L_2N1_lower = res.L_N1_lower - res.diff_N1_upper;

    res.entries.push_back(make_entry("seq.c1: L_N1 - L_2N1 <= L_N1/8",
                                     Interval(8l) * res.diff_N1_upper, res.L_N1_lower, Rel::leq));
    res.entries.push_back(make_entry("seq.c2: L_2N1 >= L_N0/2", L_N0.iv / Interval(2l),
                                     res.L_2N1_lower, Rel::leq));
    res.entries.push_back(make_entry("seq.c3: 7 <= N1 L_N1", Interval(7l),
                                     Interval(N1) * res.L_N1_lower, Rel::leq));
    res.ok = true;
    for (auto& e : res.entries)
        if (e.verdict != Verdict::pass) res.ok = false;
    return res;
}

// ---------------------------------------------------------------------------
// Proposition 8.1-style condition ledger (I)-(XI).
// ---------------------------------------------------------------------------

inline std::vector<LedgerEntry> prop81_conditions(const BigInt& n, const LogScale& Nt,
                                                  const DeviationParams& dev,
                                                  const ConstantsT<Interval>& c,
                                                  const Interval& lambda, const Interval& L_n,
                                                  const Interval& L_2n) {
    std::vector<LedgerEntry> out;
    const Interval logN = Nt.log_val;
    const Interval logn = i_log(Interval(n));
    const Interval R(4l);
    const Interval logR = i_log(R);
    const Interval U1 = u_lambda<Interval>(lambda, Interval(1l));
    const Interval UR = u_lambda<Interval>(lambda, R);
    const Interval loglam = i_log(lambda);
    const Interval loglogN = i_log(logN);
    const Interval two(2l);

    // (I) in log form: log(C ((2n+1) log R + U - log lambda)) <= delta log N
    Interval b5 = (two * Interval(n) + Interval(1l)) * logR + UR - loglam;
    out.push_back(make_entry("prop81.I", i_log(c.C * b5), Interval(dev.delta) * logN, Rel::leq));
    out.push_back(make_entry("prop81.II: 38 <= N", i_log(Interval(38l)), logN, Rel::leq));
    out.push_back(make_entry("prop81.III: log(N+1) <= 4 (log N)^{d2}",
                             logN + i_exp(-logN), Interval(4l) * ipow(logN, dev.delta2), Rel::leq,
                             "log(N+1) <= log N + 1/N"));
    {
        Interval lhs = Interval(21l) *
                           i_exp((Interval(Rational(-9, 10)) + Interval(Rational(9, 5) * dev.delta)) * logN) *
                           ipow(logN, Rational(9, 10) + Rational(9, 5) * dev.delta2) +
                       Interval(4l) * c.C * (b4m4<Interval>(lambda, R));
        Interval rhs = i_exp(Interval(dev.delta) * logN) * ipow(logN, dev.delta2);
        out.push_back(make_entry("prop81.IV", lhs, rhs, Rel::leq));
    }
    Interval eps4 = Interval(dev.C2) *
                    i_exp((Interval(Rational(-1, 10)) + Interval(dev.delta / 5)) * logN) *
                    ipow(logN, Rational(1, 10) + dev.delta2 / 5 + dev.delta3);
    {
        Interval ninv = i_exp(logn - logN); // n / N
        Interval lhs = two * ninv * (L_n - L_2n) +
                       Interval(8l) * U1 * i_exp((Interval(Rational(-7, 5)) +
                                                  Interval(Rational(4, 5) * dev.delta)) * logN) +
                       Interval(5l) * U1 * ninv;
        out.push_back(make_entry("prop81.V", lhs, eps4));
    }
    {
        Interval lhs = Interval(22l) * i_exp(-Interval(n) * L_n / two) / Interval(n);
        out.push_back(make_entry("prop81.VI", lhs, eps4));
    }
    {
        Interval eps5 = Interval(dev.C2) /
                        (Interval(Rational(945, 2)) +
                         Interval(Rational(16, 5)) * c.B3 * b4m4<Interval>(lambda, R) * i_sqrt(c.C)) *
                        ipow(logN, dev.delta3);
        Interval lhs = i_log(Interval(4l) * i_sqrt(two)) +
                       Interval::pi() / Interval(4l) *
                           (Interval(Rational(17, 36)) + c.B1 / (Interval(4l) * c.B3 * c.B3) - eps5);
        Interval rhs = (Interval(Rational(-7, 5)) + Interval(Rational(4, 5) * dev.delta)) * logN;
        out.push_back(make_entry("prop81.VII (log form)", lhs, rhs, Rel::leq));
    }
    {
        Interval lhs = i_log(two * i_sqrt(two) / (c.C * b4m4<Interval>(lambda, R))) +
                       (Interval(Rational(1, 5)) - two * Interval(dev.delta) / Interval(5l)) * logN +
                       (Interval(Rational(-1, 5)) - two * Interval(dev.delta2) / Interval(5l)) * loglogN -
                       two * ipow(logN, dev.delta2);
        Interval rhs = (Interval(Rational(-7, 5)) + Interval(Rational(4, 5) * dev.delta)) * logN;
        out.push_back(make_entry("prop81.VIII (log form)", lhs, rhs, Rel::leq));
    }
    out.push_back(make_entry("prop81.IX", i_log((logR + UR - loglam) / logR), logN, Rel::less,
                             "log form; rhs < 1.8 at the paper radii"));
    out.push_back(make_entry("prop81.X: 4 < C4 (log N)^{d4}", Interval(4l),
                             dev.C4 * ipow(logN, dev.delta4)));
    out.push_back(make_entry("prop81.XI: C4 < C5 (log N)^{d4}", dev.C4,
                             dev.C5 * ipow(logN, dev.delta4)));
    return out;
}

// ---------------------------------------------------------------------------
// Proposition 9.1: the (n, N) compatibility window and its LDT conclusion.
// ---------------------------------------------------------------------------

struct Prop91Result {
    std::vector<LedgerEntry> entries;
    Interval deviation_size_logN;  // log of 5.5e4 N^{-3/40} (log N)^{53/10} at N
    Interval measure_log;          // log of 10 exp(-(log N)^{3/2}) at N
    bool ok = false;
};

inline Prop91Result prop91_check(const BigInt& n, const BigInt& N, const Rational& a,
                                 const CertValue& L_n, const CertValue& L_2n,
                                 bool measure_hypothesis_ok) {
    Prop91Result res;
    if (a < 7) throw std::invalid_argument("prop91_check: a >= 7");
    res.entries.push_back(make_entry("prop91.pre: 10^12 <= N", Rational(pow10(12)), Rational(N),
                                     Rel::leq));
    res.entries.push_back(make_entry("prop91.pre: n | N", Rational(N % n), Rational(0), Rel::leq,
                                     "exact divisibility"));
    CertValue nv = CertValue::from_bigint(n);
    res.entries.push_back(make_entry("prop91.a: a <= n L_n", CertValue::from_rational(a),
                                     nv * L_n, Rel::leq));
    res.entries.push_back(make_entry("prop91.b: L_n - L_2n <= L_n/8", L_n - L_2n,
                                     L_n / CertValue::from_long(8), Rel::leq));
    res.entries.push_back(make_entry("prop91.c: measure hypothesis flag",
                                     Rational(measure_hypothesis_ok ? 0 : 1), Rational(1, 2),
                                     Rel::less, "max(|B_n|,|B_2n|) <= N^{-23/10} via bridge"));

    // (nN) first part: 10^13 (n+1)^8 <= N, exact in integers
    BigInt lhs1 = pow10(13);
    BigInt np1 = n + 1;
    for (int i = 0; i < 8; ++i) lhs1 *= np1;
    res.entries.push_back(make_entry("prop91.nN1: 10^13 (n+1)^8 <= N", Rational(lhs1), Rational(N),
                                     Rel::leq));

    // (nN) second part, log form:
    // log N - (92/3) log log N < log(1/2) + (40/3)(log(203/22) + a/2 + log n)
    Interval logN = i_log(Interval(N));
    Interval logn = i_log(Interval(n));
    Interval lhs2 = logN - Interval(Rational(92, 3)) * i_log(logN);
    Interval rhs2 = i_log(Interval(Rational(1, 2))) +
                    Interval(Rational(40, 3)) *
                        (i_log(Interval(Rational(203, 22))) + Interval(a) / Interval(2l) + logn);
    res.entries.push_back(make_entry("prop91.nN2 (log form)", lhs2, rhs2));

    res.deviation_size_logN = i_log(Interval(55000l)) - Interval(Rational(3, 40)) * logN +
                              Interval(Rational(53, 10)) * i_log(logN);
    res.measure_log = i_log(Interval(10l)) - i_exp(Interval(Rational(3, 2)) * i_log(logN));
    res.ok = true;
    for (auto& e : res.entries)
        if (e.verdict != Verdict::pass) res.ok = false;
    return res;
}

// The named reformulation the proofs use at the first induction step:
// (2 N1 / (log N1)^{92/3})^{3/40} * (22/203) e^{-a/2} < bound < N0.
inline std::vector<LedgerEntry> prop91_equiv_entries(const BigInt& N0, const BigInt& N1,
                                                     const Rational& a, long bound) {
    std::vector<LedgerEntry> out;
    Interval logN1 = i_log(Interval(N1));
    Interval q = i_exp(Interval(Rational(3, 40)) *
                       (i_log(Interval(2l)) + logN1 - Interval(Rational(92, 3)) * i_log(logN1))) *
                 Interval(Rational(22, 203)) * i_exp(-Interval(a) / Interval(2l));
    out.push_back(make_entry("prop91.equiv: quantity < " + std::to_string(bound), q,
                             Interval(Rational(bound))));
    out.push_back(make_entry("prop91.equiv: " + std::to_string(bound) + " < N0", Rational(bound),
                             Rational(N0)));
    return out;
}

// ---------------------------------------------------------------------------
// Scale lemma: threshold inequalities with certified monotone tails.
// ---------------------------------------------------------------------------

struct ScaleLemmaOptions {
    // f(x) = 5.5e4 x^{-3/40} (log x)^{53/10} <= size_budget for x >= x_size
    BigInt x_size;
    Rational size_budget;
};

inline std::vector<LedgerEntry> scales_lemma_check(const ScaleLemmaOptions& opt) {
    std::vector<LedgerEntry> out;

    // 10 exp(-(log x)^{3/2}) <= x^{-207/10} for x >= 2.06e186, i.e.
    // h(t) = t^{3/2} - 20.7 t - log 10 >= 0 at t0 = log(2.06e186), h' > 0 beyond.
    BigInt x_meas = 206 * pow10(184);
    Interval t0 = i_log(Interval(x_meas));
    Interval h = i_exp(Interval(Rational(3, 2)) * i_log(t0)) -
                 Interval(Rational(207, 10)) * t0 - i_log(Interval(10l));
    out.push_back(make_entry("scales.meas: h(log 2.06e186) >= 0", Interval(0l), h, Rel::leq,
                             "h(t) = t^{3/2} - 20.7 t - log 10"));
    Interval hp = Interval(Rational(3, 2)) * i_sqrt(t0) - Interval(Rational(207, 10));
    out.push_back(make_entry("scales.meas.tail: h'(t0) > 0", Interval(0l), hp, Rel::less,
                             "h' increasing, so h >= 0 for all larger scales"));

    // size threshold: log f(x0) <= log budget, f decreasing once log x > 212/3
    Interval lx = i_log(Interval(opt.x_size));
    Interval logf = i_log(Interval(55000l)) - Interval(Rational(3, 40)) * lx +
                    Interval(Rational(53, 10)) * i_log(lx);
    out.push_back(make_entry("scales.size: f(x0) <= budget (log form)", logf,
                             i_log(Interval(opt.size_budget)), Rel::leq,
                             "f(x) = 5.5e4 x^{-3/40} (log x)^{53/10}"));
    out.push_back(make_entry("scales.size.tail: 212/3 < log x0", Interval(Rational(212, 3)), lx,
                             Rel::less, "f decreasing beyond, so the bound holds at all N_j"));
    return out;
}

// ---------------------------------------------------------------------------
// Theorem replay.
// ---------------------------------------------------------------------------

struct VariantScales {
    BigInt N0, N1;
    Rational L_threshold;      // condition (i)
    long measure_power;        // condition (iii): |B| <= N0^{-power}
    Rational a_first;          // the a used at the first induction step
    BigInt x_size;             // size-threshold scale for (NjNj+1'')
    Rational size_budget;      // 1e-5 or 1e-4
    std::optional<long> equiv_bound; // 29974 / 2938 named constants
};

inline VariantScales variant_scales(TheoremVariant v) {
    switch (v) {
        case TheoremVariant::main: {
            BigInt n0 = 2 * pow10(37);
            BigInt n1 = n0;
            for (int i = 0; i < 8; ++i) n1 *= n0; // N0^9
            return {n0, n1, ratio_of(2, pow10(4)), 21, Rational(7), pow10(334),
                    ratio_of(1, pow10(5)), std::nullopt};
        }
        case TheoremVariant::main2:
            return {3 * pow10(5), 3 * pow10(334), ratio_of(2, pow10(4)), 141, Rational(60),
                    pow10(334), ratio_of(1, pow10(5)), 29974};
        default:
            return {3 * pow10(4), 3 * pow10(320), ratio_of(2, pow10(3)), 165, Rational(60),
                    pow10(320), ratio_of(1, pow10(4)), 2938};
    }
}

// Measured or hypothesized certificate inputs. The B measures enter either
// as an exponent p with max(|B_N0|, |B_2N0|) <= N0^p, or as an enclosure of
// the natural log of that max.
struct CertifyInputs {
    CertValue L, L2;
    std::optional<Rational> B_pow;
    std::optional<Interval> B_log;
    bool statistical = false;

    static CertifyInputs at_thresholds(TheoremVariant v) {
        auto sc = variant_scales(v);
        CertifyInputs in;
        in.L = CertValue::from_rational(sc.L_threshold);
        in.L2 = CertValue::from_rational(sc.L_threshold - sc.L_threshold / 8);
        in.B_pow = Rational(-sc.measure_power);
        return in;
    }
};

struct Certificate {
    TheoremVariant variant;
    std::string label; // "statistical" or "unconditional-given-inputs"
    std::vector<LedgerEntry> entries;
    std::optional<Interval> conclusion; // lower bound on L
    std::string first_failure;          // empty iff conclusion present
};

inline Certificate certify_theorem(TheoremVariant variant, const CertifyInputs& in) {
    Certificate cert;
    cert.variant = variant;
    cert.label = in.statistical ? "statistical" : "unconditional-given-inputs";
    auto sc = variant_scales(variant);
    auto& E = cert.entries;

    CertValue diff = in.L - in.L2;

    // initial conditions (i)-(iii)
    E.push_back(make_entry("initial.i: L_N0 >= threshold",
                           CertValue::from_rational(sc.L_threshold), in.L, Rel::leq));
    E.push_back(make_entry("initial.ii: L_N0 - L_2N0 <= L_N0/8", diff,
                           in.L / CertValue::from_long(8), Rel::leq));
    if (in.B_pow) {
        E.push_back(make_entry("initial.iii: B <= N0^{-p}", *in.B_pow,
                               Rational(-sc.measure_power), Rel::leq,
                               "exponent comparison, B given as N0 power"));
    } else if (in.B_log) {
        Interval required = Interval(-sc.measure_power) * i_log(Interval(sc.N0));
        E.push_back(make_entry("initial.iii: log B <= -p log N0", *in.B_log, required, Rel::leq));
    } else {
        throw std::invalid_argument("certify_theorem: no measure input");
    }

    // scale-sequence hypotheses and first-step conclusions
    Interval C3_up = i_log(Interval(38l)) / Interval(2l); // U(lambda,1) <= half log 38
    auto seq = sequence_scheme(sc.N0, sc.N1, in.L, in.L2, Rational(1, 8), C3_up, true);
    for (auto& e : seq.entries) E.push_back(e);

    // measure bridge to N1^{-23/10}
    {
        Interval logN0 = i_log(Interval(sc.N0));
        Interval logN1 = i_log(Interval(sc.N1));
        if (variant == TheoremVariant::main && in.B_pow && *in.B_pow == Rational(-21)) {
            // N0^{-21} = N1^{-7/3} <= N1^{-23/10}: exact on exponents
            E.push_back(make_entry("bridge: N0^{-21} = N1^{-7/3} <= N1^{-23/10}", Rational(23, 10),
                                   Rational(7, 3), Rel::leq, "N1 = N0^9"));
        } else {
            Interval Blog = in.B_pow ? Interval(*in.B_pow) * logN0 : *in.B_log;
            E.push_back(make_entry("bridge: log B <= -(23/10) log N1", Blog,
                                   Interval(Rational(-23, 10)) * logN1, Rel::leq));
        }
    }

    // first application of the LDT proposition, n = N0, N = N1, a = a_first
    auto p91 = prop91_check(sc.N0, sc.N1, sc.a_first, in.L, in.L2, true);
    for (auto& e : p91.entries) E.push_back(e);
    if (sc.equiv_bound) {
        for (auto& e : prop91_equiv_entries(sc.N0, sc.N1, sc.a_first, *sc.equiv_bound))
            E.push_back(e);
    }

    // LDT size -> relative band: f(N_j) <= budget <= L_N0/20 <= L_Ntil/10
    for (auto& e : scales_lemma_check({sc.x_size, sc.size_budget})) E.push_back(e);
    E.push_back(make_entry("ldt.size: x_size <= N1", Rational(sc.x_size), Rational(sc.N1),
                           Rel::leq));
    E.push_back(make_entry("ldt.size: budget <= L_N0/20",
                           CertValue::from_rational(sc.size_budget),
                           in.L / CertValue::from_long(20), Rel::leq));
    E.push_back(make_entry("ldt.meas: 2.06e186 <= N1", Rational(206 * pow10(184)), Rational(sc.N1),
                           Rel::leq));

    // j-uniform (nN) inequalities closing the induction for all j >= 2:
    // 10^13 (n+1)^8 <= n^9 at n = N1, increasing beyond.
    {
        Interval logn = i_log(Interval(sc.N1));
        Interval lhs = Interval(13l) * i_log(Interval(10l)) +
                       Interval(8l) * (logn + i_exp(-logn)); // log(n+1) <= log n + 1/n
        E.push_back(make_entry("tail.nN1: 10^13 (n+1)^8 <= n^9 at n = N1", lhs,
                               Interval(9l) * logn, Rel::leq,
                               "lhs - rhs decreasing in n, so holds at every later scale"));
        // second (nN) inequality with a = 7 at n = N1, N = n^9:
        // 9 log n - (92/3) log(9 log n) < log(1/2) + (40/3)(log(203/22) + 7/2 + log n)
        Interval lhs2 = Interval(9l) * logn -
                        Interval(Rational(92, 3)) * i_log(Interval(9l) * logn);
        Interval rhs2 = i_log(Interval(Rational(1, 2))) +
                        Interval(Rational(40, 3)) *
                            (i_log(Interval(Rational(203, 22))) + Interval(Rational(7, 2)) + logn);
        E.push_back(make_entry("tail.nN2: (nN) upper window at n = N1, a = 7", lhs2, rhs2,
                               Rel::less, "margin grows like (13/3) log n"));
    }

    cert.first_failure.clear();
    for (auto& e : E) {
        if (e.verdict != Verdict::pass) {
            cert.first_failure = e.name;
            break;
        }
    }
    if (cert.first_failure.empty()) {
        cert.conclusion = in.L.iv / Interval(2l);
    }
    return cert;
}

// The constants-only paper ledger, plus the scale-threshold inequalities and
// the named first-step constants of all three proofs.
inline std::vector<LedgerEntry> verify_paper_ledger() {
    auto out = paper_constants_ledger();
    for (auto& e : scales_lemma_check({pow10(334), Rational(1) / pow10(5)})) out.push_back(e);
    {
        auto e2 = scales_lemma_check({pow10(320), Rational(1) / pow10(4)});
        // the measure-threshold entries repeat; keep only the size pair
        out.push_back(e2[2]);
        out.back().name += " (1e320 variant)";
        out.push_back(e2[3]);
        out.back().name += " (1e320 variant)";
    }
    {
        auto sc = variant_scales(TheoremVariant::main);
        BigInt lhs1 = pow10(13);
        BigInt np1 = sc.N0 + 1;
        for (int i = 0; i < 8; ++i) lhs1 *= np1;
        out.push_back(make_entry("nN1 at (2e37, (2e37)^9)", Rational(lhs1), Rational(sc.N1),
                                 Rel::leq));
        Interval logN = i_log(Interval(sc.N1));
        Interval logn = i_log(Interval(sc.N0));
        Interval lhs2 = logN - Interval(Rational(92, 3)) * i_log(logN);
        Interval rhs2 = i_log(Interval(Rational(1, 2))) +
                        Interval(Rational(40, 3)) *
                            (i_log(Interval(Rational(203, 22))) + Interval(Rational(7, 2)) + logn);
        out.push_back(make_entry("nN2 at (2e37, (2e37)^9, a=7)", lhs2, rhs2));
        out.push_back(make_entry("bridge main: 23/10 <= 21/9", Rational(23, 10), Rational(21, 9),
                                 Rel::leq, "N0^{-21} = N1^{-7/3} <= N1^{-23/10}"));
    }
    for (auto v : {TheoremVariant::main2, TheoremVariant::main3}) {
        auto sc = variant_scales(v);
        for (auto& e : prop91_equiv_entries(sc.N0, sc.N1, sc.a_first, *sc.equiv_bound)) {
            e.name += std::string(" (") + variant_name(v) + ")";
            out.push_back(e);
        }
        Interval logN0 = i_log(Interval(sc.N0));
        Interval logN1 = i_log(Interval(sc.N1));
        out.push_back(make_entry(std::string("bridge ") + variant_name(v),
                                 Interval(-sc.measure_power) * logN0,
                                 Interval(Rational(-23, 10)) * logN1, Rel::leq));
    }
    // the strengthening used for condition (I): 36^8 < 10^13
    {
        BigInt p36 = 1;
        for (int i = 0; i < 8; ++i) p36 *= 36;
        out.push_back(make_entry("36^8 < 10^13", Rational(p36), Rational(pow10(13))));
    }
    // condition (IX) reduction: (2 log 2 + 1)/(2 log 2) < 1.8
    {
        Interval l2 = i_log(Interval(2l));
        out.push_back(make_entry("(2log2+1)/(2log2) < 9/5",
                                 (Interval(2l) * l2 + Interval(1l)) / (Interval(2l) * l2),
                                 Interval(Rational(9, 5))));
    }
    return out;
}

} // namespace skewlyap
