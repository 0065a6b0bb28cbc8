// Batch command surface over the library: constants ledgers, harmonic
// oracles, Lyapunov estimation and sweeps, AP fuzzing, diophantine checks,
// and the certifier. Machine-readable reports on stdout.
//
// Exit codes: 0 all requested checks pass, 1 any certified failure,
// 2 indeterminate verdicts only, 64 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "skewlyap/avalanche.hpp"
#include "skewlyap/certifier.hpp"
#include "skewlyap/diophantine.hpp"
#include "skewlyap/harmonic.hpp"
#include "skewlyap/lyapunov.hpp"
#include "skewlyap/parse.hpp"
#include "skewlyap/report.hpp"

using namespace skewlyap;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_indeterminate = 2;
constexpr int exit_usage = 64;

unsigned thread_count(int flag_value) {
    if (flag_value > 0) return (unsigned)flag_value;
    if (const char* env = std::getenv("SKEWLYAP_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return (unsigned)v;
    }
    return 1;
}

int ledger_exit(const std::vector<LedgerEntry>& entries) {
    if (all_pass(entries)) return exit_pass;
    return any_fail(entries) ? exit_fail : exit_indeterminate;
}

TheoremVariant parse_variant(const std::string& s) {
    if (s == "main") return TheoremVariant::main;
    if (s == "main2") return TheoremVariant::main2;
    if (s == "main3") return TheoremVariant::main3;
    throw CLI::ValidationError("--variant must be main|main2|main3");
}

struct SweepArgs {
    double lambda = 0.5;
    double E = 0.0;
    std::uint64_t N = 1000;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    int e_count = 33;
    int lambda_count = 0; // > 0 switches to a lambda sweep at fixed E
    int threads = 0;
    std::string format = "csv"; // csv | plot-data | json
};

int run_sweep(const SweepArgs& a) {
    SamplingPlan plan{SamplingMode::monte_carlo, a.samples, a.seed, Accumulation::plain,
                      thread_count(a.threads)};
    json flags{{"lambda", a.lambda}, {"N", a.N}, {"samples", a.samples}, {"seed", a.seed},
               {"E_count", a.e_count}, {"lambda_count", a.lambda_count}, {"format", a.format}};
    auto header = provenance("sweep", flags);

    if (a.lambda_count > 0) {
        // lambda sweep at fixed E: weak-coupling ratio columns
        std::vector<std::array<double, 4>> rows;
        for (int i = 0; i < a.lambda_count; ++i) {
            double lam = 0.5 + 0.5 * (a.lambda_count == 1 ? 0 : (double)i / (a.lambda_count - 1));
            auto p = CocycleParams::make(lam, a.E);
            auto [L, se] = estimate_L(p, a.N, plan);
            (void)se;
            rows.push_back({lam, L, lam * lam, L / (lam * lam)});
        }
        if (a.format == "json") {
            json j{{"provenance", header}, {"rows", json::array()}};
            for (auto& r : rows)
                j["rows"].push_back({{"lambda", r[0]}, {"L_N", r[1]}, {"lambda_sq", r[2]},
                                     {"ratio", r[3]}});
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "# skewlyap sweep-lambda schema=" << report_schema << " version=" << version
                      << " seed=" << a.seed << " N=" << a.N << " samples=" << a.samples
                      << " E=" << a.E << "\n";
            std::cout << "# lambda L_N lambda^2 L_N/lambda^2\n";
            for (auto& r : rows) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%.6f %.10g %.6f %.10g\n", r[0], r[1], r[2], r[3]);
                std::cout << buf;
            }
        }
        return exit_pass;
    }

    auto p0 = CocycleParams::make(a.lambda, 0.0);
    (void)p0;
    std::vector<SweepRow> rows;
    for (double E : e_grid(a.lambda, a.e_count)) {
        auto p = CocycleParams::make(a.lambda, E);
        auto st = estimate_scale_stats(p, a.N, plan);
        rows.push_back({E, st.L_N, st.stderr_L, st.B_N_measure, st.B_N_upper95});
    }
    if (a.format == "json") {
        json j{{"provenance", header}, {"rows", json::array()}};
        for (auto& r : rows)
            j["rows"].push_back({{"E", r.E}, {"L_N", r.L_N}, {"stderr", r.stderr_},
                                 {"B_N", r.B_N}, {"upper95", r.upper95}});
        std::cout << j.dump(2) << "\n";
    } else if (a.format == "plot-data") {
        std::cout << "# skewlyap sweep schema=" << report_schema << " version=" << version
                  << " seed=" << a.seed << " lambda=" << a.lambda << " N=" << a.N
                  << " samples=" << a.samples << "\n";
        std::cout << "# E L_N stderr B_N upper95\n";
        for (auto& r : rows) {
            char buf[200];
            std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g %.10g %.10g\n", r.E, r.L_N,
                          r.stderr_, r.B_N, r.upper95);
            std::cout << buf;
        }
    } else {
        std::cout << "# skewlyap sweep schema=" << report_schema << " version=" << version
                  << " seed=" << a.seed << " lambda=" << a.lambda << " N=" << a.N
                  << " samples=" << a.samples << "\n";
        std::cout << "E,L_N,stderr,B_N,upper95\n";
        for (auto& r : rows) {
            char buf[200];
            std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g\n", r.E, r.L_N,
                          r.stderr_, r.B_N, r.upper95);
            std::cout << buf;
        }
    }
    return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewlyap: effective multiscale toolkit for the skew-shift cocycle"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file merged under explicit flags");

    // ---- constants ----
    double cR = 4, cR1 = 3, cR2 = 2, clambda = 0.5;
    bool cjson = true;
    auto* c_cmd = app.add_subcommand("constants", "evaluate the explicit constants and their ledger");
    c_cmd->add_option("--R", cR);
    c_cmd->add_option("--R1", cR1);
    c_cmd->add_option("--R2", cR2);
    c_cmd->add_option("--lambda", clambda);
    c_cmd->add_flag("--json", cjson);

    // ---- verify-harmonic ----
    std::uint64_t hgrid = 1 << 16, hseed = 7;
    bool hjson = true;
    auto* h_cmd = app.add_subcommand("verify-harmonic", "quadrature and Hilbert-transform oracles");
    h_cmd->add_option("--grid", hgrid);
    h_cmd->add_option("--seed", hseed);
    h_cmd->add_flag("--json", hjson);

    // ---- estimate / ldt ----
    double elambda = 0.5, eE = 0.0;
    std::uint64_t eN = 1000, esamples = 1000, eseed = 42;
    std::string emode = "monte-carlo", eprec = "double", evariant;
    int ethreads = 0;
    auto* e_cmd = app.add_subcommand("estimate", "sample mean and stderr of u_N");
    auto* l_cmd = app.add_subcommand("ldt", "two-pass scale statistics incl. |B_N|");
    for (auto* cmd : {e_cmd, l_cmd}) {
        cmd->add_option("--lambda", elambda);
        cmd->add_option("--E", eE);
        cmd->add_option("--N", eN);
        cmd->add_option("--samples", esamples);
        cmd->add_option("--seed", eseed);
        cmd->add_option("--mode", emode, "grid | monte-carlo");
        cmd->add_option("--precision", eprec, "double | double-double");
        cmd->add_option("--threads", ethreads);
    }
    l_cmd->add_option("--variant", evariant, "also run theorem initial-condition checks");

    // ---- sweep ----
    SweepArgs sw;
    auto* s_cmd = app.add_subcommand("sweep", "E-grid (or lambda-grid) sweep of scale stats");
    s_cmd->add_option("--lambda", sw.lambda);
    s_cmd->add_option("--E", sw.E);
    s_cmd->add_option("--N", sw.N);
    s_cmd->add_option("--samples", sw.samples);
    s_cmd->add_option("--seed", sw.seed);
    s_cmd->add_option("--E-count", sw.e_count);
    s_cmd->add_option("--lambda-count", sw.lambda_count);
    s_cmd->add_option("--threads", sw.threads);
    bool sw_csv = false, sw_plot = false, sw_json = false;
    s_cmd->add_flag("--csv", sw_csv);
    s_cmd->add_flag("--plot-data", sw_plot);
    s_cmd->add_flag("--json", sw_json);

    // ---- ap-fuzz ----
    std::uint64_t ftrials = 10000, fnmax = 100, fseed = 1;
    bool fjson = true;
    auto* f_cmd = app.add_subcommand("ap-fuzz", "avalanche-principle hypothesis/conclusion fuzzing");
    f_cmd->add_option("--trials", ftrials);
    f_cmd->add_option("--n-max", fnmax);
    f_cmd->add_option("--seed", fseed);
    f_cmd->add_flag("--json", fjson);

    // ---- dioph ----
    std::uint64_t dkmax = 1000000;
    bool djson = true;
    auto* d_cmd = app.add_subcommand("dioph", "golden-ratio continued fraction and norm bounds");
    d_cmd->add_option("--kmax", dkmax);
    d_cmd->add_flag("--json", djson);

    // ---- weyl ----
    std::uint64_t wK = 1000, wp1 = 30, wp2 = 10000, wtrials = 100, wseed = 3;
    bool wjson = true;
    auto* w_cmd = app.add_subcommand("weyl", "S1..S5 exponential-sum bounds");
    w_cmd->add_option("--K", wK);
    w_cmd->add_option("--p1", wp1);
    w_cmd->add_option("--p2", wp2);
    w_cmd->add_option("--trials", wtrials);
    w_cmd->add_option("--seed", wseed);
    w_cmd->add_flag("--json", wjson);

    // ---- certify ----
    std::string cvariant = "main3", cinput, cLN0, cL2N0, cdiff, cBpow, clog10B;
    int cprec = 128;
    bool certjson = true;
    auto* cert_cmd = app.add_subcommand("certify", "replay a theorem proof from finite-size inputs");
    cert_cmd->add_option("--variant", cvariant, "main | main2 | main3");
    cert_cmd->add_option("--input", cinput, "stats.json from the ldt subcommand");
    cert_cmd->add_option("--LN0", cLN0, "decimal, exact");
    cert_cmd->add_option("--L2N0", cL2N0, "decimal, exact");
    cert_cmd->add_option("--diff", cdiff, "L_N0 - L_2N0 as decimal; alternative to --L2N0");
    cert_cmd->add_option("--B-pow", cBpow, "measure bound as N0 exponent p (B <= N0^p)");
    cert_cmd->add_option("--log10-B", clog10B, "log10 of max(|B_N0|,|B_2N0|)");
    cert_cmd->add_option("--precision", cprec, "interval endpoint precision in bits");
    cert_cmd->add_flag("--json", certjson);

    // ---- verify-paper ----
    bool vjson = true;
    int vprec = 128;
    auto* v_cmd = app.add_subcommand("verify-paper", "full explicit-numbers ledger, constants only");
    v_cmd->add_flag("--json", vjson);
    v_cmd->add_option("--precision", vprec);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_cmd->parsed()) {
            Radii rd{cR, cR1, cR2};
            auto tbl = make_constants<double>(rd);
            auto eps = check_eps_small(rd);
            json j{{"provenance", provenance("constants", {{"R", cR}, {"R1", cR1}, {"R2", cR2},
                                                           {"lambda", clambda}})},
                   {"B0", tbl.B0}, {"B1", tbl.B1}, {"B2", tbl.B2}, {"B3", tbl.B3},
                   {"C", tbl.C}, {"C0", tbl.C0},
                   {"U1", u_lambda(clambda, 1.0)},
                   {"U_R", u_lambda(clambda, cR)},
                   {"B4m4", b4m4(clambda, cR)},
                   {"eps_small", {{"pass", eps.pass}, {"margin", to_json(eps.margin)}}}};
            std::vector<LedgerEntry> ledger;
            if (cR == 4 && cR1 == 3 && cR2 == 2) {
                ledger = paper_constants_ledger();
                j["ledger"] = to_json(ledger);
            }
            std::cout << j.dump(2) << "\n";
            if (!eps.pass) return exit_fail;
            return ledger.empty() ? exit_pass : ledger_exit(ledger);
        }

        if (h_cmd->parsed()) {
            auto pd = verify_poisson_derivative_integrals(2.0);
            auto pd3 = verify_poisson_derivative_integrals(3.0);
            auto h1 = verify_h1_bound();
            auto atom17 = verify_atom_bounds(1.0 / 17, 0.0, hgrid);
            auto atom36 = verify_atom_bounds(1.0 / 36, 0.0, hgrid);
            auto ei = verify_exp_integrability(pi_d / 4, 100, hgrid, hseed);
            bool pass = std::fabs(pd.measured1 / pd.closed1 - 1) < 1e-8 &&
                        std::fabs(pd.measured2 / pd.closed2 - 1) < 1e-8 &&
                        std::fabs(pd3.measured1 / pd3.closed1 - 1) < 1e-8 &&
                        std::fabs(pd3.measured2 / pd3.closed2 - 1) < 1e-8 &&
                        h1.h1 < 0.65 && h1.h1 > 0.6 &&
                        atom17.l1 <= 4.5 * 1.02 && atom17.linf <= 2.5 * 17 * 1.02 &&
                        atom36.l1 <= 4.2 * 1.02 && ei.worst <= ei.bound;
            json j{{"provenance", provenance("verify-harmonic", {{"grid", hgrid}, {"seed", hseed}})},
                   {"poisson_R2_2", {{"measured1", pd.measured1}, {"closed1", pd.closed1},
                                     {"measured2", pd.measured2}, {"closed2", pd.closed2},
                                     {"theta0", pd.theta0}}},
                   {"h1", h1.h1},
                   {"atom_eps_1_17", {{"l1", atom17.l1}, {"linf", atom17.linf}}},
                   {"atom_eps_1_36", {{"l1", atom36.l1}, {"linf", atom36.linf}}},
                   {"exp_integrability", {{"worst", ei.worst}, {"bound", ei.bound}}},
                   {"pass", pass}};
            std::cout << j.dump(2) << "\n";
            return pass ? exit_pass : exit_fail;
        }

        if (e_cmd->parsed() || l_cmd->parsed()) {
            SamplingPlan plan;
            plan.mode = emode == "grid" ? SamplingMode::grid : SamplingMode::monte_carlo;
            plan.samples = esamples;
            plan.seed = eseed;
            plan.precision = eprec == "double-double" ? Accumulation::double_double
                                                      : Accumulation::plain;
            plan.threads = thread_count(ethreads);
            auto p = CocycleParams::make(elambda, eE);
            json flags{{"lambda", elambda}, {"E", eE}, {"N", eN}, {"samples", esamples},
                       {"seed", eseed}, {"mode", emode}, {"precision", eprec}};
            if (e_cmd->parsed()) {
                auto [L, se] = estimate_L(p, eN, plan);
                json j{{"provenance", provenance("estimate", flags)},
                       {"N", eN}, {"L_N", L}, {"stderr", se}};
                std::cout << j.dump(2) << "\n";
                return exit_pass;
            }
            auto st = estimate_scale_stats(p, eN, plan);
            json j{{"provenance", provenance("ldt", flags)}, {"stats", to_json(st)}};
            if (!evariant.empty()) {
                auto rep = check_initial_conditions(st, parse_variant(evariant));
                j["initial_conditions"] = to_json(rep);
            }
            std::cout << j.dump(2) << "\n";
            return exit_pass;
        }

        if (s_cmd->parsed()) {
            if (sw_json) sw.format = "json";
            else if (sw_plot) sw.format = "plot-data";
            else sw.format = "csv";
            return run_sweep(sw);
        }

        if (f_cmd->parsed()) {
            SplitMix64 rng(fseed);
            int violations = 0;
            double worst_i_margin = 1e300, worst_ii_margin = 1e300;
            std::uint64_t pair_checks = 0, pair_viol = 0;
            for (std::uint64_t t = 0; t < ftrials; ++t) {
                double eps = rng.uniform(0.01, 0.1);
                double kap = eps * eps * rng.uniform(1e-4, 0.1);
                auto params = APParams::make(eps, kap);
                std::size_t n = 1 + (rng.next() % fnmax);
                auto chain = make_admissible_chain(rng.next(), n, params);
                auto rep = ap_verify(chain, params);
                if (!rep.hypotheses_ok || !rep.conclusion_i || !rep.conclusion_ii) ++violations;
                worst_i_margin = std::min(worst_i_margin,
                                          rep.bound_i - std::max(rep.delta_in, rep.delta_out));
                worst_ii_margin = std::min({worst_ii_margin, rep.log_upper - rep.log_ratio,
                                            rep.log_ratio - rep.log_lower});
                if (n >= 2) {
                    auto an = angles(chain[0], chain[1]);
                    double rho = rho_pair(chain[0], chain[1]);
                    ++pair_checks;
                    if (!(an.alpha <= rho * (1 + 1e-12) + 1e-15 &&
                          rho <= an.beta * (1 + 1e-12) + 1e-15))
                        ++pair_viol;
                }
            }
            json j{{"provenance", provenance("ap-fuzz", {{"trials", ftrials}, {"n_max", fnmax},
                                                         {"seed", fseed}})},
                   {"violations", violations},
                   {"worst_margin_i", worst_i_margin},
                   {"worst_margin_ii_log", worst_ii_margin},
                   {"pair_checks", pair_checks},
                   {"pair_violations", pair_viol}};
            std::cout << j.dump(2) << "\n";
            return violations == 0 && pair_viol == 0 ? exit_pass : exit_fail;
        }

        if (d_cmd->parsed()) {
            Frac128 w = golden_ratio_frac();
            bool norm_ok = true;
            std::uint64_t first_bad = 0;
            for (std::uint64_t k = 1; k <= dkmax; ++k) {
                if (!torus_norm_at_least_inv3k(k, w)) {
                    norm_ok = false;
                    first_bad = k;
                    break;
                }
            }
            auto cf = continued_fraction(w, 50);
            bool cf_ok = cf.partial_quotients.size() == 50;
            for (auto q : cf.partial_quotients)
                if (q != 1) cf_ok = false;
            auto sep = gold_separation(1e-3, w);
            json j{{"provenance", provenance("dioph", {{"kmax", dkmax}})},
                   {"norm_bound_ok", norm_ok},
                   {"first_violation", first_bad},
                   {"cf_depth50_all_ones", cf_ok},
                   {"q50", cf.convergents.back().second},
                   {"separation_sigma_1e-3", {{"min_ok", sep.min_ok}, {"gap_ok", sep.gap_ok},
                                              {"hits", sep.hits.size()}}}};
            std::cout << j.dump(2) << "\n";
            return norm_ok && cf_ok && sep.min_ok && sep.gap_ok ? exit_pass : exit_fail;
        }

        if (w_cmd->parsed()) {
            Frac128 w = golden_ratio_frac();
            auto s1 = weyl_S1(wK, wp2, w);
            auto tau = divisor_max(std::min<std::uint64_t>(wp1 * wK, 10000000ull));
            double worst2 = 0, worst3 = 0;
            bool ok = s1.ok;
            for (std::uint64_t t = 0; t < wtrials; ++t) {
                Frac128 y = counter_frac128(wseed, 9, t);
                auto r = weyl_S2_S3(wK, wp1, std::max(wK, std::min<std::uint64_t>(wp2, 200)), y, w,
                                    tau.tau_star);
                worst2 = std::max(worst2, r.s2 / r.bound2);
                worst3 = std::max(worst3, r.s3 / r.bound3);
                ok = ok && r.ok2 && r.ok3;
            }
            auto s45 = weyl_S4_S5(wK, wp1, w);
            ok = ok && s45.ok4 && s45.ok5 && tau.ok_nicolas && tau.ok_sqrt && tau.ok_eighth;
            json j{{"provenance", provenance("weyl", {{"K", wK}, {"p1", wp1}, {"p2", wp2},
                                                      {"trials", wtrials}, {"seed", wseed}})},
                   {"S1", {{"measured", s1.measured}, {"bound", s1.bound}}},
                   {"S2_worst_ratio", worst2},
                   {"S3_worst_ratio", worst3},
                   {"S4", s45.s4}, {"S5", s45.s5},
                   {"tau_star", tau.tau_star},
                   {"pass", ok}};
            std::cout << j.dump(2) << "\n";
            return ok ? exit_pass : exit_fail;
        }

        if (cert_cmd->parsed()) {
            PrecisionGuard guard((mpfr_prec_t)cprec);
            TheoremVariant variant = parse_variant(cvariant);
            auto sc = variant_scales(variant);
            CertifyInputs in;
            if (!cinput.empty()) {
                std::ifstream f(cinput);
                if (!f) throw CLI::ValidationError("cannot open " + cinput);
                json j = json::parse(f);
                auto st = j.contains("stats") ? j["stats"] : j;
                double L = st.at("L_N").get<double>(), seL = st.at("stderr_L").get<double>();
                double L2 = st.at("L_2N").get<double>(), seL2 = st.at("stderr_L2").get<double>();
                in.L = CertValue::from_interval(Interval(L - 3 * seL, L + 3 * seL));
                in.L2 = CertValue::from_interval(Interval(L2 - 3 * seL2, L2 + 3 * seL2));
                double up = std::max(st.at("B_N_upper95").get<double>(),
                                     st.at("B_2N_upper95").get<double>());
                in.B_log = i_log(Interval(up));
                in.statistical = true;
                double N0d = (double)st.at("N").get<std::uint64_t>();
                if (N0d != variant_thresholds(variant).N0)
                    throw CLI::ValidationError("stats N does not match the variant N0");
            } else {
                if (cLN0.empty()) throw CLI::ValidationError("need --input or --LN0");
                Rational L = parse_decimal_rational(cLN0);
                in.L = CertValue::from_rational(L);
                if (!cL2N0.empty())
                    in.L2 = CertValue::from_rational(parse_decimal_rational(cL2N0));
                else if (!cdiff.empty())
                    in.L2 = CertValue::from_rational(L - parse_decimal_rational(cdiff));
                else
                    throw CLI::ValidationError("need --L2N0 or --diff");
                if (!cBpow.empty())
                    in.B_pow = parse_decimal_rational(cBpow);
                else if (!clog10B.empty())
                    in.B_log = Interval(parse_decimal_rational(clog10B)) * i_log(Interval(10l));
                else
                    throw CLI::ValidationError("need --B-pow or --log10-B");
            }
            auto cert = certify_theorem(variant, in);
            json j{{"provenance", provenance("certify", {{"variant", cvariant},
                                                         {"precision", cprec}})},
                   {"certificate", to_json(cert)}};
            std::cout << j.dump(2) << "\n";
            if (cert.conclusion) return exit_pass;
            return any_fail(cert.entries) ? exit_fail : exit_indeterminate;
        }

        if (v_cmd->parsed()) {
            PrecisionGuard guard((mpfr_prec_t)vprec);
            auto ledger = verify_paper_ledger();
            json j{{"provenance", provenance("verify-paper", {{"precision", vprec}})},
                   {"entries", to_json(ledger)},
                   {"total", ledger.size()},
                   {"all_pass", all_pass(ledger)}};
            std::cout << j.dump(2) << "\n";
            return ledger_exit(ledger);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "skewlyap: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "skewlyap: " << e.what() << "\n";
        return exit_fail;
    }
    return exit_usage;
}
