#pragma once

// JSON emission for the report types. Every run carries a provenance
// header (schema, version, seed, precision, flags) so that reports can be
// replayed bit for bit from their own metadata.

#include <json.hpp>

#include <string>

#include "avalanche.hpp"
#include "certifier.hpp"
#include "harmonic.hpp"
#include "lyapunov.hpp"
#include "version.hpp"

namespace skewlyap {

using json = nlohmann::json;

inline json provenance(const std::string& command, const json& flags) {
    return {{"schema", report_schema},
            {"version", version},
            {"command", command},
            {"flags", flags}};
}

inline json to_json(const Interval& iv) {
    return {{"lo", iv.lower_d()}, {"hi", iv.upper_d()}, {"enclosure", iv.to_string(30)}};
}

inline json to_json(const LedgerEntry& e) {
    json j{{"name", e.name},
           {"verdict", verdict_name(e.verdict)},
           {"relation", e.rel == Rel::less ? "<" : "<="},
           {"lhs", to_json(e.lhs)},
           {"rhs", to_json(e.rhs)},
           {"margin", to_json(e.margin)},
           {"exact", e.exact}};
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

inline json to_json(const std::vector<LedgerEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) arr.push_back(to_json(e));
    return arr;
}

inline json to_json(const Certificate& c) {
    json j{{"variant", variant_name(c.variant)},
           {"label", c.label},
           {"entries", to_json(c.entries)}};
    if (c.conclusion)
        j["conclusion"] = to_json(*c.conclusion);
    else
        j["first_failure"] = c.first_failure;
    return j;
}

inline json to_json(const ScaleStats& st) {
    return {{"N", st.N},
            {"L_N", st.L_N},
            {"stderr_L", st.stderr_L},
            {"L_2N", st.L_2N},
            {"stderr_L2", st.stderr_L2},
            {"B_N_measure", st.B_N_measure},
            {"B_2N_measure", st.B_2N_measure},
            {"B_N_count", st.B_N_count},
            {"B_2N_count", st.B_2N_count},
            {"B_N_upper95", st.B_N_upper95},
            {"B_2N_upper95", st.B_2N_upper95},
            {"samples", st.samples},
            {"seed", st.seed},
            {"degenerate", st.degenerate}};
}

inline json to_json(const InitialConditionsReport& r) {
    return {{"variant", variant_name(r.variant)},
            {"cond_i", verdict_name(r.cond_i)},
            {"cond_ii", verdict_name(r.cond_ii)},
            {"cond_iii", verdict_name(r.cond_iii)},
            {"threshold_i", r.threshold_i},
            {"measure_threshold_log10", r.measure_threshold_log10},
            {"cp_resolution", r.cp_resolution},
            {"note", r.note}};
}

inline bool all_pass(const std::vector<LedgerEntry>& entries) {
    for (const auto& e : entries)
        if (e.verdict != Verdict::pass) return false;
    return true;
}

inline bool any_fail(const std::vector<LedgerEntry>& entries) {
    for (const auto& e : entries)
        if (e.verdict == Verdict::fail) return true;
    return false;
}

} // namespace skewlyap
