#pragma once

// JSON and CSV round-trips for the library's value types.  Every integer
// that can outgrow machine words travels as a decimal string, so artifacts
// are exact and re-parse to bit-identical objects.  Serialization order is
// fixed (ordered_json), which makes artifact bytes a function of the data
// alone: the same inputs always produce the same file.

#include <array>
#include <cstdio>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "walshtf/decomp.hpp"
#include "walshtf/dyadic_interval.hpp"
#include "walshtf/errors.hpp"
#include "walshtf/exact_scalar.hpp"
#include "walshtf/exponents.hpp"
#include "walshtf/harness.hpp"
#include "walshtf/norms.hpp"
#include "walshtf/operators.hpp"
#include "walshtf/phaseplane.hpp"
#include "walshtf/step_function.hpp"
#include "walshtf/version.hpp"

namespace walshtf {

using Json = nlohmann::ordered_json;

namespace serialize_detail {

inline const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

inline std::string need_string(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_string())
        throw ParseError(std::string("key '") + key + "' must be a string");
    return v.get<std::string>();
}

inline long need_long(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_integer())
        throw ParseError(std::string("key '") + key + "' must be an integer");
    return v.get<long>();
}

inline std::uint64_t need_u64(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0 && !v.is_number_unsigned()))
        throw ParseError(std::string("key '") + key +
                         "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

inline mpz_class parse_mpz(const std::string& s) {
    try {
        return mpz_class(s, 10);
    } catch (const std::exception&) {
        throw ParseError("bad integer literal '" + s + "'");
    }
}

// Shortest-round-trip decimal form; doubles in artifacts are advisory
// (the exact fields are authoritative) but still deterministic.
inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace serialize_detail

// ---------------------------------------------------------------- scalars

inline Json scalar_json(const ExactScalar& x) {
    return Json{{"a", x.a().get_str()},
                {"b", x.b().get_str()},
                {"m", x.m()},
                {"value", x.to_double()}};
}

inline ExactScalar scalar_from_json(const Json& j) {
    using serialize_detail::need_long;
    using serialize_detail::need_string;
    using serialize_detail::parse_mpz;
    return ExactScalar(parse_mpz(need_string(j, "a")),
                       parse_mpz(need_string(j, "b")), need_long(j, "m"));
}

inline std::string rational_string(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return c.get_str();
}

inline mpq_class rational_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("rational must be a string");
    return rational_from_string(j.get<std::string>());
}

// ------------------------------------------------- phase-plane geometry

inline Json interval_json(const DyadicInterval& iv) {
    return Json{{"scale", iv.scale}, {"index", iv.index}};
}

inline DyadicInterval interval_from_json(const Json& j) {
    using serialize_detail::need_long;
    return DyadicInterval{need_long(j, "scale"), need_long(j, "index")};
}

inline Json quartile_json(const Quartile& p) {
    return Json{{"k", p.k}, {"n", p.n}, {"l", p.l}};
}

inline Quartile quartile_from_json(const Json& j) {
    using serialize_detail::need_long;
    return Quartile(need_long(j, "k"), need_long(j, "n"), need_long(j, "l"));
}

inline Json collection_json(const std::vector<Quartile>& coll) {
    Json arr = Json::array();
    for (const auto& p : coll) arr.push_back(quartile_json(p));
    return arr;
}

inline std::vector<Quartile> collection_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("collection must be an array");
    std::vector<Quartile> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(quartile_from_json(e));
    return out;
}

inline Json tree_json(const Tree& t) {
    return Json{{"top", quartile_json(t.top)},
                {"kind", t.kind},
                {"members", collection_json(t.members)}};
}

// -------------------------------------------------------- step functions

inline Json step_function_json(const StepFunction& f) {
    Json vals = Json::array();
    for (const auto& v : f.values) vals.push_back(scalar_json(v));
    return Json{{"window", interval_json(f.window)},
                {"resolution", f.resolution},
                {"values", std::move(vals)}};
}

inline StepFunction step_function_from_json(const Json& j) {
    using serialize_detail::need;
    using serialize_detail::need_long;
    StepFunction f(interval_from_json(need(j, "window")),
                   need_long(j, "resolution"));
    const Json& vals = need(j, "values");
    if (!vals.is_array() || vals.size() != f.values.size())
        throw ParseError("step function value count does not match the grid");
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = scalar_from_json(vals[i]);
    return f;
}

inline Json meas_set_json(const MeasSet& m) {
    std::string bits(m.cells.size(), '0');
    for (std::size_t i = 0; i < m.cells.size(); ++i)
        if (m.cells[i]) bits[i] = '1';
    return Json{{"window", interval_json(m.window)},
                {"resolution", m.resolution},
                {"cells", std::move(bits)}};
}

inline MeasSet meas_set_from_json(const Json& j) {
    using serialize_detail::need;
    using serialize_detail::need_long;
    using serialize_detail::need_string;
    MeasSet m(interval_from_json(need(j, "window")), need_long(j, "resolution"));
    std::string bits = need_string(j, "cells");
    if (bits.size() != m.cells.size())
        throw ParseError("cell string length does not match the grid");
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw ParseError("cell string must contain only '0' and '1'");
        m.cells[i] = (bits[i] == '1');
    }
    return m;
}

// ------------------------------------------------- coefficients and norms

template <class S>
inline Json coeff_seq_json(const BasicCoeffSeq<S>& a) {
    Json arr = Json::array();
    for (const auto& [p, v] : a.entries)
        arr.push_back(Json{{"quartile", quartile_json(p)},
                           {"value", scalar_json(norm_detail::exact_value(v))}});
    return Json{{"slot", a.slot}, {"entries", std::move(arr)}};
}

inline Json norm_value_json(const NormValue& nv) {
    return Json{{"square", scalar_json(nv.square)}, {"value", nv.value}};
}

inline Json norm_report_json(const NormReport& r) {
    Json size = Json::array();
    Json energy = Json::array();
    for (std::size_t j = 0; j < 3; ++j) {
        size.push_back(Json{{"slot", j + 1},
                            {"norm", norm_value_json(r.size[j].norm)},
                            {"tree", tree_json(r.size[j].tree)}});
        energy.push_back(Json{{"slot", j + 1},
                              {"norm", norm_value_json(r.energy[j].norm)},
                              {"family", collection_json(r.energy[j].family)},
                              {"used_flow", r.energy[j].used_flow},
                              {"nodes", r.energy[j].nodes}});
    }
    return Json{{"size", std::move(size)}, {"energy", std::move(energy)}};
}

// --------------------------------------------------------- decomposition

inline Json partition_json(const PartitionResult& part) {
    Json levels = Json::array();
    for (const auto& lvl : part.levels) {
        Json trees = Json::array();
        for (const auto& t : lvl.trees)
            trees.push_back(Json{{"top", quartile_json(t.tree.top)},
                                 {"kind", t.tree.kind},
                                 {"member_count", t.tree.members.size()},
                                 {"members", collection_json(t.tree.members)},
                                 {"pass", t.pass},
                                 {"primed", t.primed},
                                 {"step", t.step}});
        levels.push_back(Json{{"n", lvl.n},
                              {"part_size", lvl.part.size()},
                              {"trees", std::move(trees)}});
    }
    Json size_sq = Json::array();
    Json energy_sq = Json::array();
    for (std::size_t j = 0; j < 3; ++j) {
        size_sq.push_back(scalar_json(part.size_sq[j]));
        energy_sq.push_back(scalar_json(part.energy_sq[j]));
    }
    return Json{{"n_start", part.n_start},
                {"levels", std::move(levels)},
                {"stripped", collection_json(part.stripped)},
                {"size_sq", std::move(size_sq)},
                {"energy_sq", std::move(energy_sq)}};
}

// ----------------------------------------------------------- experiments

inline std::string regime_string(Regime r) { return regime_name(r); }

inline Regime regime_from_string(const std::string& s) {
    std::string flat;
    for (char c : s)
        if (c != '-' && c != '_')
            flat.push_back(static_cast<char>(std::tolower(
                static_cast<unsigned char>(c))));
    if (flat == "bht") return Regime::bht;
    if (flat == "a9a12" || flat == "a5a12") return Regime::a9_a12;
    if (flat == "a1a2" || flat == "a1a4") return Regime::a1_a2;
    throw ParseError("unknown regime '" + s + "'");
}

inline Json experiment_config_json(const ExperimentConfig& cfg) {
    Json alpha = Json::array();
    for (const auto& q : cfg.alpha) alpha.push_back(rational_string(q));
    Json scales = Json::array();
    for (long s : cfg.measure_exponents) scales.push_back(s);
    return Json{{"seed", cfg.seed},
                {"regime", regime_string(cfg.regime)},
                {"alpha", std::move(alpha)},
                {"cell_exponent", cfg.cell_exponent},
                {"window_margin", cfg.window_margin},
                {"k_range", cfg.k_range},
                {"freq_max", cfg.freq_max},
                {"outer_count", cfg.outer_count},
                {"inner_count", cfg.inner_count},
                {"measure_exponents", std::move(scales)},
                {"threshold_c", rational_string(cfg.threshold_c)},
                {"restarts", cfg.restarts},
                {"trials_per_scale", cfg.trials_per_scale},
                {"denominator_index", cfg.denominator_index},
                {"jobs", cfg.jobs}};
}

inline ExperimentConfig experiment_config_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("experiment config must be an object");
    static const char* known[] = {
        "seed",          "regime",        "alpha",
        "cell_exponent", "window_margin", "k_range",
        "freq_max",      "outer_count",   "inner_count",
        "measure_exponents", "threshold_c", "restarts",
        "trials_per_scale", "denominator_index", "jobs"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = (ok || key == k);
        if (!ok) throw ParseError("unknown experiment config key '" + key + "'");
    }
    ExperimentConfig cfg;
    if (j.contains("seed")) cfg.seed = serialize_detail::need_u64(j, "seed");
    if (j.contains("regime"))
        cfg.regime =
            regime_from_string(serialize_detail::need_string(j, "regime"));
    if (j.contains("alpha")) {
        const Json& a = j.at("alpha");
        if (!a.is_array()) throw ParseError("alpha must be an array");
        cfg.alpha.clear();
        for (const auto& e : a) cfg.alpha.push_back(rational_from_json(e));
    }
    if (j.contains("cell_exponent"))
        cfg.cell_exponent = serialize_detail::need_long(j, "cell_exponent");
    if (j.contains("window_margin"))
        cfg.window_margin = serialize_detail::need_long(j, "window_margin");
    if (j.contains("k_range"))
        cfg.k_range = serialize_detail::need_long(j, "k_range");
    if (j.contains("freq_max"))
        cfg.freq_max = serialize_detail::need_long(j, "freq_max");
    if (j.contains("outer_count"))
        cfg.outer_count = static_cast<std::size_t>(
            serialize_detail::need_u64(j, "outer_count"));
    if (j.contains("inner_count"))
        cfg.inner_count = static_cast<std::size_t>(
            serialize_detail::need_u64(j, "inner_count"));
    if (j.contains("measure_exponents")) {
        const Json& a = j.at("measure_exponents");
        if (!a.is_array())
            throw ParseError("measure_exponents must be an array");
        cfg.measure_exponents.clear();
        for (const auto& e : a) {
            if (!e.is_number_integer())
                throw ParseError("measure_exponents entries must be integers");
            cfg.measure_exponents.push_back(e.get<long>());
        }
    }
    if (j.contains("threshold_c"))
        cfg.threshold_c = rational_from_json(j.at("threshold_c"));
    if (j.contains("restarts"))
        cfg.restarts = static_cast<int>(serialize_detail::need_long(j, "restarts"));
    if (j.contains("trials_per_scale"))
        cfg.trials_per_scale =
            static_cast<int>(serialize_detail::need_long(j, "trials_per_scale"));
    if (j.contains("denominator_index"))
        cfg.denominator_index = static_cast<int>(
            serialize_detail::need_long(j, "denominator_index"));
    if (j.contains("jobs"))
        cfg.jobs = static_cast<unsigned>(serialize_detail::need_u64(j, "jobs"));
    return cfg;
}

// One row per trial; columns are stable so downstream diffs are meaningful.
inline std::string experiment_csv(const ExperimentReport& report) {
    using serialize_detail::fmt_double;
    std::string out =
        "trial_seed,scale_exp,rep,measure,outer_size,inner_size,"
        "outer_restricted,inner_restricted,omega_measure,sup_value,ratio\n";
    for (const auto& t : report.trials) {
        out += std::to_string(t.trial_seed);
        out += ',';
        out += std::to_string(t.scale_exp);
        out += ',';
        out += std::to_string(t.rep);
        out += ',';
        out += fmt_double(t.measure);
        out += ',';
        out += std::to_string(t.outer_size);
        out += ',';
        out += std::to_string(t.inner_size);
        out += ',';
        out += std::to_string(t.outer_restricted);
        out += ',';
        out += std::to_string(t.inner_restricted);
        out += ',';
        out += fmt_double(t.omega_measure);
        out += ',';
        out += fmt_double(t.sup_value);
        out += ',';
        out += fmt_double(t.ratio);
        out += '\n';
    }
    return out;
}

// The worst trial is re-run deterministically so the summary can embed the
// maximizing sign-pattern witnesses, not just the ratio.
inline Json experiment_summary_json(const ExperimentConfig& cfg,
                                    const ExperimentReport& report) {
    Json per_scale = Json::array();
    for (std::size_t i = 0; i < report.scales.size(); ++i)
        per_scale.push_back(Json{{"scale_exp", report.scales[i]},
                                 {"max_ratio", report.max_ratio_per_scale[i]}});
    Json worst = nullptr;
    const TrialRecord* best = nullptr;
    for (const auto& t : report.trials)
        if (best == nullptr || t.ratio > best->ratio) best = &t;
    if (best != nullptr) {
        TrialData data = run_trial(cfg, best->scale_exp, best->rep);
        Json wit = Json::array();
        for (const auto& f : data.sup.witnesses)
            wit.push_back(step_function_json(f));
        worst = Json{{"trial_seed", best->trial_seed},
                     {"scale_exp", best->scale_exp},
                     {"rep", best->rep},
                     {"ratio", best->ratio},
                     {"sup_value", best->sup_value},
                     {"omega", meas_set_json(data.omega)},
                     {"witnesses", std::move(wit)}};
    }
    return Json{{"version", kVersion},
                {"config", experiment_config_json(cfg)},
                {"trial_count", report.trials.size()},
                {"max_ratio", report.max_ratio},
                {"slope", report.slope},
                {"per_scale", std::move(per_scale)},
                {"worst_trial", std::move(worst)}};
}

// ------------------------------------------------------------- artifacts

// Every artifact starts with the library version and the command's full
// configuration, so a report is reproducible from its own header.
inline Json make_artifact(const std::string& command, Json config) {
    return Json{{"version", kVersion},
                {"command", command},
                {"config", std::move(config)}};
}

}  // namespace walshtf
