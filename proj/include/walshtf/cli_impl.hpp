#pragma once

// Implementation of the command line front end.  Subcommands:
//
//   gen         draw a random quartile collection and write it as JSON
//   eval-bht    apply the bilinear model operator to seeded test functions
//   eval-biest  apply the composed model operator and its quadrilinear form
//   norms       size and energy tables for a collection with seeded data
//   decompose   the full tree partition of a collection with seeded data
//   verify      self-contained checks (lacunarity, orthonormality, restricted)
//   polytope    classify an exponent tuple against the admissible regions
//
// Conventions: `--out -` writes the artifact to stdout (the human summary
// then moves to stderr), `--in -` reads from stdin.  Artifacts embed the
// library version and every parameter needed to reproduce them, never file
// paths, so identical inputs give byte-identical outputs.

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "walshtf/serialize.hpp"

namespace walshtf::cli {

namespace cli_detail {

inline std::string short_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline std::pair<long, long> parse_long_pair(const std::string& text,
                                             const char* what) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError(std::string(what) + " must be two integers 'a,b'");
    try {
        std::size_t used = 0;
        long a = std::stol(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(text);
        std::string second = text.substr(comma + 1);
        long b = std::stol(second, &used);
        if (used != second.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + text + "'");
    }
}

inline DyadicInterval parse_window(const std::string& text) {
    auto [scale, index] = parse_long_pair(text, "window");
    return DyadicInterval{scale, index};
}

inline std::vector<long> parse_long_list(const std::string& text,
                                         const char* what) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError(std::string("bad ") + what + " entry '" + item +
                             "'");
        }
    }
    if (out.empty()) throw ParseError(std::string(what) + " list is empty");
    return out;
}

inline std::array<mpq_class, 4> parse_point(const std::string& text) {
    std::array<mpq_class, 4> out;
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw ParseError("point must have exactly 4 coordinates");
        out[i++] = rational_from_string(item);
    }
    if (i != 4) throw ParseError("point must have exactly 4 coordinates");
    return out;
}

inline std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot read '" + path + "'");
        buf << in.rdbuf();
    }
    return buf.str();
}

inline void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ParseError("failed while writing '" + path + "'");
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in " + what);
    return j;
}

// Collections are accepted either as a bare array of quartiles or as any
// artifact object carrying a "quartiles" field, so commands compose.
inline std::vector<Quartile> load_collection(const std::string& path) {
    Json j = parse_json_text(read_input(path), path == "-" ? "stdin" : path);
    if (j.is_object() && j.contains("quartiles"))
        return collection_from_json(j.at("quartiles"));
    return collection_from_json(j);
}

inline DyadicInterval collection_window(const std::vector<Quartile>& coll) {
    if (coll.empty())
        throw PreconditionViolated("the collection is empty");
    DyadicInterval w = coll.front().time();
    for (const auto& p : coll) w = detail::join_two(w, p.time());
    return w;
}

inline long finest_packet_resolution(const std::vector<Quartile>& coll,
                                     const DyadicInterval& window) {
    long r = -window.scale;
    for (const auto& p : coll)
        for (int j = 1; j <= 3; ++j)
            r = std::max(r, packet_resolution(p.subtile(j)));
    return r;
}

// Seeded integer-valued test data on the grid; stream numbers keep the
// functions independent of each other and of draw order.
inline StepFunction random_function(const DyadicInterval& window, long res,
                                    const Rng& base, std::uint64_t stream) {
    Rng rng = base.fork(stream);
    StepFunction f(window, res);
    for (auto& v : f.values) v = ExactScalar(rng.range(-2, 2));
    return f;
}

struct IoOptions {
    std::string in = "-";
    std::string out;
    std::uint64_t seed = 0;
    long resolution = -1;  // negative: finest packet resolution
};

// The artifact goes wherever --out points; the human summary goes to
// stdout unless the artifact itself claims stdout.
inline std::ostream& summary_stream(const std::string& out_path) {
    return out_path == "-" ? std::cerr : std::cout;
}

inline void emit_artifact(const std::string& out_path, const Json& artifact) {
    if (out_path.empty()) return;
    write_output(out_path, artifact.dump(2) + "\n");
}

// ----------------------------------------------------------------- gen

struct GenOptions {
    std::uint64_t seed = 0;
    std::string window = "2,0";
    std::string scale_range = "-2,2";
    long freq_max = 7;
    std::size_t count = 32;
    std::string out = "-";
};

inline int run_gen(const GenOptions& opt) {
    QuartileGenConfig gcfg;
    gcfg.seed = opt.seed;
    gcfg.window = parse_window(opt.window);
    auto [kmin, kmax] = parse_long_pair(opt.scale_range, "scale range");
    gcfg.kmin = kmin;
    gcfg.kmax = kmax;
    gcfg.freq_max = opt.freq_max;
    gcfg.count = opt.count;
    std::vector<Quartile> coll = gen_quartiles(gcfg);

    Json cfg{{"seed", opt.seed},
             {"window", interval_json(gcfg.window)},
             {"kmin", gcfg.kmin},
             {"kmax", gcfg.kmax},
             {"freq_max", gcfg.freq_max},
             {"count", gcfg.count}};
    Json art = make_artifact("gen", std::move(cfg));
    art["quartiles"] = collection_json(coll);
    emit_artifact(opt.out, art);
    summary_stream(opt.out) << "generated " << coll.size()
                            << " distinct quartiles (requested " << opt.count
                            << ")\n";
    return 0;
}

// ---------------------------------------------------------------- evals

inline int run_eval_bht(const IoOptions& opt) {
    std::vector<Quartile> coll = load_collection(opt.in);
    DyadicInterval w = collection_window(coll);
    long finest = finest_packet_resolution(coll, w);
    long res = opt.resolution >= 0 ? opt.resolution : finest;
    Rng base(opt.seed);
    StepFunction f1 = random_function(w, res, base, 1);
    StepFunction f2 = random_function(w, res, base, 2);
    StepFunction f3 = random_function(w, res, base, 3);
    StepFunction out_fn = bht(coll, f1, f2);
    ExactScalar form = bht_form(coll, f1, f2, f3);

    Json cfg{{"seed", opt.seed}, {"resolution", res}};
    Json art = make_artifact("eval-bht", std::move(cfg));
    art["collection"] = collection_json(coll);
    art["functions"] = Json::array({step_function_json(f1),
                                    step_function_json(f2),
                                    step_function_json(f3)});
    art["output"] = step_function_json(out_fn);
    art["form"] = scalar_json(form);
    emit_artifact(opt.out, art);
    summary_stream(opt.out)
        << "bilinear model operator over " << coll.size()
        << " quartiles at resolution " << res << "\n"
        << "trilinear form = " << short_double(form.to_double()) << "\n";
    return 0;
}

struct BiestOptions {
    IoOptions io;
    std::string inner;
};

inline int run_eval_biest(const BiestOptions& opt) {
    std::vector<Quartile> outer = load_collection(opt.io.in);
    std::vector<Quartile> inner = load_collection(opt.inner);
    std::vector<Quartile> both = outer;
    both.insert(both.end(), inner.begin(), inner.end());
    DyadicInterval w = collection_window(both);
    long finest = finest_packet_resolution(both, w);
    long res = opt.io.resolution >= 0 ? opt.io.resolution : finest;
    Rng base(opt.io.seed);
    StepFunction f1 = random_function(w, res, base, 1);
    StepFunction f2 = random_function(w, res, base, 2);
    StepFunction f3 = random_function(w, res, base, 3);
    StepFunction f4 = random_function(w, res, base, 4);
    StepFunction out_fn = biest(outer, inner, f1, f2, f3);
    QuadForm q = quad_form(outer, inner, f1, f2, f3, f4);

    Json cfg{{"seed", opt.io.seed}, {"resolution", res}};
    Json art = make_artifact("eval-biest", std::move(cfg));
    art["outer"] = collection_json(outer);
    art["inner"] = collection_json(inner);
    art["functions"] =
        Json::array({step_function_json(f1), step_function_json(f2),
                     step_function_json(f3), step_function_json(f4)});
    art["output"] = step_function_json(out_fn);
    art["form"] = Json{{"prime", scalar_json(q.prime)},
                       {"second", scalar_json(q.second)},
                       {"total", scalar_json(q.total)}};
    emit_artifact(opt.io.out, art);
    summary_stream(opt.io.out)
        << "composed model operator: outer " << outer.size() << ", inner "
        << inner.size() << ", resolution " << res << "\n"
        << "quadrilinear form = " << short_double(q.total.to_double())
        << " (prime " << short_double(q.prime.to_double()) << ", second "
        << short_double(q.second.to_double()) << ")\n";
    return 0;
}

// ------------------------------------------------------ norms, decompose

inline std::array<CoeffSeq, 3> seeded_coefficients(
    const std::vector<Quartile>& coll, const DyadicInterval& w, long res,
    std::uint64_t seed) {
    Rng base(seed);
    std::array<CoeffSeq, 3> a;
    for (int j = 1; j <= 3; ++j) {
        StepFunction f =
            random_function(w, res, base, static_cast<std::uint64_t>(j));
        a[static_cast<std::size_t>(j - 1)] = coefficients(coll, f, j);
    }
    return a;
}

inline int run_norms(const IoOptions& opt) {
    std::vector<Quartile> coll = load_collection(opt.in);
    DyadicInterval w = collection_window(coll);
    long finest = finest_packet_resolution(coll, w);
    long res = opt.resolution >= 0 ? opt.resolution : finest;
    auto a = seeded_coefficients(coll, w, res, opt.seed);
    NormReport r = norm_report(coll, a[0], a[1], a[2]);

    Json cfg{{"seed", opt.seed}, {"resolution", res}};
    Json art = make_artifact("norms", std::move(cfg));
    art["collection"] = collection_json(coll);
    art["report"] = norm_report_json(r);
    emit_artifact(opt.out, art);
    auto& os = summary_stream(opt.out);
    os << "tile norms over " << coll.size() << " quartiles\n";
    for (std::size_t j = 0; j < 3; ++j)
        os << "slot " << (j + 1) << ": size "
           << short_double(r.size[j].norm.value) << ", energy "
           << short_double(r.energy[j].norm.value) << " ("
           << r.energy[j].family.size() << " trees)\n";
    return 0;
}

inline int run_decompose(const IoOptions& opt) {
    std::vector<Quartile> coll = load_collection(opt.in);
    DyadicInterval w = collection_window(coll);
    long finest = finest_packet_resolution(coll, w);
    long res = opt.resolution >= 0 ? opt.resolution : finest;
    auto a = seeded_coefficients(coll, w, res, opt.seed);
    PartitionResult part = full_partition(coll, a[0], a[1], a[2]);

    Json cfg{{"seed", opt.seed}, {"resolution", res}};
    Json art = make_artifact("decompose", std::move(cfg));
    art["collection"] = collection_json(coll);
    art["partition"] = partition_json(part);
    emit_artifact(opt.out, art);
    std::size_t trees = 0;
    for (const auto& lvl : part.levels) trees += lvl.trees.size();
    summary_stream(opt.out)
        << "partition of " << coll.size() << " quartiles: " << part.levels.size()
        << " levels, " << trees << " trees, " << part.stripped.size()
        << " stripped, starting level " << part.n_start << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

struct LacunarityOptions {
    long max_scale = 3;
    long freq_max = 3;
};

// Exhaustive scan over all quartiles with time inside [0,4), time scales
// down to 2^-max_scale and frequency indices up to freq_max: a strict
// sub-tile relation in one slot must force disjointness in every other.
inline int run_verify_lacunarity(const LacunarityOptions& opt) {
    if (opt.max_scale < -2 || opt.freq_max < 0)
        throw PreconditionViolated("scan bounds must cover the window");
    std::vector<Quartile> all;
    for (long k = -2; k <= opt.max_scale; ++k)
        for (long n = 0; n < (1L << (k + 2)); ++n)
            for (long l = 0; l <= opt.freq_max; ++l)
                all.push_back(Quartile(k, n, l));
    std::size_t checked = 0;
    for (const auto& a : all)
        for (const auto& b : all)
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    if (i == j) continue;
                    ++checked;
                    if (!check_lacunarity(a, b, i, j)) {
                        std::cout << "counterexample: (" << a.k << "," << a.n
                                  << "," << a.l << ") vs (" << b.k << ","
                                  << b.n << "," << b.l << ") slots " << i
                                  << "," << j << "\n";
                        return 1;
                    }
                }
    std::cout << "lacunarity holds: " << all.size() << " quartiles, "
              << checked << " ordered slot pairs, 0 counterexamples\n";
    return 0;
}

struct OrthonormalityOptions {
    std::uint64_t seed = 1;
    int trials = 10;
    long height = 4;
};

inline void split_tiling(Rng& rng, long k, long n, long l, long hlog,
                         std::vector<Tile>& out) {
    if (hlog == 0) {
        out.push_back(Tile(k, n, l));
        return;
    }
    if (rng.coin()) {
        split_tiling(rng, k + 1, 2 * n, l, hlog - 1, out);
        split_tiling(rng, k + 1, 2 * n + 1, l, hlog - 1, out);
    } else {
        split_tiling(rng, k, n, 2 * l, hlog - 1, out);
        split_tiling(rng, k, n, 2 * l + 1, hlog - 1, out);
    }
}

// Random dyadic tilings of [0,1) x [0,2^height) into area-one tiles: the
// associated wave packets must form an orthonormal family satisfying the
// exact Plancherel identity on functions at the tiling resolution.
inline int run_verify_orthonormality(const OrthonormalityOptions& opt) {
    if (opt.trials < 1 || opt.height < 0 || opt.height > 16)
        throw PreconditionViolated("need trials >= 1 and 0 <= height <= 16");
    Rng rng(opt.seed);
    for (int trial = 0; trial < opt.trials; ++trial) {
        std::vector<Tile> tiles;
        split_tiling(rng, 0, 0, 0, opt.height, tiles);
        long K = 0;
        for (const auto& t : tiles) K = std::max(K, packet_resolution(t));
        std::vector<StepFunction> packets;
        packets.reserve(tiles.size());
        for (const auto& t : tiles) packets.push_back(wave_packet(t, K));
        for (std::size_t i = 0; i < packets.size(); ++i)
            for (std::size_t j = i; j < packets.size(); ++j) {
                ExactScalar ip = inner_product(packets[i], packets[j]);
                ExactScalar want = i == j ? ExactScalar(1) : ExactScalar();
                if (!(ip == want)) {
                    std::cout << "Gram defect at trial " << trial << " pair ("
                              << i << "," << j << ")\n";
                    return 1;
                }
            }
        for (int rep = 0; rep < 3; ++rep) {
            StepFunction f({0, 0}, K);
            for (auto& v : f.values) v = ExactScalar(rng.range(-4, 4));
            ExactScalar sum;
            for (const auto& t : tiles) {
                ExactScalar c = packet_inner_product(f, t);
                sum += c * c;
            }
            if (!(sum == l2_norm_squared(f))) {
                std::cout << "Plancherel defect at trial " << trial << "\n";
                return 1;
            }
        }
    }
    std::cout << "orthonormality holds: " << opt.trials
              << " tilings of height " << opt.height
              << ", Gram and Plancherel exact\n";
    return 0;
}

struct RestrictedOptions {
    std::string config;
    std::string regime;
    int trials = 0;
    std::string scales;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned jobs = 0;
    std::string out;
    double slope_tol = 0.0;
    bool slope_tol_set = false;
};

inline int run_verify_restricted(const RestrictedOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config.empty())
        cfg = experiment_config_from_json(parse_json_text(
            read_input(opt.config), opt.config == "-" ? "stdin" : opt.config));
    if (!opt.regime.empty()) cfg.regime = regime_from_string(opt.regime);
    if (opt.trials > 0) cfg.trials_per_scale = opt.trials;
    if (!opt.scales.empty())
        cfg.measure_exponents = parse_long_list(opt.scales, "scales");
    if (opt.seed_set) cfg.seed = opt.seed;
    if (opt.jobs > 0) cfg.jobs = opt.jobs;

    ExperimentReport report = restricted_type_experiment(cfg);
    Json summary = experiment_summary_json(cfg, report);
    if (!opt.out.empty()) {
        if (opt.out == "-") {
            write_output("-", summary.dump(2) + "\n");
        } else {
            write_output(opt.out + ".csv", experiment_csv(report));
            write_output(opt.out + ".json", summary.dump(2) + "\n");
        }
    }
    auto& os = summary_stream(opt.out.empty() ? "x" : opt.out);
    os << "restricted-type sweep, regime " << regime_string(cfg.regime) << ", "
       << report.trials.size() << " trials\n";
    for (std::size_t i = 0; i < report.scales.size(); ++i)
        os << "  measure 2^" << report.scales[i] << ": max ratio "
           << short_double(report.max_ratio_per_scale[i]) << "\n";
    os << "max ratio " << short_double(report.max_ratio) << ", log2 slope "
       << short_double(report.slope) << "\n";
    if (opt.slope_tol_set && std::abs(report.slope) > opt.slope_tol) {
        os << "slope exceeds tolerance " << short_double(opt.slope_tol)
           << "\n";
        return 1;
    }
    return 0;
}

// -------------------------------------------------------------- polytope

struct PolytopeOptions {
    std::string point;
    std::string out;
};

inline int run_polytope(const PolytopeOptions& opt) {
    std::array<mpq_class, 4> alpha = parse_point(opt.point);
    const PolytopeId ids[3] = {PolytopeId::d_prime, PolytopeId::d_doubleprime,
                               PolytopeId::d};
    std::array<Region, 3> primary{};
    bool agree = true;
    for (std::size_t i = 0; i < 3; ++i) {
        primary[i] = in_D(alpha, ids[i]);
        Region facets = classify_by_facets(alpha, ids[i]);
        Region combo = classify_by_combination(alpha, ids[i]);
        if (facets != combo) agree = false;
    }

    Json points = Json::array();
    for (const auto& q : alpha) points.push_back(rational_string(q));
    Json art = make_artifact("polytope", Json{{"point", std::move(points)}});
    Json cls = Json::object();
    for (std::size_t i = 0; i < 3; ++i)
        cls[polytope_name(ids[i])] = region_name(primary[i]);
    art["classification"] = std::move(cls);
    art["routes_agree"] = agree;
    emit_artifact(opt.out, art);

    auto& os = summary_stream(opt.out);
    if (!agree) {
        os << "classification routes disagree; the facet systems and the "
              "convex-combination programs are inconsistent here\n";
        return 1;
    }
    os << polytope_name(ids[0]) << ": " << region_name(primary[0]) << "\n"
       << polytope_name(ids[1]) << ": " << region_name(primary[1]) << "\n"
       << region_name(primary[2]) << " of " << polytope_name(ids[2]) << "\n";
    return 0;
}

}  // namespace cli_detail

inline int run(int argc, char** argv) {
    using namespace cli_detail;
    CLI::App app{"exact Walsh-model time-frequency toolkit"};
    app.set_version_flag("--version", std::string("walshtf ") + kVersion);
    app.require_subcommand(1);
    int rc = 0;

    GenOptions gen_opt;
    auto* gen = app.add_subcommand("gen", "generate a random quartile collection");
    gen->add_option("--seed", gen_opt.seed, "random seed");
    gen->add_option("--window", gen_opt.window, "time window 'scale,index'");
    gen->add_option("--scale-range", gen_opt.scale_range,
                    "time scales 'kmin,kmax'");
    gen->add_option("--freq-max", gen_opt.freq_max, "largest frequency index");
    gen->add_option("--count", gen_opt.count, "number of draws");
    gen->add_option("--out", gen_opt.out, "artifact path, '-' for stdout");
    gen->callback([&] { rc = run_gen(gen_opt); });

    IoOptions bht_opt;
    auto* ebht = app.add_subcommand(
        "eval-bht", "bilinear model operator on seeded test functions");
    ebht->add_option("--in", bht_opt.in, "collection path, '-' for stdin");
    ebht->add_option("--seed", bht_opt.seed, "seed for the test functions");
    ebht->add_option("--resolution", bht_opt.resolution,
                     "grid resolution (default: finest packet)");
    ebht->add_option("--out", bht_opt.out, "artifact path, '-' for stdout");
    ebht->callback([&] { rc = run_eval_bht(bht_opt); });

    BiestOptions biest_opt;
    auto* ebiest = app.add_subcommand(
        "eval-biest", "composed model operator on seeded test functions");
    ebiest->add_option("--in", biest_opt.io.in, "outer collection path");
    ebiest->add_option("--inner", biest_opt.inner, "inner collection path")
        ->required();
    ebiest->add_option("--seed", biest_opt.io.seed, "seed for the test functions");
    ebiest->add_option("--resolution", biest_opt.io.resolution,
                       "grid resolution (default: finest packet)");
    ebiest->add_option("--out", biest_opt.io.out,
                       "artifact path, '-' for stdout");
    ebiest->callback([&] { rc = run_eval_biest(biest_opt); });

    IoOptions norms_opt;
    auto* norms = app.add_subcommand(
        "norms", "size and energy norms of a collection with seeded data");
    norms->add_option("--in", norms_opt.in, "collection path, '-' for stdin");
    norms->add_option("--seed", norms_opt.seed, "seed for the test functions");
    norms->add_option("--resolution", norms_opt.resolution,
                      "grid resolution (default: finest packet)");
    norms->add_option("--out", norms_opt.out, "artifact path, '-' for stdout");
    norms->callback([&] { rc = run_norms(norms_opt); });

    IoOptions dec_opt;
    auto* dec = app.add_subcommand(
        "decompose", "tree partition of a collection with seeded data");
    dec->add_option("--in", dec_opt.in, "collection path, '-' for stdin");
    dec->add_option("--seed", dec_opt.seed, "seed for the test functions");
    dec->add_option("--resolution", dec_opt.resolution,
                    "grid resolution (default: finest packet)");
    dec->add_option("--out", dec_opt.out, "artifact path, '-' for stdout");
    dec->callback([&] { rc = run_decompose(dec_opt); });

    auto* verify = app.add_subcommand("verify", "self-contained checks");
    verify->require_subcommand(1);

    LacunarityOptions lac_opt;
    auto* lac = verify->add_subcommand(
        "lacunarity", "sub-tile relations force disjoint companions");
    lac->add_option("--max-scale", lac_opt.max_scale,
                    "finest time scale 2^-k to scan");
    lac->add_option("--freq-max", lac_opt.freq_max, "largest frequency index");
    lac->callback([&] { rc = run_verify_lacunarity(lac_opt); });

    OrthonormalityOptions ortho_opt;
    auto* ortho = verify->add_subcommand(
        "orthonormality", "tilings give exact orthonormal packet bases");
    ortho->add_option("--seed", ortho_opt.seed, "random seed");
    ortho->add_option("--trials", ortho_opt.trials, "number of tilings");
    ortho->add_option("--height", ortho_opt.height,
                      "log2 frequency extent of the tiled region");
    ortho->callback([&] { rc = run_verify_orthonormality(ortho_opt); });

    RestrictedOptions res_opt;
    auto* res = verify->add_subcommand(
        "restricted", "restricted-type ratio sweep across measure scales");
    res->add_option("--config", res_opt.config,
                    "experiment config JSON, '-' for stdin");
    res->add_option("--regime", res_opt.regime,
                    "bht, A9-A12 or A1-A2 (overrides config)");
    res->add_option("--trials", res_opt.trials,
                    "trials per measure scale (overrides config)");
    res->add_option("--scales", res_opt.scales,
                    "comma list of measure exponents (overrides config)");
    res->add_option("--seed", res_opt.seed, "random seed (overrides config)");
    res->add_option("--jobs", res_opt.jobs, "worker threads (overrides config)");
    res->add_option("--out", res_opt.out,
                    "artifact prefix for <prefix>.csv and <prefix>.json, "
                    "'-' for summary JSON on stdout");
    res->add_option("--slope-tol", res_opt.slope_tol,
                    "fail when |log2 slope| exceeds this");
    res->callback([&] {
        res_opt.seed_set = res->count("--seed") > 0;
        res_opt.slope_tol_set = res->count("--slope-tol") > 0;
        rc = run_verify_restricted(res_opt);
    });

    PolytopeOptions poly_opt;
    auto* poly = app.add_subcommand(
        "polytope", "classify an exponent tuple against the admissible regions");
    poly->add_option("--point", poly_opt.point,
                     "four rationals 'a1,a2,a3,a4' summing to 1")
        ->required();
    poly->add_option("--out", poly_opt.out, "artifact path, '-' for stdout");
    poly->callback([&] { rc = run_polytope(poly_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

inline int run(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("walshtf");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (auto& s : full) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace walshtf::cli
