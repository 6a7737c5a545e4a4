#pragma once

// Command-line front end: configuration parsing, family and model catalogs,
// sweep dispatch and deterministic CSV / JSON emission.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotnum/base.hpp"
#include "rotnum/circlemap.hpp"
#include "rotnum/error.hpp"
#include "rotnum/grid.hpp"
#include "rotnum/io.hpp"
#include "rotnum/log.hpp"
#include "rotnum/modulus.hpp"
#include "rotnum/parallel.hpp"
#include "rotnum/schrodinger.hpp"

namespace rotnum::cli {

inline const std::vector<std::string> kCommands = {"rotnum", "ids", "compare", "modulus", "lemmas", "craig-simon"};
inline const std::vector<std::string> kFamilies = {"rigid", "sine", "tabulated", "schrodinger-<model>"};
inline const std::vector<std::string> kModels = {"free", "anderson-bernoulli", "anderson-uniform", "almost-mathieu",
                                                 "fibonacci"};
inline const std::vector<std::string> kBases = {"rotation", "torus", "doubling", "iid-bernoulli", "iid-uniform",
                                                "fibonacci"};

struct RunConfig {
    std::string command;
    std::string family;
    std::string model;
    std::optional<GridSpec> grid;
    std::int64_t n = 10000;
    std::optional<std::int64_t> rotation_n;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
    std::string format;
    std::string method = "both";
    std::optional<double> a;
    std::optional<double> a2;
    std::optional<double> e_ref;
    double lambda = 1.0;
    std::vector<double> alpha;
    double p = 0.5;
    double amplitude = 0.1;
    std::string base;
    double theta = 0.0;
    std::string table;
};

/// Thrown by parse_config for --help; carries the help text.
struct HelpRequested {
    std::string text;
};

[[nodiscard]] inline GridSpec parse_grid(const std::string& token) {
    std::vector<std::string> parts;
    std::stringstream s(token);
    for (std::string part; std::getline(s, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("--grid expects min:max:step, got '" + token + "'");
    GridSpec g;
    try {
        g = {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
    } catch (const ConfigError&) {
        throw UsageError("--grid: malformed number in '" + token + "'");
    }
    if (!(g.step > 0.0)) throw UsageError("--grid: step must be positive in '" + token + "'");
    if (!(g.max >= g.min)) throw UsageError("--grid: max must not be below min in '" + token + "'");
    return g;
}

[[nodiscard]] inline std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out;
}

[[nodiscard]] inline std::string default_format(const std::string& command) {
    return command == "rotnum" || command == "ids" || command == "compare" ? "csv" : "json";
}

[[nodiscard]] inline bool schrodinger_family_name(const std::string& family) {
    return family.rfind("schrodinger-", 0) == 0;
}

inline void validate(RunConfig& cfg) {
    const std::string& c = cfg.command;
    const bool model_command = c == "ids" || c == "compare" || c == "craig-simon";
    if (model_command) {
        if (!cfg.family.empty()) throw UsageError("--family does not apply to " + c + "; use --model");
        if (cfg.model.empty()) throw UsageError(c + " requires --model (one of: " + join(kModels) + ")");
    } else {
        if (cfg.family.empty() && cfg.model.empty())
            throw UsageError(c + " requires --family (one of: " + join(kFamilies) + ")");
        if (!cfg.model.empty()) cfg.family = "schrodinger-" + cfg.model;
    }
    if (schrodinger_family_name(cfg.family)) cfg.model = cfg.family.substr(12);
    if (!cfg.model.empty() && std::find(kModels.begin(), kModels.end(), cfg.model) == kModels.end())
        throw UsageError("unknown model '" + cfg.model + "'; catalog: " + join(kModels));
    if (!cfg.family.empty() && !schrodinger_family_name(cfg.family) && cfg.family != "rigid" &&
        cfg.family != "sine" && cfg.family != "tabulated")
        throw UsageError("unknown family '" + cfg.family + "'; catalog: " + join(kFamilies) +
                         " with models " + join(kModels));
    if (cfg.family == "tabulated" && cfg.table.empty()) throw UsageError("family tabulated requires --table");
    if (!cfg.base.empty()) {
        if (!cfg.model.empty()) throw UsageError("--base does not apply to Schrodinger models");
        if (std::find(kBases.begin(), kBases.end(), cfg.base) == kBases.end())
            throw UsageError("unknown base '" + cfg.base + "'; catalog: " + join(kBases));
    }
    if (c == "lemmas") {
        if (!cfg.a) throw UsageError("lemmas requires --a");
        if (!cfg.a2) throw UsageError("lemmas requires --a2");
    } else {
        if (cfg.a || cfg.a2) throw UsageError("--a and --a2 apply only to lemmas");
        if (!cfg.grid) throw UsageError(c + " requires --grid min:max:step");
    }
    if (cfg.n < 1) throw UsageError("--n must be at least 1, got " + std::to_string(cfg.n));
    if (cfg.rotation_n && *cfg.rotation_n < 1) throw UsageError("--rotation-n must be at least 1");
    if (cfg.rotation_n && c != "ids" && c != "compare") throw UsageError("--rotation-n applies only to ids and compare");
    if (cfg.e_ref && c != "ids" && c != "compare") throw UsageError("--e-ref applies only to ids and compare");
    if (cfg.method != "both" && cfg.method != "eigencount" && cfg.method != "rotation")
        throw UsageError("--method must be eigencount, rotation or both, got '" + cfg.method + "'");
    if (cfg.method != "both" && c != "ids") throw UsageError("--method applies only to ids");
    if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
    if (cfg.format.empty()) cfg.format = default_format(c);
    if (cfg.format != "csv" && cfg.format != "json")
        throw UsageError("--format must be csv or json, got '" + cfg.format + "'");
    if (cfg.format == "csv" && default_format(c) == "json") throw UsageError(c + " writes json only; drop --format csv");
}

[[nodiscard]] inline std::string help_footer() {
    return "CSV schemas:\n"
           "  rotnum   a,rho,error_radius,n,seed\n"
           "  ids      E,N,method,n,seed\n"
           "  compare  E,eigencount,rotation,abs_diff,error_radius,reference\n"
           "modulus, lemmas and craig-simon write JSON. Every JSON file embeds the run configuration.\n"
           "Families: " + join(kFamilies) + ". Models: " + join(kModels) + ". Bases: " + join(kBases) + ".\n"
           "Exit status: 0 success, 1 error, 2 certificate or lemma violation. ROTNUM_LOG sets verbosity.";
}

[[nodiscard]] inline RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    cfg.threads = default_thread_count();
    CLI::App app{"Rotation numbers of circle cocycles, log-Holder certificates and Schrodinger IDS", "rotnum"};
    app.footer(help_footer());
    app.set_config("--config", "", "flat key = value file; command-line flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string grid, rotation_n;
    std::optional<double> a, a2, e_ref;
    app.add_option("command", cfg.command, "one of: " + join(kCommands))
        ->required()
        ->check(CLI::IsMember(kCommands));
    auto* fam = app.add_option("--family", cfg.family, "cocycle family");
    auto* mod = app.add_option("--model", cfg.model, "Schrodinger potential model");
    fam->excludes(mod);
    app.add_option("--grid", grid, "parameter or energy grid min:max:step");
    app.add_option("--n", cfg.n, "iteration count or matrix size");
    app.add_option("--rotation-n", cfg.rotation_n, "fiber steps for the rotation route (default --n)");
    app.add_option("--seed", cfg.seed, "64-bit seed");
    app.add_option("--threads", cfg.threads, "worker threads (default: logical cores)");
    app.add_option("--out", cfg.out, "output path (default: stdout)");
    app.add_option("--format", cfg.format, "csv or json");
    app.add_option("--method", cfg.method, "ids route: eigencount, rotation or both");
    app.add_option("--a", a, "first parameter of a lemma pair");
    app.add_option("--a2", a2, "second parameter of a lemma pair");
    app.add_option("--e-ref", e_ref, "anchor energy for the rotation route");
    app.add_option("--lambda", cfg.lambda, "coupling constant");
    app.add_option("--alpha", cfg.alpha, "rotation frequency (comma list for a torus)")->delimiter(',');
    app.add_option("--p", cfg.p, "Bernoulli probability");
    app.add_option("--amplitude", cfg.amplitude, "sine family amplitude, |eps| < 1/(2 pi)");
    app.add_option("--base", cfg.base, "base system for rigid, sine and tabulated families");
    app.add_option("--theta", cfg.theta, "starting angle for rotation-type bases");
    app.add_option("--table", cfg.table, "CSV file with columns x,g for the tabulated family");

    std::vector<std::string> argv_storage{"rotnum"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    cfg.a = a;
    cfg.a2 = a2;
    cfg.e_ref = e_ref;
    if (!grid.empty()) cfg.grid = parse_grid(grid);
    validate(cfg);
    return cfg;
}

[[nodiscard]] inline Json to_json(const RunConfig& cfg) {
    const auto opt = [](const auto& o) { return o ? Json(*o) : Json(nullptr); };
    Json alpha = Json::array();
    for (double x : cfg.alpha) alpha.push_back(x);
    return Json{{"command", cfg.command},
                {"family", cfg.family},
                {"model", cfg.model},
                {"grid", cfg.grid ? rotnum::to_json(*cfg.grid) : Json(nullptr)},
                {"n", cfg.n},
                {"rotation_n", opt(cfg.rotation_n)},
                {"seed", cfg.seed},
                {"threads", cfg.threads},
                {"out", cfg.out},
                {"format", cfg.format},
                {"method", cfg.method},
                {"a", opt(cfg.a)},
                {"a2", opt(cfg.a2)},
                {"e_ref", opt(cfg.e_ref)},
                {"lambda", cfg.lambda},
                {"alpha", alpha},
                {"p", cfg.p},
                {"amplitude", cfg.amplitude},
                {"base", cfg.base},
                {"theta", cfg.theta},
                {"table", cfg.table}};
}

// ---------------------------------------------------------------------------
// Catalogs
// ---------------------------------------------------------------------------

[[nodiscard]] inline double first_alpha(const RunConfig& cfg) { return cfg.alpha.empty() ? kGoldenAlpha : cfg.alpha[0]; }

[[nodiscard]] inline PotentialModel make_model(const RunConfig& cfg) {
    if (cfg.model == "free") return PotentialModel::free(BaseSystem::irrational_rotation(first_alpha(cfg)));
    if (cfg.model == "anderson-bernoulli") return PotentialModel::anderson_bernoulli(cfg.lambda, cfg.seed, cfg.p);
    if (cfg.model == "anderson-uniform") return PotentialModel::anderson_uniform(cfg.lambda, cfg.seed);
    if (cfg.model == "almost-mathieu") return PotentialModel::almost_mathieu(cfg.lambda, first_alpha(cfg));
    if (cfg.model == "fibonacci") return PotentialModel::fibonacci(cfg.lambda);
    throw UsageError("unknown model '" + cfg.model + "'; catalog: " + join(kModels));
}

[[nodiscard]] inline BaseSystem make_base(const RunConfig& cfg, const std::string& fallback) {
    const std::string kind = cfg.base.empty() ? fallback : cfg.base;
    if (kind == "rotation") return BaseSystem::irrational_rotation(first_alpha(cfg));
    if (kind == "torus") {
        if (cfg.alpha.empty()) throw UsageError("base torus requires --alpha with one frequency per coordinate");
        return BaseSystem::torus_shift(cfg.alpha);
    }
    if (kind == "doubling") return BaseSystem::doubling_map();
    if (kind == "iid-bernoulli") return BaseSystem::iid_shift(Bernoulli{cfg.p}, cfg.seed);
    if (kind == "iid-uniform") return BaseSystem::iid_shift(UniformReal{0.0, 1.0}, cfg.seed);
    if (kind == "fibonacci") return BaseSystem::fibonacci_subshift();
    throw UsageError("unknown base '" + kind + "'; catalog: " + join(kBases));
}

[[nodiscard]] inline TabulatedLift load_table(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::vector<double> xs, gs;
    for (const auto& row : read_csv_rows(in, "x,g")) {
        xs.push_back(parse_double(row[0]));
        gs.push_back(parse_double(row[1]));
    }
    return TabulatedLift(std::move(xs), std::move(gs));
}

using AnyFamily = std::variant<RigidFamily, SineFamily, TabulatedFamily, SchrodingerFamily>;

[[nodiscard]] inline AnyFamily make_family(const RunConfig& cfg, Interval j) {
    if (schrodinger_family_name(cfg.family)) return SchrodingerFamily(make_model(cfg), j);
    if (cfg.family == "rigid") return RigidFamily(make_base(cfg, "rotation"), j);
    if (cfg.family == "sine") return SineFamily(make_base(cfg, "iid-uniform"), j, cfg.amplitude);
    if (cfg.family == "tabulated") return TabulatedFamily(make_base(cfg, "rotation"), j, load_table(cfg.table));
    throw UsageError("unknown family '" + cfg.family + "'; catalog: " + join(kFamilies));
}

/// iid bases start at their seeded stream; angle bases at --theta.
[[nodiscard]] inline BasePoint start_point(const BaseSystem& base, const RunConfig& cfg) {
    if (base.kind() == BaseKind::iid_shift) return base.origin();
    return base.point(cfg.theta);
}

[[nodiscard]] inline Json family_descriptor(const AnyFamily& fam, const RunConfig& cfg) {
    return std::visit(
        [&](const auto& f) {
            Json j{{"name", f.name()}, {"interval", {f.interval().lo, f.interval().hi}}, {"C", f.param_constant()},
                   {"base", rotnum::to_json(f.base())}};
            if (cfg.family == "sine") j["amplitude"] = cfg.amplitude;
            if (cfg.family == "tabulated") j["table"] = cfg.table;
            if (!cfg.model.empty()) j["model"] = rotnum::to_json(make_model(cfg));
            return j;
        },
        fam);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Output {
    std::string text;
    int status = 0;
};

[[nodiscard]] inline Interval grid_interval(const std::vector<double>& g) { return {g.front(), g.back()}; }

[[nodiscard]] inline Output run_rotnum(const RunConfig& cfg) {
    const auto grid = cfg.grid->points();
    const AnyFamily fam = make_family(cfg, grid_interval(grid));
    return std::visit(
        [&](const auto& f) {
            const BasePoint w = start_point(f.base(), cfg);
            RotationDocument doc;
            doc.config = to_json(cfg);
            doc.family = family_descriptor(fam, cfg);
            doc.omega0 = rotnum::to_json(w, f.base().dimension());
            doc.curve.params = grid;
            doc.curve.estimates = rotation_curve(f, grid, w, 0.0, cfg.n, cfg.threads);
            doc.curve.seed = cfg.seed;
            std::ostringstream s;
            if (cfg.format == "csv") write_rotation_csv(s, doc.curve);
            else s << rotnum::to_json(doc).dump(2) << '\n';
            return Output{s.str(), 0};
        },
        fam);
}

[[nodiscard]] inline std::vector<IDSCurve> ids_curves(const RunConfig& cfg, const PotentialModel& model,
                                                      const std::vector<double>& grid, bool eigen, bool rotation) {
    const BasePoint w = start_point(model.base, cfg);
    std::vector<IDSCurve> curves;
    if (eigen) curves.push_back(ids_empirical(model, w, cfg.n, grid, cfg.threads));
    if (rotation)
        curves.push_back(ids_rotation(model, w, cfg.rotation_n.value_or(cfg.n), grid, cfg.e_ref, cfg.threads));
    return curves;
}

[[nodiscard]] inline Output run_ids(const RunConfig& cfg) {
    const auto grid = cfg.grid->points();
    const PotentialModel model = make_model(cfg);
    IdsDocument doc;
    doc.config = to_json(cfg);
    doc.model = rotnum::to_json(model);
    doc.curves = ids_curves(cfg, model, grid, cfg.method != "rotation", cfg.method != "eigencount");
    std::ostringstream s;
    if (cfg.format == "csv") write_ids_csv(s, doc.curves);
    else s << rotnum::to_json(doc).dump(2) << '\n';
    return {s.str(), 0};
}

[[nodiscard]] inline Output run_compare(const RunConfig& cfg) {
    const auto grid = cfg.grid->points();
    const PotentialModel model = make_model(cfg);
    const auto curves = ids_curves(cfg, model, grid, true, true);
    const IDSCurve& eig = curves[0];
    const IDSCurve& rot = curves[1];
    const bool has_reference = model.kind == ModelKind::free;
    double max_gap = 0.0;
    std::ostringstream s;
    if (cfg.format == "csv") {
        s << "E,eigencount,rotation,abs_diff,error_radius,reference\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double gap = std::abs(eig.values[i] - rot.values[i]);
            max_gap = std::max(max_gap, gap);
            s << format_double(grid[i]) << ',' << format_double(eig.values[i]) << ',' << format_double(rot.values[i])
              << ',' << format_double(gap) << ',' << format_double(rot.error_radius[i]) << ','
              << format_double(has_reference ? free_laplacian_ids(grid[i]) : std::nan("")) << '\n';
        }
    } else {
        Json points = Json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double gap = std::abs(eig.values[i] - rot.values[i]);
            max_gap = std::max(max_gap, gap);
            Json p{{"E", grid[i]},
                   {"eigencount", eig.values[i]},
                   {"rotation", rot.values[i]},
                   {"abs_diff", gap},
                   {"error_radius", rot.error_radius[i]}};
            if (has_reference) p["reference"] = free_laplacian_ids(grid[i]);
            points.push_back(std::move(p));
        }
        s << Json{{"config", to_json(cfg)}, {"model", rotnum::to_json(model)}, {"max_abs_diff", max_gap},
                  {"points", points}}
                 .dump(2)
          << '\n';
    }
    info("compare: max |eigencount - rotation| = " + format_double(max_gap));
    return {s.str(), 0};
}

[[nodiscard]] inline Output run_modulus(const RunConfig& cfg, std::ostream& err) {
    const auto grid = cfg.grid->points();
    const AnyFamily fam = make_family(cfg, grid_interval(grid));
    return std::visit(
        [&](const auto& f) {
            const BasePoint w = start_point(f.base(), cfg);
            const ModulusReport rep = modulus_certificate(f, grid, w, cfg.n, cfg.threads);
            Json j{{"config", to_json(cfg)}, {"family", family_descriptor(fam, cfg)}, {"report", rotnum::to_json(rep)}};
            const std::string summary = modulus_summary(rep);
            err << summary;
            if (!cfg.out.empty()) write_text_file(cfg.out + ".txt", summary);
            return Output{j.dump(2) + "\n", rep.verdict == Verdict::violated ? 2 : 0};
        },
        fam);
}

[[nodiscard]] inline Output run_craig_simon(const RunConfig& cfg, std::ostream& err) {
    const auto grid = cfg.grid->points();
    const PotentialModel model = make_model(cfg);
    const ModulusReport rep = craig_simon_check(model, grid, start_point(model.base, cfg), cfg.n, cfg.threads);
    Json j{{"config", to_json(cfg)}, {"model", rotnum::to_json(model)}, {"report", rotnum::to_json(rep)}};
    const std::string summary = modulus_summary(rep);
    err << summary;
    if (!cfg.out.empty()) write_text_file(cfg.out + ".txt", summary);
    return {j.dump(2) + "\n", rep.verdict == Verdict::violated ? 2 : 0};
}

[[nodiscard]] inline Output run_lemmas(const RunConfig& cfg) {
    const double a = *cfg.a, a2 = *cfg.a2;
    Interval j{std::min(a, a2), std::max(a, a2)};
    if (cfg.grid) j = grid_interval(cfg.grid->points());
    const AnyFamily fam = make_family(cfg, j);
    return std::visit(
        [&](const auto& f) {
            const BasePoint w = start_point(f.base(), cfg);
            const SegmentCheck seg = verify_segment_lemma(f, a, a2, w, cfg.n);
            const std::int64_t j_hi = seg.records.back().j + 1;
            const LemmaCheck step = verify_step_lemma(f, a, a2, w, cfg.n, 0, j_hi);
            const bool ok = step.pass && step.corollary_pass && seg.status != SegmentStatus::fail;
            Json out{{"config", to_json(cfg)},
                     {"family", family_descriptor(fam, cfg)},
                     {"omega0", rotnum::to_json(w, f.base().dimension())},
                     {"j_range", {0, j_hi}},
                     {"step_lemma", rotnum::to_json(step)},
                     {"segment_lemma", rotnum::to_json(seg)},
                     {"pass", ok}};
            return Output{out.dump(2) + "\n", ok ? 0 : 2};
        },
        fam);
}

[[nodiscard]] inline Output dispatch(const RunConfig& cfg, std::ostream& err) {
    if (cfg.command == "rotnum") return run_rotnum(cfg);
    if (cfg.command == "ids") return run_ids(cfg);
    if (cfg.command == "compare") return run_compare(cfg);
    if (cfg.command == "modulus") return run_modulus(cfg, err);
    if (cfg.command == "lemmas") return run_lemmas(cfg);
    if (cfg.command == "craig-simon") return run_craig_simon(cfg, err);
    throw UsageError("unknown command '" + cfg.command + "'; expected one of: " + join(kCommands));
}

/// Runs a parsed configuration. Writes the artifact to --out or to `out`.
[[nodiscard]] inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Output result = dispatch(cfg, err);
        if (cfg.out.empty()) out << result.text;
        else write_text_file(cfg.out, result.text);
        return result.status;
    } catch (const std::exception& e) {
        err << "rotnum: " << e.what() << '\n';
        return 1;
    }
}

[[nodiscard]] inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const std::exception& e) {
        err << "rotnum: " << e.what() << '\n';
        return 1;
    }
    return run(cfg, out, err);
}

} // namespace rotnum::cli
