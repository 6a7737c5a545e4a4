#pragma once

// CSV and JSON serialization for IDS curves, rotation curves, lemma checks and
// modulus reports. Doubles are written in shortest round-trip form so that
// reading a file back and writing it again reproduces it byte for byte.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "rotnum/base.hpp"
#include "rotnum/circlemap.hpp"
#include "rotnum/error.hpp"
#include "rotnum/grid.hpp"
#include "rotnum/modulus.hpp"
#include "rotnum/schrodinger.hpp"

namespace rotnum {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

[[nodiscard]] inline double parse_double(std::string_view s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("malformed number '" + std::string(s) + "'");
    return x;
}

template <class Int>
[[nodiscard]] Int parse_integer(std::string_view s) {
    Int x{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("malformed integer '" + std::string(s) + "'");
    return x;
}

/// JSON numbers cannot hold NaN or infinities; those are written as strings.
[[nodiscard]] inline Json json_number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

[[nodiscard]] inline double json_to_double(const Json& j) {
    if (j.is_string()) return parse_double(j.get<std::string>());
    return j.get<double>();
}

// ---------------------------------------------------------------------------
// CSV primitives
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

[[nodiscard]] inline std::vector<std::vector<std::string>> read_csv_rows(std::istream& in,
                                                                         std::string_view expected_header) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw ConfigError("csv: expected header '" + std::string(expected_header) + "', got '" + line + "'");
    const std::size_t columns = split_csv_line(expected_header).size();
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != columns)
            throw ConfigError("csv: row has " + std::to_string(cells.size()) + " fields, expected " +
                              std::to_string(columns));
        rows.push_back(std::move(cells));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

[[nodiscard]] inline Json to_json(const BasePoint& p, int dimension = kMaxTorusDim) {
    Json theta = Json::array();
    for (int i = 0; i < dimension; ++i) theta.push_back(json_number(p.theta[static_cast<std::size_t>(i)]));
    return Json{{"theta", theta}, {"index", p.index}, {"stream", p.stream}};
}

[[nodiscard]] inline Json to_json(const BaseSystem& sys) {
    Json j{{"kind", sys.kind_name()}};
    switch (sys.kind()) {
        case BaseKind::irrational_rotation:
        case BaseKind::substitution_subshift: j["alpha"] = sys.alpha(); break;
        case BaseKind::torus_shift: {
            Json a = Json::array();
            for (int i = 0; i < sys.dimension(); ++i) a.push_back(sys.alpha(i));
            j["alpha"] = a;
            break;
        }
        case BaseKind::doubling_map: break;
        case BaseKind::iid_shift: {
            j["seed"] = sys.seed();
            if (const auto* b = std::get_if<Bernoulli>(&sys.distribution())) {
                j["distribution"] = {{"kind", "bernoulli"}, {"p", b->p}};
            } else {
                const auto& u = std::get<UniformReal>(sys.distribution());
                j["distribution"] = {{"kind", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
            }
            break;
        }
    }
    return j;
}

[[nodiscard]] inline Json to_json(const PotentialModel& m) {
    Json j{{"name", m.name()}, {"coupling", m.coupling}, {"base", to_json(m.base)},
           {"log_integrable", m.log_integrable}};
    j["sup_bound"] = m.sup_bound ? Json(*m.sup_bound) : Json(nullptr);
    return j;
}

[[nodiscard]] inline Json to_json(const GridSpec& g) {
    return Json{{"min", g.min}, {"max", g.max}, {"step", g.step}};
}

// ---------------------------------------------------------------------------
// IDS curves
// ---------------------------------------------------------------------------

inline constexpr std::string_view kIdsCsvHeader = "E,N,method,n,seed";

[[nodiscard]] inline IdsMethod parse_ids_method(std::string_view s) {
    if (s == "eigencount") return IdsMethod::eigencount;
    if (s == "rotation") return IdsMethod::rotation;
    throw ConfigError("unknown IDS method '" + std::string(s) + "' (expected eigencount or rotation)");
}

inline void write_ids_csv(std::ostream& out, const std::vector<IDSCurve>& curves) {
    out << kIdsCsvHeader << '\n';
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.energies.size(); ++i)
            out << format_double(c.energies[i]) << ',' << format_double(c.values[i]) << ',' << ids_method_name(c.method)
                << ',' << c.n << ',' << c.seed << '\n';
}

/// Rows sharing (method, n, seed) form one curve, in order of first appearance.
/// Error radii are not part of the CSV schema.
[[nodiscard]] inline std::vector<IDSCurve> read_ids_csv(std::istream& in) {
    std::vector<IDSCurve> curves;
    std::map<std::tuple<int, std::int64_t, std::uint64_t>, std::size_t> index;
    for (const auto& row : read_csv_rows(in, kIdsCsvHeader)) {
        const IdsMethod method = parse_ids_method(row[2]);
        const auto n = parse_integer<std::int64_t>(row[3]);
        const auto seed = parse_integer<std::uint64_t>(row[4]);
        const auto key = std::make_tuple(static_cast<int>(method), n, seed);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, curves.size()).first;
            IDSCurve c;
            c.method = method;
            c.n = n;
            c.seed = seed;
            curves.push_back(std::move(c));
        }
        curves[it->second].energies.push_back(parse_double(row[0]));
        curves[it->second].values.push_back(parse_double(row[1]));
    }
    return curves;
}

[[nodiscard]] inline Json to_json(const IDSCurve& c) {
    Json points = Json::array();
    for (std::size_t i = 0; i < c.energies.size(); ++i) {
        Json p{{"E", json_number(c.energies[i])}, {"N", json_number(c.values[i])}};
        if (i < c.error_radius.size()) p["error_radius"] = json_number(c.error_radius[i]);
        points.push_back(std::move(p));
    }
    return Json{{"method", ids_method_name(c.method)}, {"n", c.n}, {"seed", c.seed}, {"points", points}};
}

[[nodiscard]] inline IDSCurve ids_curve_from_json(const Json& j) {
    IDSCurve c;
    c.method = parse_ids_method(j.at("method").get<std::string>());
    c.n = j.at("n").get<std::int64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("points")) {
        c.energies.push_back(json_to_double(p.at("E")));
        c.values.push_back(json_to_double(p.at("N")));
        if (p.contains("error_radius")) c.error_radius.push_back(json_to_double(p.at("error_radius")));
    }
    return c;
}

/// A JSON document: run configuration, model descriptor and curves.
struct IdsDocument {
    Json config = Json::object();
    Json model = Json::object();
    std::vector<IDSCurve> curves;
};

[[nodiscard]] inline Json to_json(const IdsDocument& doc) {
    Json curves = Json::array();
    for (const auto& c : doc.curves) curves.push_back(to_json(c));
    return Json{{"config", doc.config}, {"model", doc.model}, {"curves", curves}};
}

[[nodiscard]] inline IdsDocument ids_document_from_json(const Json& j) {
    IdsDocument doc;
    doc.config = j.at("config");
    doc.model = j.at("model");
    for (const auto& c : j.at("curves")) doc.curves.push_back(ids_curve_from_json(c));
    return doc;
}

// ---------------------------------------------------------------------------
// Rotation curves
// ---------------------------------------------------------------------------

inline constexpr std::string_view kRotationCsvHeader = "a,rho,error_radius,n,seed";

struct RotationCurve {
    std::vector<double> params;
    std::vector<RotationEstimate> estimates;
    std::uint64_t seed = 0;
};

inline void write_rotation_csv(std::ostream& out, const RotationCurve& c) {
    out << kRotationCsvHeader << '\n';
    for (std::size_t i = 0; i < c.params.size(); ++i) {
        const auto& e = c.estimates[i];
        out << format_double(c.params[i]) << ',' << format_double(e.value) << ',' << format_double(e.error_radius)
            << ',' << e.n << ',' << c.seed << '\n';
    }
}

[[nodiscard]] inline RotationCurve read_rotation_csv(std::istream& in) {
    RotationCurve c;
    bool first = true;
    for (const auto& row : read_csv_rows(in, kRotationCsvHeader)) {
        c.params.push_back(parse_double(row[0]));
        RotationEstimate e;
        e.value = parse_double(row[1]);
        e.error_radius = parse_double(row[2]);
        e.n = parse_integer<std::int64_t>(row[3]);
        const auto seed = parse_integer<std::uint64_t>(row[4]);
        if (first) c.seed = seed;
        else if (seed != c.seed) throw ConfigError("csv: rotation curve mixes seeds");
        first = false;
        c.estimates.push_back(e);
    }
    return c;
}

struct RotationDocument {
    Json config = Json::object();
    Json family = Json::object();
    Json omega0 = Json::object();
    RotationCurve curve;
};

[[nodiscard]] inline Json to_json(const RotationDocument& doc) {
    Json points = Json::array();
    for (std::size_t i = 0; i < doc.curve.params.size(); ++i) {
        const auto& e = doc.curve.estimates[i];
        points.push_back(Json{{"a", json_number(doc.curve.params[i])},
                              {"rho", json_number(e.value)},
                              {"error_radius", json_number(e.error_radius)},
                              {"n", e.n}});
    }
    return Json{{"config", doc.config},
                {"family", doc.family},
                {"omega0", doc.omega0},
                {"seed", doc.curve.seed},
                {"points", points}};
}

[[nodiscard]] inline RotationDocument rotation_document_from_json(const Json& j) {
    RotationDocument doc;
    doc.config = j.at("config");
    doc.family = j.at("family");
    doc.omega0 = j.at("omega0");
    doc.curve.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("points")) {
        doc.curve.params.push_back(json_to_double(p.at("a")));
        RotationEstimate e;
        e.value = json_to_double(p.at("rho"));
        e.error_radius = json_to_double(p.at("error_radius"));
        e.n = p.at("n").get<std::int64_t>();
        doc.curve.estimates.push_back(e);
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Lemma checks and modulus reports
// ---------------------------------------------------------------------------

[[nodiscard]] inline Json to_json(const LemmaCheck& c) {
    return Json{{"pass", c.pass},
                {"worst_margin", json_number(c.worst_margin)},
                {"worst_n", c.worst_n},
                {"worst_j", c.worst_j},
                {"corollary_pass", c.corollary_pass},
                {"corollary_worst_margin", json_number(c.corollary_worst_margin)},
                {"checks", c.checks},
                {"delta", json_number(c.delta)},
                {"swapped", c.swapped}};
}

[[nodiscard]] inline Json to_json(const SegmentCheck& c) {
    Json records = Json::array();
    for (const auto& r : c.records) {
        Json rec{{"j", r.j}, {"n_j", r.n_j}};
        rec["segment_log_sum"] = r.segment_log_sum ? json_number(*r.segment_log_sum) : Json(nullptr);
        records.push_back(std::move(rec));
    }
    Json j{{"status", segment_status_name(c.status)},
           {"worst_margin", json_number(c.worst_margin)},
           {"threshold", json_number(c.threshold)},
           {"segments", c.segments},
           {"delta", json_number(c.delta)},
           {"swapped", c.swapped},
           {"crossings", records}};
    j["diagnostic"] = c.diagnostic ? Json(*c.diagnostic) : Json(nullptr);
    return j;
}

[[nodiscard]] inline Json to_json(const ModulusReport& r) {
    Json pairs = Json::array();
    for (const auto& p : r.pairs)
        pairs.push_back(Json{{"a", p.a},
                             {"a2", p.a2},
                             {"drho", json_number(p.drho)},
                             {"score", json_number(p.score)},
                             {"allowance", json_number(p.allowance)}});
    Json grid = Json::array();
    for (double g : r.grid) grid.push_back(json_number(g));
    Json j{{"verdict", verdict_name(r.verdict)},
           {"message", r.message},
           {"family", r.family},
           {"n", r.n},
           {"omega0", to_json(r.omega0)},
           {"grid", grid},
           {"C", json_number(r.c)},
           {"R", json_number(r.r_estimate)},
           {"R_tail", json_number(r.r_tail)},
           {"threshold", json_number(r.threshold)},
           {"pair_count", r.pair_count},
           {"observed_sup", json_number(r.observed_sup)},
           {"worst_margin", json_number(r.worst_margin)},
           {"max_error_radius", json_number(r.max_error_radius)},
           {"distant_pair_count", r.distant_pair_count},
           {"distant_observed_sup", json_number(r.distant_observed_sup)},
           {"top_pairs", pairs}};
    if (r.ids_constant) j["ids_constant"] = json_number(*r.ids_constant);
    if (r.ids_observed_sup) j["ids_observed_sup"] = json_number(*r.ids_observed_sup);
    return j;
}

[[nodiscard]] inline std::string modulus_summary(const ModulusReport& r) {
    std::ostringstream s;
    s << "family            " << r.family << '\n'
      << "verdict           " << verdict_name(r.verdict) << '\n'
      << "                  " << r.message << '\n'
      << "n                 " << r.n << '\n'
      << "grid points       " << r.grid.size() << '\n'
      << "C                 " << format_double(r.c) << '\n'
      << "R                 " << format_double(r.r_estimate) << " (tail " << format_double(r.r_tail) << ")\n"
      << "pair threshold    " << format_double(r.threshold) << '\n'
      << "certified pairs   " << r.pair_count << '\n'
      << "observed sup      " << format_double(r.observed_sup) << '\n'
      << "worst margin      " << format_double(r.worst_margin) << '\n'
      << "max error radius  " << format_double(r.max_error_radius) << '\n'
      << "distant pairs     " << r.distant_pair_count << " (sup " << format_double(r.distant_observed_sup) << ")\n";
    if (r.ids_constant)
        s << "IDS constant      " << format_double(*r.ids_constant) << " (observed " << format_double(*r.ids_observed_sup)
          << ")\n";
    return s.str();
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

} // namespace rotnum
