#pragma once

// Command implementations behind the `spectra` executable. Everything writes
// to caller-supplied streams so the commands can be exercised in-process.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lyap/lyap.hpp"

namespace spectra {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int non_concave = 1;
inline constexpr int invalid_input = 2;
inline constexpr int io_failure = 3;
inline constexpr int verification_failed = 4;
}  // namespace exit_code

/// Input could not be turned into a valid map or option set.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FamilySpec {
    std::string name = "linear";
    std::vector<double> slopes{3.0, 5.0};
    double c = 0.25;     // mobius
    double eps = 0.2;    // sine
    std::size_t depth = 0;  // 0: default for the branch count
};

struct GridSpec {
    bool automatic = true;
    double lo = 0;
    double hi = 0;
    std::size_t count = 2001;
};

struct RunConfig {
    std::optional<std::vector<double>> slopes;
    std::optional<std::vector<double>> log_slopes;
    std::optional<std::pair<double, double>> two_branch;
    std::optional<FamilySpec> family;
    GridSpec grid;
    std::string format = "csv";
    std::string out;  // empty: standard output
    double tol_class = 1e-9;
    double tol_root = 1e-12;
    std::optional<double> bifurcation_a;
};

// ---------------------------------------------------------------------------
// parsing

/// Accepts plain decimals plus `e`, `e^x` and `exp(x)` (optionally negated).
inline double parse_real(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw UsageError("empty number");
    double sign = 1;
    if (text.front() == '-' && text.size() > 1 && !std::isdigit(static_cast<unsigned char>(text[1])) && text[1] != '.') {
        sign = -1;
        text.remove_prefix(1);
    }
    if (text == "e") return sign * std::numbers::e;
    if (text.starts_with("e^")) return sign * std::exp(parse_real(text.substr(2)));
    if (text.starts_with("exp(") && text.ends_with(")")) return sign * std::exp(parse_real(text.substr(4, text.size() - 5)));

    double value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw UsageError("cannot parse number '" + std::string(text) + "'");
    return sign * value;
}

inline std::vector<double> parse_list(std::string_view text, char sep = ',') {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(sep, start);
        const auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        out.push_back(parse_real(piece));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

inline GridSpec parse_grid(std::string_view text) {
    if (text == "auto") return {};
    const auto parts = parse_list(text);
    if (parts.size() != 3) throw UsageError("grid must be 'auto' or lo,hi,count");
    if (!(parts[2] >= 3) || parts[2] != std::floor(parts[2])) throw UsageError("grid count must be an integer >= 3");
    if (!(parts[0] < parts[1])) throw UsageError("grid requires lo < hi");
    return {false, parts[0], parts[1], static_cast<std::size_t>(parts[2])};
}

/// `slopes=3:5,c=0.25` style parameter strings for --params.
inline void apply_family_params(FamilySpec& family, std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        const auto item = text.substr(start, end - start);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw UsageError("family parameter must be key=value: " + std::string(item));
        const auto key = item.substr(0, eq);
        const auto value = item.substr(eq + 1);
        if (key == "slopes") {
            family.slopes = parse_list(value, ':');
        } else if (key == "log_slopes") {
            family.slopes.clear();
            for (double l : parse_list(value, ':')) family.slopes.push_back(std::exp(l));
        } else if (key == "c") {
            family.c = parse_real(value);
        } else if (key == "eps") {
            family.eps = parse_real(value);
        } else {
            throw UsageError("unknown family parameter '" + std::string(key) + "'");
        }
        start = end + 1;
    }
}

namespace detail {

inline std::vector<double> json_numbers(const nlohmann::json& j) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>());
    return out;
}

}  // namespace detail

/// Loads a JSON file mirroring RunConfig. Keys: slopes, log_slopes,
/// two_branch, family {name, slopes, log_slopes, c, eps, depth}, grid
/// ("auto" or [lo, hi, count]), format, out, tolerances {class, root}.
inline RunConfig load_config(std::istream& in) {
    RunConfig cfg;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    try {
        if (j.contains("slopes")) cfg.slopes = detail::json_numbers(j["slopes"]);
        if (j.contains("log_slopes")) cfg.log_slopes = detail::json_numbers(j["log_slopes"]);
        if (j.contains("two_branch")) {
            const auto ab = detail::json_numbers(j["two_branch"]);
            if (ab.size() != 2) throw UsageError("config: two_branch needs [a, b]");
            cfg.two_branch = {ab[0], ab[1]};
        }
        if (j.contains("family")) {
            const auto& f = j["family"];
            FamilySpec fam;
            fam.name = f.value("name", fam.name);
            if (f.contains("slopes")) fam.slopes = detail::json_numbers(f["slopes"]);
            if (f.contains("log_slopes")) {
                fam.slopes.clear();
                for (double l : detail::json_numbers(f["log_slopes"])) fam.slopes.push_back(std::exp(l));
            }
            fam.c = f.value("c", fam.c);
            fam.eps = f.value("eps", fam.eps);
            fam.depth = f.value("depth", fam.depth);
            cfg.family = fam;
        }
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (g.is_string()) {
                cfg.grid = parse_grid(g.get<std::string>());
            } else {
                const auto v = detail::json_numbers(g);
                if (v.size() != 3) throw UsageError("config: grid needs [lo, hi, count]");
                std::ostringstream s;
                s << std::setprecision(17) << v[0] << ',' << v[1] << ',' << v[2];
                cfg.grid = parse_grid(s.str());
            }
        }
        cfg.format = j.value("format", cfg.format);
        cfg.out = j.value("out", cfg.out);
        if (j.contains("tolerances")) {
            cfg.tol_class = j["tolerances"].value("class", cfg.tol_class);
            cfg.tol_root = j["tolerances"].value("root", cfg.tol_root);
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// model resolution

struct ResolvedModel {
    std::variant<lyap::LinearPressure, lyap::CylinderPressure> model;
    std::string source;
    std::optional<lyap::LinearCookieCutter> linear;
    std::optional<FamilySpec> family;
    std::size_t depth = 0;
};

inline std::vector<lyap::BranchSpec> family_branches(const FamilySpec& f) {
    if (f.name == "linear") return lyap::linear_branches(f.slopes);
    if (f.name == "mobius") return lyap::mobius_branches(f.slopes, f.c);
    if (f.name == "sine") return lyap::sine_branches(f.slopes, f.eps);
    throw UsageError("unknown family '" + f.name + "' (expected linear, mobius or sine)");
}

inline std::string describe_list(const std::vector<double>& v) {
    std::ostringstream s;
    s << std::setprecision(17);
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ":" : "") << v[i];
    return s.str();
}

inline ResolvedModel resolve_model(const RunConfig& cfg) {
    const int given = cfg.slopes.has_value() + cfg.log_slopes.has_value() + cfg.two_branch.has_value() +
                      cfg.family.has_value();
    if (given != 1) throw UsageError("exactly one map specification is required "
                                     "(--slopes, --log-slopes, --two-branch or --family)");
    if (cfg.family) {
        auto fam = *cfg.family;
        const auto branches = family_branches(fam);
        const std::size_t depth = fam.depth ? fam.depth : lyap::default_depth(branches.size());
        fam.depth = depth;
        auto table = lyap::build_cylinders(branches, depth);
        std::ostringstream src;
        src << "family=" << fam.name << ";slopes=" << describe_list(fam.slopes);
        if (fam.name == "mobius") src << ";c=" << std::setprecision(17) << fam.c;
        if (fam.name == "sine") src << ";eps=" << std::setprecision(17) << fam.eps;
        src << ";depth=" << depth;
        return {lyap::CylinderPressure(std::move(table)), src.str(), std::nullopt, fam, depth};
    }

    std::optional<lyap::LinearCookieCutter> map;
    std::string src;
    if (cfg.slopes) {
        map = lyap::LinearCookieCutter(std::span<const double>(*cfg.slopes));
        src = "slopes=" + describe_list(*cfg.slopes);
    } else if (cfg.log_slopes) {
        map = lyap::LinearCookieCutter::from_log_slopes(std::span<const double>(*cfg.log_slopes));
        src = "log_slopes=" + describe_list(*cfg.log_slopes);
    } else {
        auto [a, b] = *cfg.two_branch;
        // validates 1 < a < b and the disjointness of the branch domains
        lyap::TwoBranchMap two(std::abs(a), std::abs(b));
        map = two.as_linear();
        src = "two_branch=" + describe_list({a, b});
    }
    return {lyap::LinearPressure(*map), src, map, std::nullopt, 0};
}

inline std::optional<lyap::TwoBranchMap> as_two_branch(const lyap::LinearCookieCutter& map) {
    if (map.branches() != 2 || map.degenerate()) return std::nullopt;
    const auto l = map.log_slopes();
    return lyap::TwoBranchMap::from_logs(std::min(l[0], l[1]), std::max(l[0], l[1]));
}

// ---------------------------------------------------------------------------
// output

inline std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

inline constexpr std::string_view csv_header = "t,alpha,pressure,sigma2,entropy,L,G";

inline void write_csv(const lyap::SpectrumCurve<double>& curve, std::ostream& out) {
    out << csv_header << '\n';
    for (const auto& p : curve.samples) {
        const double g = 2 * p.sigma2 * p.pressure - p.alpha * p.alpha;
        out << format_real(p.t) << ',' << format_real(p.alpha) << ',' << format_real(p.pressure) << ','
            << format_real(p.sigma2) << ',' << format_real(p.entropy) << ',' << format_real(p.spectrum_value) << ','
            << format_real(g) << '\n';
    }
}

struct CsvRow {
    double t, alpha, pressure, sigma2, entropy, L, G;
};

inline std::vector<CsvRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header) throw UsageError("csv: unexpected header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto v = parse_list(line);
        if (v.size() != 7) throw UsageError("csv: expected 7 columns");
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    return rows;
}

inline nlohmann::json curve_json(const lyap::SpectrumCurve<double>& curve) {
    nlohmann::json j;
    j["source"] = curve.source;
    j["degenerate"] = curve.degenerate;
    const auto& d = curve.domain;
    j["domain"] = {{"alpha_min", d.alpha_min}, {"alpha_max", d.alpha_max}, {"alpha_M", d.alpha_M},
                   {"t_d", d.t_d},             {"alpha_d", d.alpha_d},     {"dimension", d.dimension}};
    j["columns"] = {"t", "alpha", "pressure", "sigma2", "entropy", "L", "G"};
    auto rows = nlohmann::json::array();
    for (const auto& p : curve.samples) {
        const double g = 2 * p.sigma2 * p.pressure - p.alpha * p.alpha;
        rows.push_back({p.t, p.alpha, p.pressure, p.sigma2, p.entropy, p.spectrum_value, g});
    }
    j["rows"] = std::move(rows);
    return j;
}

inline nlohmann::json report_json(const lyap::ConcavityReport<double>& r) {
    nlohmann::json j;
    j["verdict"] = lyap::to_string(r.verdict);
    j["worst_margin"] = r.worst_margin;
    j["worst_t"] = r.worst_t;
    auto list = nlohmann::json::array();
    for (const auto& ip : r.inflections) {
        nlohmann::json e{{"t", ip.t_star}, {"alpha", ip.alpha_star}, {"bracket", {ip.bracket_lo, ip.bracket_hi}}};
        if (ip.transversality) e["transversality"] = *ip.transversality;
        list.push_back(std::move(e));
    }
    j["inflections"] = std::move(list);
    j["even_count"] = r.even_inflection_count();
    j["scan"] = {{"t_lo", r.t_lo}, {"t_hi", r.t_hi}, {"points", r.evaluations}, {"truncated", r.truncated}};
    j["degenerate"] = r.degenerate;
    return j;
}

// Writes to --out when given, else to `out`. Returns false on I/O failure.
template <class Writer>
bool emit(const RunConfig& cfg, std::ostream& out, Writer&& write) {
    if (cfg.out.empty()) {
        write(out);
        out.flush();
        return static_cast<bool>(out);
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) return false;
    write(file);
    file.flush();
    return static_cast<bool>(file);
}

// ---------------------------------------------------------------------------
// commands

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
    const auto resolved = resolve_model(cfg);
    const auto curve = std::visit(
        [&](const auto& model) {
            std::vector<double> grid;
            if (cfg.grid.automatic) {
                grid = lyap::default_grid(model, cfg.grid.count);
            } else {
                for (std::size_t i = 0; i < cfg.grid.count; ++i) {
                    grid.push_back(cfg.grid.lo + (cfg.grid.hi - cfg.grid.lo) * static_cast<double>(i) /
                                                     static_cast<double>(cfg.grid.count - 1));
                }
            }
            return lyap::sample_spectrum(model, std::span<const double>(grid), resolved.source);
        },
        resolved.model);
    if (curve.degenerate) {
        err << "warning: equal slopes; the spectrum is the single point (alpha, L) = ("
            << format_real(curve.samples.front().alpha) << ", " << format_real(curve.samples.front().spectrum_value)
            << ")\n";
    }
    const bool ok = emit(cfg, out, [&](std::ostream& o) {
        if (cfg.format == "csv") {
            write_csv(curve, o);
        } else {
            o << curve_json(curve).dump(2) << '\n';
        }
    });
    if (!ok) {
        err << "error: cannot write output" << (cfg.out.empty() ? "" : " to " + cfg.out) << '\n';
        return exit_code::io_failure;
    }
    return exit_code::ok;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto resolved = resolve_model(cfg);
    lyap::ScanOptions<double> opts;
    opts.tolerance = cfg.tol_class;
    const auto report = std::visit([&](const auto& model) { return lyap::classify(model, opts); }, resolved.model);

    nlohmann::json j = report_json(report);
    j["source"] = resolved.source;
    const bool numeric = lyap::is_concave(report.verdict);
    bool agree = true;
    if (resolved.linear && !resolved.linear->degenerate()) {
        const auto cc = lyap::corollary_c_check(*resolved.linear, opts);
        j["corollary_c"] = {{"concave", cc.concave}, {"boundary", cc.boundary}, {"worst_t", cc.worst_t},
                            {"worst_lhs", cc.worst_lhs}};
        agree = agree && cc.concave == numeric;
        if (const auto two = as_two_branch(*resolved.linear)) {
            const auto ta = lyap::theorem_a_check(*two, cfg.tol_class);
            j["theorem_a"] = {{"ratio", ta.ratio},     {"critical_ratio", ta.critical_ratio}, {"concave", ta.concave},
                              {"boundary", ta.boundary}, {"margin", ta.margin}};
            agree = agree && ta.concave == numeric;
        }
    }
    j["criteria_agree"] = agree;
    if (!agree) err << "warning: concavity criteria disagree\n";
    if (!report.even_inflection_count()) err << "warning: odd number of inflection points detected\n";
    if (report.truncated) err << "warning: scan window truncated before the tail test passed\n";

    const bool ok = emit(cfg, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
    if (!ok) {
        err << "error: cannot write output\n";
        return exit_code::io_failure;
    }
    return numeric ? exit_code::ok : exit_code::non_concave;
}

inline int cmd_bifurcation(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.bifurcation_a) throw UsageError("bifurcation needs the first slope a");
    const double a = *cfg.bifurcation_a;
    if (!(a > 1)) throw UsageError("slope a must exceed 1");
    const double ratio = lyap::critical_ratio<double>();
    const double log_b_star = ratio * std::log(a);
    const double b_star = lyap::bifurcation_slope(a);

    auto verdict_at = [&](double log_b) {
        const auto map = lyap::LinearCookieCutter::from_log_slopes({std::log(a), log_b});
        return lyap::classify(lyap::LinearPressure(map)).verdict;
    };
    // b*(1 -+ 1e-6) in log form
    const auto below = verdict_at(log_b_star + std::log1p(-1e-6));
    const auto above = verdict_at(log_b_star + std::log1p(1e-6));
    const bool flips = lyap::is_concave(below) && !lyap::is_concave(above);

    const bool ok = emit(cfg, out, [&](std::ostream& o) {
        o << "critical_ratio " << std::fixed << std::setprecision(10) << ratio << '\n';
        o << std::defaultfloat;
        o << "a " << format_real(a) << '\n';
        o << "b_star " << format_real(b_star) << '\n';
        o << "log_b_star " << format_real(log_b_star) << '\n';
        o << "verify b*(1-1e-6) " << lyap::to_string(below) << " | b*(1+1e-6) " << lyap::to_string(above)
          << (flips ? " | flip ok" : " | flip MISSING") << '\n';
    });
    if (!ok) {
        err << "error: cannot write output\n";
        return exit_code::io_failure;
    }
    if (!flips) {
        err << "error: classification does not flip across b*\n";
        return exit_code::verification_failed;
    }
    return exit_code::ok;
}

inline int cmd_bowen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto resolved = resolve_model(cfg);
    lyap::RootOptions<double> root;
    root.tolerance = cfg.tol_root;
    const auto [t_d, alpha_d, l_d] = std::visit(
        [&](const auto& model) {
            const double t = lyap::bowen_root(model, root);
            const auto p = lyap::thermo_point(model, t);
            return std::tuple{t, p.alpha, p.spectrum_value};
        },
        resolved.model);

    std::optional<double> previous;
    if (resolved.family && resolved.depth > 1) {
        const auto branches = family_branches(*resolved.family);
        previous = lyap::bowen_root(lyap::CylinderPressure(lyap::build_cylinders(branches, resolved.depth - 1)), root);
    }
    const bool ok = emit(cfg, out, [&](std::ostream& o) {
        o << "t_d " << format_real(t_d) << '\n';
        o << "alpha_d " << format_real(alpha_d) << '\n';
        o << "L(alpha_d) " << format_real(l_d) << '\n';
        if (previous) {
            o << "depth " << resolved.depth << " t_d(depth-1) " << format_real(*previous) << " |delta| "
              << format_real(std::abs(t_d - *previous)) << '\n';
        }
    });
    if (!ok) {
        err << "error: cannot write output\n";
        return exit_code::io_failure;
    }
    return exit_code::ok;
}

// ---------------------------------------------------------------------------
// entry point

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lyapunov spectra of cookie-cutter maps: pressure, Bowen root, concavity"};
    app.require_subcommand(1);

    std::string slopes, log_slopes, two_branch, family, params, grid, config_path, format, out_path;
    std::size_t depth = 0;
    std::optional<double> tol_class, tol_root;
    std::string a_text;

    auto add_map_options = [&](CLI::App* sub) {
        sub->add_option("--slopes", slopes, "comma-separated slopes, e.g. 2,4 or e,e^10");
        sub->add_option("--log-slopes", log_slopes, "comma-separated log|slope| values, e.g. 1,45");
        sub->add_option("--two-branch", two_branch, "two-branch slopes a,b with 1 < a < b");
        sub->add_option("--family", family, "nonlinear family: linear, mobius or sine");
        sub->add_option("--params", params, "family parameters, e.g. slopes=3:5,c=0.25");
        sub->add_option("--depth", depth, "cylinder depth for --family");
        sub->add_option("--config", config_path, "JSON config file (flags override)");
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--tol-class", tol_class, "classification tolerance");
        sub->add_option("--tol-root", tol_root, "root tolerance");
    };

    auto* spectrum = app.add_subcommand("spectrum", "export the sampled spectrum (CSV or JSON)");
    add_map_options(spectrum);
    spectrum->add_option("--grid", grid, "t-grid: auto or lo,hi,count");
    spectrum->add_option("--format", format, "csv or json");
    auto* classify = app.add_subcommand("classify", "concavity report as JSON; exit 1 when non-concave");
    add_map_options(classify);
    auto* bifurcation = app.add_subcommand("bifurcation", "critical slope b* for a given first slope a");
    bifurcation->add_option("a", a_text, "first slope a > 1 (e.g. e, e^2, 3)")->required();
    bifurcation->add_option("--out", out_path, "output path (default: stdout)");
    auto* bowen = app.add_subcommand("bowen", "root of the Bowen equation");
    add_map_options(bowen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::invalid_input;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                err << "error: cannot read config " << config_path << '\n';
                return exit_code::io_failure;
            }
            cfg = load_config(in);
        }
        const bool map_flag = !slopes.empty() || !log_slopes.empty() || !two_branch.empty() || !family.empty();
        if (map_flag) {
            cfg.slopes.reset();
            cfg.log_slopes.reset();
            cfg.two_branch.reset();
            cfg.family.reset();
        }
        if (!slopes.empty()) cfg.slopes = parse_list(slopes);
        if (!log_slopes.empty()) cfg.log_slopes = parse_list(log_slopes);
        if (!two_branch.empty()) {
            const auto ab = parse_list(two_branch);
            if (ab.size() != 2) throw UsageError("--two-branch needs exactly a,b");
            cfg.two_branch = {ab[0], ab[1]};
        }
        if (!family.empty()) {
            FamilySpec f;
            f.name = family;
            cfg.family = f;
        }
        if (cfg.family) {
            if (!params.empty()) apply_family_params(*cfg.family, params);
            if (depth) cfg.family->depth = depth;
        } else if (!params.empty() || depth) {
            throw UsageError("--params and --depth require --family");
        }
        if (!grid.empty()) cfg.grid = parse_grid(grid);
        if (!format.empty()) cfg.format = format;
        if (!out_path.empty()) cfg.out = out_path;
        if (tol_class) cfg.tol_class = *tol_class;
        if (tol_root) cfg.tol_root = *tol_root;

        if (spectrum->parsed()) return cmd_spectrum(cfg, out, err);
        if (classify->parsed()) return cmd_classify(cfg, out, err);
        if (bowen->parsed()) return cmd_bowen(cfg, out, err);
        cfg.bifurcation_a = parse_real(a_text);
        return cmd_bifurcation(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const lyap::InvalidModel& e) {
        err << "error: " << e.what() << '\n';
    } catch (const lyap::DomainError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const lyap::DegenerateModel& e) {
        err << "error: " << e.what() << '\n';
    } catch (const lyap::BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_code::invalid_input;
}

}  // namespace spectra
