// io.cpp — config parsing, artifact emission, run orchestration.

#include "vsheet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace vsheet {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

int log_level() {
    const char* env = std::getenv("VSHEET_LOG");
    return env ? std::atoi(env) : 0;
}

void log_line(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "[vsheet] " << msg << "\n";
}

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_real(const std::string& value, int line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config line " + std::to_string(line_no) + ": value of '" +
                                 key + "' is not a number: '" + value + "'");
    }
}

long parse_integer(const std::string& value, int line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config line " + std::to_string(line_no) + ": value of '" +
                                 key + "' is not an integer: '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string current;
    for (char c : value) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!current.empty()) items.push_back(std::exchange(current, {}));
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) items.push_back(current);
    return items;
}

/// Fixed 17-significant-digit formatting (shortest would also round-trip,
/// but a fixed width keeps the files byte-stable across libc versions).
std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string num6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

json speed_to_json(const SpeedClosure& s) {
    return json{{"base", s.base}, {"correction", s.correction}, {"total", s.total}};
}

json config_to_json(const SheetConfig& cfg) {
    return json{{"mode", cfg.mode == SheetMode::co_rotating ? "co-rotating" : "traveling"},
                {"m", cfg.fold_count},
                {"d", cfg.center_offset},
                {"N", cfg.series_order},
                {"Q", cfg.quadrature_size},
                {"newton_tol", cfg.newton_tol},
                {"newton_max_iter", cfg.newton_max_iter}};
}

SheetConfig config_from_json(const json& j) {
    SheetConfig cfg;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "co-rotating") {
        cfg.mode = SheetMode::co_rotating;
    } else if (mode == "traveling") {
        cfg.mode = SheetMode::traveling;
    } else {
        throw std::runtime_error("record: unknown mode '" + mode + "'");
    }
    cfg.fold_count = j.at("m").get<int>();
    cfg.center_offset = j.at("d").get<double>();
    cfg.series_order = j.at("N").get<std::size_t>();
    cfg.quadrature_size = j.at("Q").get<std::size_t>();
    cfg.newton_tol = j.at("newton_tol").get<double>();
    cfg.newton_max_iter = j.at("newton_max_iter").get<int>();
    return cfg;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Filename-safe ε tag: 0.01 -> "0.01", -0.02 -> "m0.02".
std::string eps_tag(double eps) {
    std::string t = num6(eps);
    if (!t.empty() && t.front() == '-') t = "m" + t.substr(1);
    return t;
}

}  // namespace

RunConfig parse_config_text(std::string_view text) {
    RunConfig rc;
    bool emit_seen = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    std::string section;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto comment = raw.find('#');
        if (comment != std::string::npos) raw.erase(comment);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": empty key or value");

        if (key == "mode") {
            if (value == "co-rotating") {
                rc.sheet.mode = SheetMode::co_rotating;
            } else if (value == "traveling") {
                rc.sheet.mode = SheetMode::traveling;
            } else {
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": mode must be 'co-rotating' or 'traveling'");
            }
        } else if (key == "m") {
            rc.sheet.fold_count = static_cast<int>(parse_integer(value, line_no, key));
        } else if (key == "d") {
            rc.sheet.center_offset = parse_real(value, line_no, key);
        } else if (key == "N") {
            rc.sheet.series_order =
                static_cast<std::size_t>(parse_integer(value, line_no, key));
        } else if (key == "Q") {
            rc.sheet.quadrature_size =
                static_cast<std::size_t>(parse_integer(value, line_no, key));
        } else if (key == "newton_tol") {
            rc.sheet.newton_tol = parse_real(value, line_no, key);
        } else if (key == "newton_max_iter") {
            rc.sheet.newton_max_iter = static_cast<int>(parse_integer(value, line_no, key));
        } else if (key == "epsilons") {
            rc.epsilons.clear();
            for (const std::string& item : split_list(value))
                rc.epsilons.push_back(parse_real(item, line_no, key));
            if (rc.epsilons.empty())
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": epsilons list is empty");
        } else if (key == "dir" || key == "output_dir") {
            rc.output_dir = value;
        } else if (key == "emit") {
            emit_seen = true;
            try {
                rc.emit = parse_emit_flags(value);
            } catch (const std::runtime_error& e) {
                throw std::runtime_error("config line " + std::to_string(line_no) + ": " +
                                         e.what());
            }
        } else {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": unknown key '" + key +
                                     (section.empty() ? "'" : "' in section [" + section + "]"));
        }
    }

    if (rc.epsilons.empty())
        throw std::runtime_error("config: required key 'epsilons' is missing");
    try {
        rc.sheet.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    for (double eps : rc.epsilons)
        if (!(std::abs(eps) < 0.5))
            throw std::runtime_error("config: every epsilon must satisfy |eps| < 1/2");
    (void)emit_seen;
    return rc;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

EmitFlags parse_emit_flags(std::string_view list) {
    EmitFlags flags{false, false, false, false};
    for (const std::string& item : split_list(std::string(list))) {
        if (item == "coeffs") {
            flags.coeffs = true;
        } else if (item == "curves") {
            flags.curves = true;
        } else if (item == "report") {
            flags.report = true;
        } else if (item == "svg") {
            flags.svg = true;
        } else {
            throw std::runtime_error("unknown emit flag '" + item + "'");
        }
    }
    return flags;
}

std::uint64_t record_hash(const SheetConfig& cfg, double epsilon) {
    std::string canon;
    canon += (cfg.mode == SheetMode::co_rotating) ? "co-rotating" : "traveling";
    canon += "|m=" + std::to_string(cfg.fold_count);
    canon += "|d=" + num17(cfg.center_offset);
    canon += "|N=" + std::to_string(cfg.series_order);
    canon += "|Q=" + std::to_string(cfg.quadrature_size);
    canon += "|tol=" + num17(cfg.newton_tol);
    canon += "|maxit=" + std::to_string(cfg.newton_max_iter);
    canon += "|eps=" + num17(epsilon);

    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64 offset basis
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;  // FNV prime
    }
    return h;
}

void write_solution_record(const SheetSolution& sol, const RecordAudit& audit,
                           const std::filesystem::path& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["config_hash"] = hash_hex(record_hash(sol.config, sol.epsilon));
    j["config"] = config_to_json(sol.config);
    j["epsilon"] = sol.epsilon;
    j["speed"] = speed_to_json(sol.speed);
    j["f_coefficients"] = sol.f.coeff;
    j["g_coefficients"] = sol.g.coeff;
    j["residual_sup"] = sol.residual_sup;
    j["residual_l2"] = sol.residual_l2;
    j["newton_iters"] = sol.newton_iters;
    j["residual_history"] = sol.residual_history;
    j["oracle"] = json{{"normal_residual_sup", audit.oracle.normal_residual_sup},
                       {"tangential_constancy", audit.oracle.tangential_constancy},
                       {"tangential_mean", audit.oracle.tangential_mean},
                       {"curvature_min", audit.oracle.curvature_min},
                       {"curve_is_convex", audit.oracle.curve_is_convex},
                       {"mirror_residual", audit.mirror_residual}};
    j["spectral"] =
        json{{"tail_ratio", audit.spectral.tail_ratio}, {"decay_rate", audit.spectral.decay_rate}};
    write_text_file(path, j.dump(2) + "\n");
}

LoadedRecord load_solution_record(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read record: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("record parse error in " + path.string() + ": " + e.what());
    }

    LoadedRecord rec;
    try {
        rec.format_version = j.at("format_version").get<int>();
        rec.config_hash = j.at("config_hash").get<std::string>();
        rec.solution.config = config_from_json(j.at("config"));
        rec.solution.epsilon = j.at("epsilon").get<double>();
        rec.solution.speed.base = j.at("speed").at("base").get<double>();
        rec.solution.speed.correction = j.at("speed").at("correction").get<double>();
        rec.solution.speed.total = j.at("speed").at("total").get<double>();
        rec.solution.f = EvenSeries(j.at("f_coefficients").get<std::vector<double>>());
        rec.solution.g = EvenSeries(j.at("g_coefficients").get<std::vector<double>>());
        rec.solution.residual_sup = j.at("residual_sup").get<double>();
        rec.solution.residual_l2 = j.at("residual_l2").get<double>();
        rec.solution.newton_iters = j.at("newton_iters").get<int>();
        rec.solution.residual_history = j.at("residual_history").get<std::vector<double>>();
        const json& o = j.at("oracle");
        rec.audit.oracle.normal_residual_sup = o.at("normal_residual_sup").get<double>();
        rec.audit.oracle.tangential_constancy = o.at("tangential_constancy").get<double>();
        rec.audit.oracle.tangential_mean = o.at("tangential_mean").get<double>();
        rec.audit.oracle.curvature_min = o.at("curvature_min").get<double>();
        rec.audit.oracle.curve_is_convex = o.at("curve_is_convex").get<bool>();
        rec.audit.mirror_residual = o.at("mirror_residual").get<double>();
        rec.audit.spectral.tail_ratio = j.at("spectral").at("tail_ratio").get<double>();
        rec.audit.spectral.decay_rate = j.at("spectral").at("decay_rate").get<double>();
    } catch (const json::exception& e) {
        throw std::runtime_error("record field error in " + path.string() + ": " + e.what());
    }
    return rec;
}

void emit_curve(const SheetSolution& sol, const std::filesystem::path& dir,
                const std::string& stem) {
    const std::size_t q_count = sol.config.quadrature_size;
    const double d = sol.config.center_offset;
    const std::vector<double> x = fourier_grid(q_count);
    const std::vector<double> g = synth(sol.g, q_count);
    const CurvatureProfile curv = curvature_profile(sol);

    std::vector<double> gamma(q_count), kappa(q_count);
    for (std::size_t q = 0; q < q_count; ++q) {
        gamma[q] = 1.0 + sol.epsilon * g[q];
        kappa[q] = (sol.epsilon != 0.0) ? curv.scaled.values[q] / sol.epsilon : 0.0;
    }

    const int sheet_count =
        (sol.config.mode == SheetMode::co_rotating) ? sol.config.fold_count : 2;
    for (int k = 0; k < sheet_count; ++k) {
        std::string csv = "x,z1,z2,gamma,kappa\n";
        const bool mirror = (sol.config.mode == SheetMode::traveling) && k == 1;
        const double theta =
            (sol.config.mode == SheetMode::co_rotating)
                ? 2.0 * std::numbers::pi * static_cast<double>(k) / sol.config.fold_count
                : 0.0;
        const double cth = std::cos(theta);
        const double sth = std::sin(theta);
        for (std::size_t row = 0; row <= q_count; ++row) {
            const std::size_t q = row % q_count;
            double z1 = sol.curve[q].z1;
            double z2 = sol.curve[q].z2;
            if (mirror) {
                z1 = 2.0 * d - z1;
                z2 = -z2;
            } else {
                const double wx = z1 - d;
                const double wy = z2;
                z1 = d + cth * wx - sth * wy;
                z2 = sth * wx + cth * wy;
            }
            const double gval = mirror ? -gamma[q] : gamma[q];
            csv += num17(x[q]) + "," + num17(z1) + "," + num17(z2) + "," + num17(gval) + "," +
                   num17(kappa[q]) + "\n";
        }
        write_text_file(dir / (stem + "_sheet" + std::to_string(k) + ".csv"), csv);
    }
}

namespace {

std::string report_header() {
    return "eps            speed          |speed-base|/eps  residual_sup   oracle_normal  "
           "min_eps_kappa  iters  tail_ratio\n";
}

std::string report_row(const SheetSolution& sol, const RecordAudit& audit) {
    const double drift =
        (sol.epsilon != 0.0) ? std::abs(sol.speed.total - sol.speed.base) / std::abs(sol.epsilon)
                             : 0.0;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-14.6g %-14.10g %-17.6g %-14.6g %-14.6g %-14.6g %-6d %.6g\n",
                  sol.epsilon, sol.speed.total, drift, sol.residual_sup,
                  audit.oracle.normal_residual_sup, audit.oracle.curvature_min,
                  sol.newton_iters, audit.spectral.tail_ratio);
    return buf;
}

}  // namespace

void emit_report(const ContinuationRun& run, const std::vector<RecordAudit>& audits,
                 const std::filesystem::path& dir, const std::string& stem) {
    if (audits.size() != run.solutions.size())
        throw std::invalid_argument("emit_report: one audit per solution required");

    std::string txt = report_header();
    json rows = json::array();
    for (std::size_t i = 0; i < run.solutions.size(); ++i) {
        const SheetSolution& sol = run.solutions[i];
        const RecordAudit& audit = audits[i];
        txt += report_row(sol, audit);
        rows.push_back(json{
            {"epsilon", sol.epsilon},
            {"speed", speed_to_json(sol.speed)},
            {"residual_sup", sol.residual_sup},
            {"oracle_normal", audit.oracle.normal_residual_sup},
            {"oracle_tangential_constancy", audit.oracle.tangential_constancy},
            {"curvature_min", audit.oracle.curvature_min},
            {"newton_iters", sol.newton_iters},
            {"tail_ratio", audit.spectral.tail_ratio},
            {"mirror_residual", audit.mirror_residual},
        });
    }
    if (run.truncated) txt += "# truncated: " + run.failure_reason + "\n";

    json sidecar;
    sidecar["format_version"] = kFormatVersion;
    sidecar["config"] = config_to_json(run.config);
    sidecar["empirical_eps0"] = run.empirical_eps0;
    sidecar["truncated"] = run.truncated;
    sidecar["failure_reason"] = run.failure_reason;
    sidecar["solutions"] = rows;

    write_text_file(dir / (stem + ".txt"), txt);
    write_text_file(dir / (stem + ".json"), sidecar.dump(2) + "\n");
}

void emit_svg(const ContinuationRun& run, const std::filesystem::path& path) {
    // Render the largest-|ε| solution; an empty run renders the centers only.
    std::vector<std::vector<std::pair<double, double>>> polylines;
    std::vector<std::pair<double, double>> centers;

    const SheetConfig& cfg = run.config;
    const double d = cfg.center_offset;
    if (cfg.mode == SheetMode::co_rotating) {
        for (int k = 0; k < cfg.fold_count; ++k) {
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(k) / cfg.fold_count;
            centers.emplace_back(d + std::cos(theta) * (0.0 - d), std::sin(theta) * (0.0 - d));
        }
    } else {
        centers.emplace_back(0.0, 0.0);
        centers.emplace_back(2.0 * d, 0.0);
    }

    if (!run.solutions.empty()) {
        const SheetSolution& sol = run.solutions.back();
        const int sheet_count =
            (cfg.mode == SheetMode::co_rotating) ? cfg.fold_count : 2;
        for (int k = 0; k < sheet_count; ++k) {
            std::vector<std::pair<double, double>> line;
            const bool mirror = (cfg.mode == SheetMode::traveling) && k == 1;
            const double theta =
                (cfg.mode == SheetMode::co_rotating)
                    ? 2.0 * std::numbers::pi * static_cast<double>(k) / cfg.fold_count
                    : 0.0;
            for (std::size_t q = 0; q <= sol.curve.size(); ++q) {
                const CurvePoint& cp = sol.curve[q % sol.curve.size()];
                double z1 = cp.z1, z2 = cp.z2;
                if (mirror) {
                    z1 = 2.0 * d - z1;
                    z2 = -z2;
                } else {
                    const double wx = z1 - d, wy = z2;
                    z1 = d + std::cos(theta) * wx - std::sin(theta) * wy;
                    z2 = std::sin(theta) * wx + std::cos(theta) * wy;
                }
                line.emplace_back(z1, z2);
            }
            polylines.push_back(std::move(line));
        }
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    const auto extend = [&](double px, double py) {
        xmin = std::min(xmin, px);
        xmax = std::max(xmax, px);
        ymin = std::min(ymin, py);
        ymax = std::max(ymax, py);
    };
    for (const auto& [cx, cy] : centers) extend(cx, cy);
    for (const auto& line : polylines)
        for (const auto& [px, py] : line) extend(px, py);
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
    const double margin = 0.1 * span;
    xmin -= margin;
    ymin -= margin;
    const double scale = 800.0 / (span + 2.0 * margin);

    const auto map_x = [&](double px) { return (px - xmin) * scale; };
    const auto map_y = [&](double py) { return 800.0 - (py - ymin) * scale; };

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n";
    svg += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (const auto& line : polylines) {
        svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (const auto& [px, py] : line)
            svg += num6(map_x(px)) + "," + num6(map_y(py)) + " ";
        svg += "\"/>\n";
    }
    for (const auto& [cx, cy] : centers)
        svg += "<circle cx=\"" + num6(map_x(cx)) + "\" cy=\"" + num6(map_y(cy)) +
               "\" r=\"3\" fill=\"red\"/>\n";
    svg += "</svg>\n";
    write_text_file(path, svg);
}

int run(const RunConfig& config, bool single_epsilon) {
    if (single_epsilon && config.epsilons.size() != 1) {
        std::cerr << "solve expects exactly one epsilon in the config (found "
                  << config.epsilons.size() << "); use the continue subcommand for families\n";
        return kExitConfig;
    }

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << config.output_dir << ": "
                  << ec.message() << "\n";
        return kExitConfig;
    }

    log_line(1, "starting continuation over " + std::to_string(config.epsilons.size()) +
                    " epsilon target(s)");
    ContinuationRun run_result;
    try {
        run_result = continue_family(config.sheet, config.epsilons);
    } catch (const std::exception& e) {
        std::cerr << "continuation failed before any solve: " << e.what() << "\n";
        return kExitConfig;  // precondition violations (bad targets)
    }

    // Audit every accepted solution, then emit artifacts even if something
    // failed late — partial evidence is worth keeping.
    std::vector<RecordAudit> audits;
    audits.reserve(run_result.solutions.size());
    bool oracle_ok = true;
    for (const SheetSolution& sol : run_result.solutions) {
        RecordAudit audit;
        audit.oracle = equilibrium_residual(sol);
        audit.spectral = spectral_diagnostics(sol);
        audit.mirror_residual = mirror_check(sol);
        if (audit.oracle.normal_residual_sup > kOracleNormalTol ||
            audit.oracle.tangential_constancy > kOracleTangentTol ||
            !audit.oracle.curve_is_convex ||
            audit.mirror_residual > 10.0 * sol.config.newton_tol)
            oracle_ok = false;
        audits.push_back(audit);
        log_line(1, "eps " + num6(sol.epsilon) + ": speed " + num6(sol.speed.total) +
                        ", residual " + num6(sol.residual_sup) + ", oracle " +
                        num6(audit.oracle.normal_residual_sup));
    }

    for (std::size_t i = 0; i < run_result.solutions.size(); ++i) {
        const SheetSolution& sol = run_result.solutions[i];
        const std::string tag = eps_tag(sol.epsilon);
        if (config.emit.coeffs)
            write_solution_record(sol, audits[i],
                                  config.output_dir / ("record_eps" + tag + ".json"));
        if (config.emit.curves) emit_curve(sol, config.output_dir, "curve_eps" + tag);
    }
    if (config.emit.report) emit_report(run_result, audits, config.output_dir, "report");
    if (config.emit.svg) emit_svg(run_result, config.output_dir / "family.svg");

    if (run_result.truncated) {
        std::cerr << "continuation truncated: " << run_result.failure_reason << "\n";
        return kExitSolve;
    }
    if (!oracle_ok) {
        std::cerr << "oracle audit failed for at least one solution (see records)\n";
        return kExitOracle;
    }
    log_line(1, "run complete: " + std::to_string(run_result.solutions.size()) +
                    " solution(s), empirical eps0 " + num6(run_result.empirical_eps0));
    return kExitOk;
}

int validate_record(const std::filesystem::path& record_path) {
    LoadedRecord rec;
    try {
        rec = load_solution_record(record_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        const SheetState state(rec.solution.epsilon, rec.solution.f, rec.solution.g);
        const ClosedResidual res = closed_residual(rec.solution.config, state);
        const double drift = std::abs(res.residual_sup - rec.solution.residual_sup);
        if (drift > 1e-14) {
            std::cerr << "residual mismatch: recorded " << num17(rec.solution.residual_sup)
                      << ", recomputed " << num17(res.residual_sup) << "\n";
            return kExitOracle;
        }

        // Rebuild the solution wrapper so the oracle can re-audit it.
        SheetSolution sol = rec.solution;
        sol.speed = res.speed;
        const EquilibriumReport oracle = equilibrium_residual(sol);
        if (oracle.normal_residual_sup > kOracleNormalTol ||
            oracle.tangential_constancy > kOracleTangentTol || !oracle.curve_is_convex) {
            std::cerr << "oracle audit failed on revalidation: normal "
                      << num6(oracle.normal_residual_sup) << ", tangential "
                      << num6(oracle.tangential_constancy) << "\n";
            return kExitOracle;
        }
    } catch (const std::exception& e) {
        std::cerr << "revalidation failed: " << e.what() << "\n";
        return kExitOracle;
    }
    log_line(1, "record validated: " + record_path.string());
    return kExitOk;
}

}  // namespace vsheet
