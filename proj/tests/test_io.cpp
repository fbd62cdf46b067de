// test_io.cpp
//
// Tests for configuration parsing, artifact emission, record round-trips,
// and the orchestration entry points (exit codes included).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsheet/io.hpp"
#include "vsheet/solver.hpp"

using namespace vsheet;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per test case, cleaned up on destruction.
struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("vsheet_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

const char* kGoodConfig = R"(# family sweep
[problem]
mode = co-rotating
m = 2
d = 2.0

[discretization]
N = 8
Q = 64
newton_tol = 1e-11
newton_max_iter = 25

[run]
epsilons = 0.005, 0.01
emit = coeffs, curves, report
)";

}  // namespace

TEST_CASE("parse_config_text accepts a full config with sections and comments") {
    const RunConfig rc = parse_config_text(kGoodConfig);
    CHECK(rc.sheet.mode == SheetMode::co_rotating);
    CHECK(rc.sheet.fold_count == 2);
    CHECK(rc.sheet.center_offset == doctest::Approx(2.0));
    CHECK(rc.sheet.series_order == 8);
    CHECK(rc.sheet.quadrature_size == 64);
    CHECK(rc.sheet.newton_tol == doctest::Approx(1e-11));
    CHECK(rc.sheet.newton_max_iter == 25);
    REQUIRE(rc.epsilons.size() == 2);
    CHECK(rc.epsilons[0] == doctest::Approx(0.005));
    CHECK(rc.epsilons[1] == doctest::Approx(0.01));
    CHECK(rc.emit.coeffs);
    CHECK(rc.emit.curves);
    CHECK(rc.emit.report);
    CHECK_FALSE(rc.emit.svg);
    CHECK(rc.output_dir == fs::path("out"));  // default
}

TEST_CASE("parse_config_text defaults and minimal form") {
    const RunConfig rc = parse_config_text("epsilons = 0.01\n");
    CHECK(rc.sheet.mode == SheetMode::co_rotating);
    CHECK(rc.sheet.series_order == 32);
    CHECK(rc.sheet.quadrature_size == 256);
    CHECK(rc.emit.coeffs);
    CHECK_FALSE(rc.emit.svg);
}

TEST_CASE("parse_config_text rejects malformed input with line numbers") {
    SUBCASE("unknown key") {
        try {
            (void)parse_config_text("epsilons = 0.01\nbogus = 1\n");
            FAIL("expected throw");
        } catch (const std::runtime_error& e) {
            const std::string msg = e.what();
            CHECK(msg.find("line 2") != std::string::npos);
            CHECK(msg.find("bogus") != std::string::npos);
        }
    }
    SUBCASE("bad number") {
        try {
            (void)parse_config_text("d = two\nepsilons = 0.01\n");
            FAIL("expected throw");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        }
    }
    SUBCASE("missing epsilons") {
        CHECK_THROWS_WITH_AS((void)parse_config_text("m = 2\n"),
                             "config: required key 'epsilons' is missing", std::runtime_error);
    }
    SUBCASE("bad mode") {
        CHECK_THROWS_AS((void)parse_config_text("mode = sideways\nepsilons = 0.01\n"),
                        std::runtime_error);
    }
    SUBCASE("offset violating the structural invariant") {
        try {
            (void)parse_config_text("d = 0.5\nepsilons = 0.01\n");
            FAIL("expected throw");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("d") != std::string::npos);
        }
    }
    SUBCASE("epsilon out of range") {
        CHECK_THROWS_AS((void)parse_config_text("epsilons = 0.7\n"), std::runtime_error);
    }
    SUBCASE("missing equals sign") {
        CHECK_THROWS_AS((void)parse_config_text("epsilons 0.01\n"), std::runtime_error);
    }
    SUBCASE("malformed section header") {
        CHECK_THROWS_AS((void)parse_config_text("[run\nepsilons = 0.01\n"),
                        std::runtime_error);
    }
}

TEST_CASE("parse_emit_flags") {
    const EmitFlags all = parse_emit_flags("coeffs, curves, report, svg");
    CHECK(all.coeffs);
    CHECK(all.curves);
    CHECK(all.report);
    CHECK(all.svg);

    const EmitFlags only_svg = parse_emit_flags("svg");
    CHECK_FALSE(only_svg.coeffs);
    CHECK_FALSE(only_svg.curves);
    CHECK_FALSE(only_svg.report);
    CHECK(only_svg.svg);

    CHECK_THROWS_AS((void)parse_emit_flags("coeffs, pictures"), std::runtime_error);
}

TEST_CASE("record_hash separates distinct computations and is stable") {
    SheetConfig a;
    const std::uint64_t ha = record_hash(a, 0.01);
    CHECK(ha == record_hash(a, 0.01));  // deterministic

    SheetConfig b = a;
    b.quadrature_size = 512;
    CHECK(record_hash(b, 0.01) != ha);

    SheetConfig c = a;
    c.mode = SheetMode::traveling;
    CHECK(record_hash(c, 0.01) != ha);

    CHECK(record_hash(a, 0.02) != ha);
}

TEST_CASE("solution records round trip through disk") {
    TempDir tmp("record");
    SheetConfig cfg;
    cfg.series_order = 8;
    cfg.quadrature_size = 64;
    const SheetSolution sol = newton_solve(cfg, 0.01);

    RecordAudit audit;
    audit.oracle = equilibrium_residual(sol);
    audit.spectral = spectral_diagnostics(sol);
    audit.mirror_residual = mirror_check(sol);

    const fs::path p = tmp.path / "rec.json";
    write_solution_record(sol, audit, p);
    REQUIRE(fs::exists(p));

    const LoadedRecord rec = load_solution_record(p);
    CHECK(rec.format_version == 1);
    CHECK(rec.solution.epsilon == sol.epsilon);  // exact through %.17g
    CHECK(rec.solution.speed.total == sol.speed.total);
    CHECK(rec.solution.config.quadrature_size == cfg.quadrature_size);
    CHECK(rec.solution.newton_iters == sol.newton_iters);
    REQUIRE(rec.solution.f.order() == sol.f.order());
    for (std::size_t j = 0; j < sol.f.order(); ++j) {
        CHECK(rec.solution.f.coeff[j] == sol.f.coeff[j]);
        CHECK(rec.solution.g.coeff[j] == sol.g.coeff[j]);
    }
    CHECK(rec.audit.mirror_residual == audit.mirror_residual);

    // The reloaded state reproduces the recorded residual to rounding.
    const ClosedResidual re = closed_residual(rec.solution.config,
                                              SheetState(rec.solution.epsilon,
                                                         rec.solution.f, rec.solution.g));
    CHECK(std::abs(re.residual_sup - rec.solution.residual_sup) <= 1e-14);
}

TEST_CASE("curve emission") {
    TempDir tmp("curve");
    SheetConfig cfg;
    cfg.series_order = 8;
    cfg.quadrature_size = 64;

    SUBCASE("co-rotating copies, closed rows, deterministic bytes") {
        const SheetSolution sol = newton_solve(cfg, 0.01);
        emit_curve(sol, tmp.path, "curve");
        const fs::path p0 = tmp.path / "curve_sheet0.csv";
        const fs::path p1 = tmp.path / "curve_sheet1.csv";
        REQUIRE(fs::exists(p0));
        REQUIRE(fs::exists(p1));

        const std::string text = read_file(p0);
        CHECK(count_lines(text) == cfg.quadrature_size + 2);  // header + Q + closing row
        CHECK(text.rfind("x,z1,z2,gamma,kappa", 0) == 0);

        // First and last data rows coincide (closed curve).
        const auto first_row = text.substr(text.find('\n') + 1);
        const std::string first_z = first_row.substr(first_row.find(','), 40);
        const auto last_newline = text.rfind('\n', text.size() - 2);
        const std::string last_row = text.substr(last_newline + 1);
        CHECK(last_row.find(first_z.substr(1, 10)) != std::string::npos);

        emit_curve(sol, tmp.path, "again");
        CHECK(read_file(tmp.path / "again_sheet0.csv") == text);  // byte-identical
    }
    SUBCASE("traveling emits the mirror companion") {
        SheetConfig tcfg = cfg;
        tcfg.mode = SheetMode::traveling;
        const SheetSolution sol = newton_solve(tcfg, 0.01);
        emit_curve(sol, tmp.path, "trav");
        REQUIRE(fs::exists(tmp.path / "trav_sheet1.csv"));
        const std::string text = read_file(tmp.path / "trav_sheet1.csv");
        // The companion carries the opposite weight: gamma column negative.
        const auto line_start = text.find('\n') + 1;
        const std::string row = text.substr(line_start, text.find('\n', line_start) - line_start);
        std::size_t commas = 0, pos = 0;
        for (std::size_t i = 0; i < row.size() && commas < 3; ++i)
            if (row[i] == ',') {
                ++commas;
                pos = i;
            }
        CHECK(row[pos + 1] == '-');
    }
}

TEST_CASE("family report emission") {
    TempDir tmp("report");
    SheetConfig cfg;
    cfg.series_order = 8;
    cfg.quadrature_size = 64;

    SUBCASE("empty run yields header-only artifacts") {
        ContinuationRun empty;
        empty.config = cfg;
        emit_report(empty, {}, tmp.path, "report");
        const std::string txt = read_file(tmp.path / "report.txt");
        CHECK(count_lines(txt) >= 1);
        CHECK(txt.find("eps") != std::string::npos);
        const std::string json_text = read_file(tmp.path / "report.json");
        CHECK(json_text.find("\"solutions\": []") != std::string::npos);
    }
    SUBCASE("family run lists one row per solution") {
        const std::vector<double> eps = {0.005, 0.01};
        const ContinuationRun run = continue_family(cfg, eps);
        std::vector<RecordAudit> audits;
        for (const SheetSolution& sol : run.solutions) {
            RecordAudit a;
            a.oracle = equilibrium_residual(sol, 256);
            a.spectral = spectral_diagnostics(sol);
            a.mirror_residual = mirror_check(sol);
            audits.push_back(a);
        }
        emit_report(run, audits, tmp.path, "report");
        const std::string txt = read_file(tmp.path / "report.txt");
        CHECK(count_lines(txt) == 1 + run.solutions.size());
        const std::string json_text = read_file(tmp.path / "report.json");
        CHECK(json_text.find("\"empirical_eps0\"") != std::string::npos);
        CHECK(json_text.find("\"truncated\": false") != std::string::npos);
    }
}

TEST_CASE("svg emission renders every sheet copy") {
    TempDir tmp("svg");
    SheetConfig cfg;
    cfg.fold_count = 3;
    cfg.series_order = 8;
    cfg.quadrature_size = 64;
    const std::vector<double> eps = {0.01};
    const ContinuationRun run = continue_family(cfg, eps);

    const fs::path p = tmp.path / "fam.svg";
    emit_svg(run, p);
    REQUIRE(fs::exists(p));
    const std::string svg = read_file(p);
    CHECK(svg.find("<svg") != std::string::npos);
    std::size_t polylines = 0;
    for (std::size_t at = svg.find("<polyline"); at != std::string::npos;
         at = svg.find("<polyline", at + 1))
        ++polylines;
    CHECK(polylines == 3);  // one per rotated copy

    emit_svg(run, tmp.path / "fam2.svg");
    CHECK(read_file(tmp.path / "fam2.svg") == svg);  // deterministic
}

TEST_CASE("run() end to end") {
    TempDir tmp("run");
    RunConfig rc = parse_config_text(kGoodConfig);
    rc.output_dir = tmp.path / "out";
    rc.emit.svg = true;

    const int code = run(rc, /*single_epsilon=*/false);
    CHECK(code == kExitOk);
    CHECK(fs::exists(rc.output_dir / "record_eps0.005.json"));
    CHECK(fs::exists(rc.output_dir / "record_eps0.01.json"));
    CHECK(fs::exists(rc.output_dir / "curve_eps0.01_sheet0.csv"));
    CHECK(fs::exists(rc.output_dir / "curve_eps0.01_sheet1.csv"));
    CHECK(fs::exists(rc.output_dir / "report.txt"));
    CHECK(fs::exists(rc.output_dir / "report.json"));
    CHECK(fs::exists(rc.output_dir / "family.svg"));

    SUBCASE("records validate in place") {
        CHECK(validate_record(rc.output_dir / "record_eps0.01.json") == kExitOk);
    }
    SUBCASE("tampered records are rejected") {
        const fs::path rec = rc.output_dir / "record_eps0.01.json";
        std::string text = read_file(rec);
        const auto at = text.find("\"residual_sup\"");
        REQUIRE(at != std::string::npos);
        // Corrupt the recorded residual by an order of magnitude.
        const auto colon = text.find(':', at);
        const auto comma = text.find(',', colon);
        text.replace(colon + 1, comma - colon - 1, " 1e-3");
        std::ofstream(rec) << text;
        CHECK(validate_record(rec) == kExitOracle);
    }
    SUBCASE("unreadable records exit with the config code") {
        CHECK(validate_record(rc.output_dir / "does_not_exist.json") == kExitConfig);
    }
}

TEST_CASE("run() rejects multi-target configs in single-epsilon mode") {
    TempDir tmp("single");
    RunConfig rc = parse_config_text(kGoodConfig);  // two epsilons
    rc.output_dir = tmp.path / "out";
    CHECK(run(rc, /*single_epsilon=*/true) == kExitConfig);
}

TEST_CASE("run() reports solve failures with the solve exit code") {
    TempDir tmp("starved");
    RunConfig rc = parse_config_text("epsilons = 0.04\nN = 8\nQ = 64\nnewton_max_iter = 1\n");
    rc.output_dir = tmp.path / "out";
    CHECK(run(rc, true) == kExitSolve);
}
