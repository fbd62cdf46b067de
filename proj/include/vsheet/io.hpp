// io.hpp
//
// Run configuration, artifact emission, and orchestration for the CLI.
//
// Config files are flat key = value text with [section] headers and `#`
// comments. Outputs are flat files: one JSON record per accepted solution,
// CSV curve samples (one file per sheet copy), a human-readable family
// report with a JSON sidecar, and an optional static SVG rendering. All
// output is deterministic for a fixed config and build.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vsheet/functionals.hpp"
#include "vsheet/oracle.hpp"
#include "vsheet/solver.hpp"

namespace vsheet {

/// Which artifact families a run writes.
struct EmitFlags {
    bool coeffs = true;
    bool curves = true;
    bool report = true;
    bool svg = false;
};

/// A full run description: the problem/discretization config, the ε
/// targets, and output routing.
struct RunConfig {
    SheetConfig sheet;
    std::vector<double> epsilons;
    std::filesystem::path output_dir = "out";
    EmitFlags emit;
};

/// Parse and validate a config file (or raw text). Throws std::runtime_error
/// with a line-numbered message on syntax errors, unknown keys, or values
/// violating the SheetConfig invariants.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(std::string_view text);

/// Parse a comma/space-separated artifact list ("coeffs,curves,report,svg").
/// Throws std::runtime_error on unknown names.
EmitFlags parse_emit_flags(std::string_view list);

/// FNV-1a 64-bit hash of the computational parameters (mode, m, d, N, Q,
/// tolerances, ε) — stamped into records so artifacts are self-describing.
std::uint64_t record_hash(const SheetConfig& cfg, double epsilon);

/// Everything recomputable that a solution record stores alongside the
/// solution itself.
struct RecordAudit {
    EquilibriumReport oracle;
    SpectralDiagnostics spectral;
    double mirror_residual = 0.0;
};

/// Write one self-describing JSON record for an accepted solution.
void write_solution_record(const SheetSolution& sol, const RecordAudit& audit,
                           const std::filesystem::path& path);

/// A record read back from disk.
struct LoadedRecord {
    int format_version = 0;
    std::string config_hash;
    SheetSolution solution;  // config echo, ε, speed, coefficients, residuals
    RecordAudit audit;
};

LoadedRecord load_solution_record(const std::filesystem::path& path);

/// CSV curve samples, one file per sheet copy, written into `dir` with the
/// given stem: <stem>_sheet<k>.csv. Columns x, z1, z2, gamma, kappa; Q + 1
/// rows with the last row repeating the first (closed curve); 17-digit
/// formatting. The traveling companion sheet carries negated gamma.
void emit_curve(const SheetSolution& sol, const std::filesystem::path& dir,
                const std::string& stem);

/// Family report: aligned text table plus a JSON sidecar (<stem>.txt /
/// <stem>.json in `dir`). An empty run produces header-only files.
void emit_report(const ContinuationRun& run, const std::vector<RecordAudit>& audits,
                 const std::filesystem::path& dir, const std::string& stem);

/// Static SVG rendering of the largest-|ε| solution: one polyline per sheet
/// copy plus markers at the vortex centers.
void emit_svg(const ContinuationRun& run, const std::filesystem::path& path);

/// Exit codes shared by the orchestration entry points.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolve = 3;
inline constexpr int kExitOracle = 4;

/// Oracle acceptance thresholds applied by run() and validate_record().
inline constexpr double kOracleNormalTol = 1e-6;
inline constexpr double kOracleTangentTol = 1e-6;

/// Execute a full run: continuation over the config's ε targets, an oracle
/// audit of every accepted solution, artifact emission per the emit flags.
/// `single_epsilon` restricts the run to exactly one ε target (the `solve`
/// subcommand); a config listing several targets is then rejected.
/// Returns one of the kExit* codes; diagnostics go to stderr. Artifacts for
/// accepted solutions are retained even when the run fails late.
int run(const RunConfig& config, bool single_epsilon);

/// Reload a record, recompute its residual and oracle audit, and compare:
/// the recomputed solver residual must match to 1e−14 and the oracle
/// thresholds must hold. Returns kExitOk, kExitConfig (unreadable record),
/// or kExitOracle (mismatch).
int validate_record(const std::filesystem::path& record_path);

}  // namespace vsheet
