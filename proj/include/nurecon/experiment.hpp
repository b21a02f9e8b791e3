#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nurecon/fourier_data.hpp"
#include "nurecon/piecewise.hpp"

namespace nurecon {

struct PieceSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::string expression;
};

struct ExperimentConfig {
    std::string function = "f1";  // f1, f2 or custom
    std::vector<PieceSpec> pieces;  // custom only
    Scheme scheme = Scheme::Jittered;
    std::vector<int> m_list{128, 256, 512};
    std::uint64_t seed = 42;
    double delta = 0.025;
    double alpha = 1.0;
    double kappa = 1.0 / 15.0;
    int p_floor = 0;
    std::optional<int> n_override;
    int grid_size = 1024;
    double svd_tol = 1e-12;
    double quadrature_tol = 1e-13;
    std::filesystem::path output_dir = "out";
    bool write_csv = true;
    bool write_svg = true;

    /// Throws ConfigError (or ParameterError from the expression parser).
    void validate() const;
    PiecewiseFunction build_function() const;
    /// single_jump, multiple_jumps or custom.
    std::string stem() const;
    /// key=value lines, one per setting, in a fixed order.
    std::vector<std::string> echo() const;
};

/// Sets one key from a config file or a command-line flag. Keys use the flag
/// names (function, scheme, m, seed, delta, alpha, kappa, p-floor, n, grid,
/// svd-tol, quadrature-tol, out, formats, piece); '_' is accepted for '-'.
/// A `piece` value "lo, hi, expr" appends one piece.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Plain key=value file; '#' starts a comment line. ConfigError names the line.
void load_config(std::istream& in, ExperimentConfig& cfg);

/// Midpoints (i + 0.5)/size.
std::vector<double> midpoint_grid(int size);

struct MRecord {
    int m = 0;
    int n = 0;
    int M = 0;
    int N = 0;
    int effective_rank = 0;
    double sup_err_filter_interior = 0;
    double sup_err_filter_global = 0;
    double sup_err_hybrid_global = 0;
    double sup_err_filter_buffers = 0;
    double sup_err_hybrid_buffers = 0;
    double max_imag_residual = 0;
    std::uint64_t frequency_fingerprint = 0;
    double wall_time = 0;  // seconds; not written to CSV
    std::string error;     // non-empty when this m failed numerically
    std::vector<std::string> warnings;
};

struct RunReport {
    std::vector<MRecord> records;  // in m_list order
    std::vector<std::string> config_echo;
    std::vector<std::filesystem::path> files;
    bool ok() const;
};

/// Runs every m (concurrently), writes the per-m CSVs, summary.csv,
/// convergence.csv and the SVG plots, and returns the report. Numerical
/// failures are recorded per m; configuration and I/O problems throw.
RunReport run_experiment(const ExperimentConfig& cfg);

struct ConvergenceRow {
    int m = 0;
    double sup_err = 0;
    std::optional<double> ratio;  // err(m_k) / err(m_{k-1})
};

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& ms, const std::vector<double>& errors);

enum class Metric { FilterInterior, FilterGlobal, HybridGlobal, HybridBuffers };
std::vector<ConvergenceRow> convergence_table(const RunReport& report, Metric metric);

void write_summary_csv(std::ostream& out, const RunReport& report);
void write_convergence_csv(std::ostream& out, const RunReport& report);

}  // namespace nurecon
