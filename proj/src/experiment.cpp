#include "nurecon/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <ostream>

#include "nurecon/csv.hpp"
#include "nurecon/error.hpp"
#include "nurecon/expression.hpp"
#include "nurecon/hybrid.hpp"
#include "nurecon/oracles.hpp"
#include "nurecon/svg.hpp"

namespace nurecon {

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string_view short_name(Scheme s) {
    switch (s) {
        case Scheme::Jittered: return "jit";
        case Scheme::Log: return "log";
        case Scheme::Uniform: return "uni";
    }
    return "?";
}

std::string normalize_key(std::string_view key) {
    std::string k(csv::trim(key));
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
    if (m_list.empty()) throw ConfigError("m list is empty");
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        if (m_list[i] < 2) throw ConfigError("m must be >= 2, got " + std::to_string(m_list[i]));
        if (i > 0 && m_list[i] <= m_list[i - 1]) throw ConfigError("m list must be strictly ascending");
    }
    if (grid_size < 64) throw ConfigError("grid size must be >= 64, got " + std::to_string(grid_size));
    if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
    if (!(kappa > 0.0)) throw ConfigError("kappa must be > 0");
    if (p_floor < 0) throw ConfigError("p-floor must be >= 0");
    if (n_override && *n_override < 1) throw ConfigError("n must be >= 1");
    if (!(svd_tol >= 0.0)) throw ConfigError("svd-tol must be >= 0");
    if (!(quadrature_tol > 0.0)) throw ConfigError("quadrature-tol must be > 0");
    if (!(delta > 0.0)) throw ConfigError("delta must be > 0");
    const auto f = build_function();
    const auto& br = f.breakpoints();
    for (std::size_t l = 0; l + 1 < br.size(); ++l) {
        if (!(br[l + 1] - br[l] > 2.0 * delta)) {
            throw ConfigError("delta = " + shortest(delta) + " is not below half the width of subinterval [" +
                              shortest(br[l]) + ", " + shortest(br[l + 1]) + "]");
        }
    }
}

PiecewiseFunction ExperimentConfig::build_function() const {
    if (function == "f1") return builtin_f1();
    if (function == "f2") return builtin_f2();
    if (function != "custom") throw ConfigError("unknown function '" + function + "' (expected f1, f2 or custom)");
    if (pieces.empty()) throw ConfigError("custom function needs at least one piece");
    std::vector<SmoothPiece> ps;
    for (const auto& p : pieces) ps.push_back({{p.lo, p.hi}, parse_expression(p.expression)});
    try {
        return PiecewiseFunction(std::move(ps));
    } catch (const Error& e) {
        throw ConfigError(std::string("custom pieces: ") + e.what());
    }
}

std::string ExperimentConfig::stem() const {
    if (function == "f1") return "single_jump";
    if (function == "f2") return "multiple_jumps";
    return "custom";
}

std::vector<std::string> ExperimentConfig::echo() const {
    std::vector<std::string> e;
    e.push_back("function=" + function);
    for (const auto& p : pieces) e.push_back("piece=" + shortest(p.lo) + ", " + shortest(p.hi) + ", " + p.expression);
    e.push_back("scheme=" + std::string(to_string(scheme)));
    std::string ms;
    for (std::size_t i = 0; i < m_list.size(); ++i) ms += (i ? "," : "") + std::to_string(m_list[i]);
    e.push_back("m=" + ms);
    e.push_back("seed=" + std::to_string(seed));
    e.push_back("delta=" + shortest(delta));
    e.push_back("alpha=" + shortest(alpha));
    e.push_back("kappa=" + shortest(kappa));
    e.push_back("p-floor=" + std::to_string(p_floor));
    if (n_override) e.push_back("n=" + std::to_string(*n_override));
    e.push_back("grid=" + std::to_string(grid_size));
    e.push_back("svd-tol=" + shortest(svd_tol));
    e.push_back("quadrature-tol=" + shortest(quadrature_tol));
    std::string fm;
    if (write_csv) fm = "csv";
    if (write_svg) fm += fm.empty() ? "svg" : ",svg";
    e.push_back("formats=" + fm);
    return e;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key_in, std::string_view value_in) {
    const std::string key = normalize_key(key_in);
    const std::string_view value = csv::trim(value_in);
    try {
        if (key == "function") {
            cfg.function = std::string(value);
        } else if (key == "piece") {
            const auto parts = csv::split(value);
            if (parts.size() < 3) throw ConfigError("expected 'lo, hi, expression'");
            std::string expr = parts[2];
            for (std::size_t i = 3; i < parts.size(); ++i) expr += "," + parts[i];
            cfg.pieces.push_back({csv::to_double(parts[0]), csv::to_double(parts[1]), std::string(csv::trim(expr))});
            cfg.function = "custom";
        } else if (key == "scheme") {
            cfg.scheme = parse_scheme(value);
        } else if (key == "m") {
            cfg.m_list.clear();
            for (const auto& s : csv::split(value)) cfg.m_list.push_back(static_cast<int>(csv::to_int(s)));
        } else if (key == "seed") {
            const long long s = csv::to_int(value);
            if (s < 0) throw ConfigError("seed must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "delta") {
            cfg.delta = csv::to_double(value);
        } else if (key == "alpha") {
            cfg.alpha = csv::to_double(value);
        } else if (key == "kappa") {
            cfg.kappa = csv::to_double(value);
        } else if (key == "p-floor") {
            cfg.p_floor = static_cast<int>(csv::to_int(value));
        } else if (key == "n") {
            cfg.n_override = static_cast<int>(csv::to_int(value));
        } else if (key == "grid") {
            cfg.grid_size = static_cast<int>(csv::to_int(value));
        } else if (key == "svd-tol") {
            cfg.svd_tol = csv::to_double(value);
        } else if (key == "quadrature-tol") {
            cfg.quadrature_tol = csv::to_double(value);
        } else if (key == "out") {
            cfg.output_dir = std::string(value);
        } else if (key == "formats") {
            cfg.write_csv = cfg.write_svg = false;
            for (const auto& f : csv::split(value)) {
                if (f == "csv") cfg.write_csv = true;
                else if (f == "svg") cfg.write_svg = true;
                else if (!f.empty()) throw ConfigError("unknown format '" + f + "'");
            }
        } else {
            throw ConfigError("unknown key");
        }
    } catch (const ConfigError& e) {
        throw ConfigError("setting '" + key + "': " + e.what());
    } catch (const Error& e) {
        throw ConfigError("setting '" + key + "': " + e.what());
    }
}

void load_config(std::istream& in, ExperimentConfig& cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = csv::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        try {
            apply_setting(cfg, t.substr(0, eq), t.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::vector<double> midpoint_grid(int size) {
    if (size < 1) throw ParameterError("midpoint_grid: size must be >= 1");
    std::vector<double> x(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) x[static_cast<std::size_t>(i)] = (i + 0.5) / size;
    return x;
}

// ---------------------------------------------------------------------------
// Running

namespace {

struct MResult {
    MRecord rec;
    std::vector<double> f_true, f_filter, f_hybrid, err_filter, err_hybrid;
    std::vector<MethodTag> tags;
};

FrequencySet make_frequencies(const ExperimentConfig& cfg, int m) {
    switch (cfg.scheme) {
        case Scheme::Jittered: return jittered_frequencies(m, cfg.seed);
        case Scheme::Log: return log_frequencies(m);
        case Scheme::Uniform: return uniform_frequencies(m);
    }
    throw ConfigError("unknown scheme");
}

MResult run_one(const ExperimentConfig& cfg, const PiecewiseFunction& f, int m, const std::vector<double>& grid) {
    const auto t0 = std::chrono::steady_clock::now();
    MResult r;
    r.rec.m = m;
    try {
        const auto freqs = make_frequencies(cfg, m);
        r.rec.frequency_fingerprint = freqs.fingerprint();
        auto samples = fourier_samples(f, freqs, cfg.quadrature_tol);

        HybridConfig hc;
        hc.delta = cfg.delta;
        hc.filter = FilterConfig{cfg.alpha, cfg.kappa, cfg.p_floor};
        hc.n_override = cfg.n_override;
        hc.svd_tol = cfg.svd_tol;
        if (!hc.filter.satisfies_decay_condition()) {
            r.rec.warnings.push_back("alpha*kappa violates the decay condition");
        }

        const int n = cfg.n_override.value_or(choose_n(cfg.scheme, m));
        auto op = std::make_shared<const FrameOperator>(freqs, n, cfg.svd_tol);
        for (const auto& w : op->warnings()) r.rec.warnings.push_back(w);
        const FilterReconstruction recon(op, std::move(samples), hc.filter, f.jump_set(true));
        const auto hyb = hybrid_reconstruct(recon, grid, hc);

        r.rec.n = n;
        r.rec.M = hyb.degree.M;
        r.rec.N = hyb.degree.N;
        r.rec.effective_rank = op->effective_rank();
        r.f_filter = hyb.filter_values;
        r.f_hybrid = hyb.values;
        r.tags = hyb.tags;
        r.f_true.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) r.f_true[i] = f(grid[i]);

        const auto ef = oracle::ground_truth_error(grid, r.f_filter, f, cfg.delta);
        const auto eh = oracle::ground_truth_error(grid, r.f_hybrid, f, cfg.delta);
        r.err_filter = ef.pointwise;
        r.err_hybrid = eh.pointwise;
        r.rec.sup_err_filter_interior = ef.sup_interior;
        r.rec.sup_err_filter_global = ef.sup;
        r.rec.sup_err_hybrid_global = eh.sup;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            r.rec.max_imag_residual = std::max(r.rec.max_imag_residual, hyb.imag_residual[i]);
            if (r.tags[i] != MethodTag::Extrapolated) continue;
            if (std::isfinite(ef.pointwise[i]))
                r.rec.sup_err_filter_buffers = std::max(r.rec.sup_err_filter_buffers, ef.pointwise[i]);
            if (std::isfinite(eh.pointwise[i]))
                r.rec.sup_err_hybrid_buffers = std::max(r.rec.sup_err_hybrid_buffers, eh.pointwise[i]);
        }
    } catch (const NumericalError& e) {
        r.rec.error = e.what();
    }
    r.rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void write_comments(std::ostream& out, const std::vector<std::string>& lines) {
    for (const auto& l : lines) out << "# " << l << "\n";
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
    return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& p) {
    out.close();
    if (!out) throw IoError("failed writing '" + p.string() + "'");
}

void write_m_csv(std::ostream& out, const std::vector<std::string>& echo, const MResult& r,
                 const std::vector<double>& grid) {
    write_comments(out, echo);
    out << "# m=" << r.rec.m << "\n# n=" << r.rec.n << "\n# M=" << r.rec.M << "\n# N=" << r.rec.N << "\n";
    out << "# effective_rank=" << r.rec.effective_rank << "\n";
    out << "# frequency_fingerprint=" << hex(r.rec.frequency_fingerprint) << "\n";
    out << "x,f_true,f_filter,f_hybrid,err_filter,err_hybrid,tag\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << csv::sci(grid[i]) << ',' << csv::sci(r.f_true[i]) << ',' << csv::sci(r.f_filter[i]) << ','
            << csv::sci(r.f_hybrid[i]) << ',' << csv::sci(r.err_filter[i]) << ',' << csv::sci(r.err_hybrid[i]) << ','
            << to_string(r.tags[i]) << "\n";
    }
}

const char* palette(std::size_t k) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};
    return colors[k % 7];
}

}  // namespace

bool RunReport::ok() const {
    return std::all_of(records.begin(), records.end(), [](const MRecord& r) { return r.error.empty(); });
}

RunReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto f = cfg.build_function();
    const auto grid = midpoint_grid(cfg.grid_size);

    std::vector<std::future<MResult>> futures;
    for (int m : cfg.m_list) {
        futures.push_back(std::async(std::launch::async, [&cfg, &f, &grid, m] { return run_one(cfg, f, m, grid); }));
    }
    std::vector<MResult> results;
    for (auto& fu : futures) results.push_back(fu.get());

    RunReport report;
    report.config_echo = cfg.echo();
    for (const auto& r : results) report.records.push_back(r.rec);

    if (!cfg.write_csv && !cfg.write_svg) return report;
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create '" + cfg.output_dir.string() + "': " + ec.message());

    const std::string prefix = cfg.stem() + "_" + std::string(short_name(cfg.scheme));
    if (cfg.write_csv) {
        for (const auto& r : results) {
            if (!r.rec.error.empty()) continue;
            const auto p = cfg.output_dir / (prefix + "_m" + std::to_string(r.rec.m) + ".csv");
            auto out = open_out(p);
            write_m_csv(out, report.config_echo, r, grid);
            close_out(out, p);
            report.files.push_back(p);
        }
        const auto ps = cfg.output_dir / "summary.csv";
        auto s = open_out(ps);
        write_summary_csv(s, report);
        close_out(s, ps);
        report.files.push_back(ps);
        const auto pc = cfg.output_dir / "convergence.csv";
        auto c = open_out(pc);
        write_convergence_csv(c, report);
        close_out(c, pc);
        report.files.push_back(pc);
    }

    if (cfg.write_svg) {
        const auto fname = cfg.function == "custom" ? std::string("custom") : cfg.function;
        const std::string scheme(to_string(cfg.scheme));
        auto plot = [&](const std::string& suffix, const std::string& title, const std::string& ylabel, bool log_y,
                        const std::vector<svg::Series>& series) {
            svg::PlotSpec spec;
            spec.title = title;
            spec.y_label = ylabel;
            spec.log_y = log_y;
            spec.comments = report.config_echo;
            const auto p = cfg.output_dir / (prefix + suffix + ".svg");
            auto out = open_out(p);
            svg::write_line_plot(out, spec, series);
            close_out(out, p);
            report.files.push_back(p);
        };
        std::vector<svg::Series> filt, hyb, err;
        filt.push_back({"exact", grid, results.front().f_true, "#000000"});
        if (filt.back().y.empty()) {
            filt.back().y.resize(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) filt.back().y[i] = f(grid[i]);
        }
        hyb.push_back(filt.back());
        std::size_t k = 0;
        for (const auto& r : results) {
            if (!r.rec.error.empty()) continue;
            const std::string tag = "m=" + std::to_string(r.rec.m);
            filt.push_back({"filter " + tag, grid, r.f_filter, palette(k)});
            hyb.push_back({"hybrid " + tag, grid, r.f_hybrid, palette(k)});
            err.push_back({"filter " + tag, grid, r.err_filter, palette(2 * k)});
            err.push_back({"hybrid " + tag, grid, r.err_hybrid, palette(2 * k + 1)});
            ++k;
        }
        plot("_filter_fun", fname + ", " + scheme + ": filter reconstruction", "f(x)", false, filt);
        plot("_hyb_fun", fname + ", " + scheme + ": hybrid reconstruction", "f(x)", false, hyb);
        plot("_error", fname + ", " + scheme + ": pointwise error", "log10 |error|", true, err);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Tables

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& ms, const std::vector<double>& errors) {
    if (ms.size() != errors.size()) throw ParameterError("convergence_table: size mismatch");
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        ConvergenceRow r{ms[k], errors[k], std::nullopt};
        if (k > 0) r.ratio = errors[k] / errors[k - 1];
        rows.push_back(r);
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_table(const RunReport& report, Metric metric) {
    std::vector<int> ms;
    std::vector<double> errs;
    for (const auto& r : report.records) {
        ms.push_back(r.m);
        double e = std::numeric_limits<double>::quiet_NaN();
        if (r.error.empty()) {
            switch (metric) {
                case Metric::FilterInterior: e = r.sup_err_filter_interior; break;
                case Metric::FilterGlobal: e = r.sup_err_filter_global; break;
                case Metric::HybridGlobal: e = r.sup_err_hybrid_global; break;
                case Metric::HybridBuffers: e = r.sup_err_hybrid_buffers; break;
            }
        }
        errs.push_back(e);
    }
    return convergence_table(ms, errs);
}

void write_summary_csv(std::ostream& out, const RunReport& report) {
    write_comments(out, report.config_echo);
    out << "m,n,M,N,effective_rank,sup_err_filter_interior,sup_err_filter_global,sup_err_hybrid_global,"
           "sup_err_filter_buffers,sup_err_hybrid_buffers,max_imag_residual,frequency_fingerprint,status\n";
    for (const auto& r : report.records) {
        out << r.m << ',' << r.n << ',' << r.M << ',' << r.N << ',' << r.effective_rank << ','
            << csv::sci(r.sup_err_filter_interior) << ',' << csv::sci(r.sup_err_filter_global) << ','
            << csv::sci(r.sup_err_hybrid_global) << ',' << csv::sci(r.sup_err_filter_buffers) << ','
            << csv::sci(r.sup_err_hybrid_buffers) << ',' << csv::sci(r.max_imag_residual) << ','
            << hex(r.frequency_fingerprint) << ',' << (r.error.empty() ? "ok" : "numerical_error") << "\n";
    }
}

void write_convergence_csv(std::ostream& out, const RunReport& report) {
    write_comments(out, report.config_echo);
    out << "metric,m,sup_err,ratio_to_previous\n";
    const std::pair<Metric, const char*> metrics[] = {{Metric::FilterInterior, "filter_interior"},
                                                      {Metric::FilterGlobal, "filter_global"},
                                                      {Metric::HybridGlobal, "hybrid_global"},
                                                      {Metric::HybridBuffers, "hybrid_buffers"}};
    for (const auto& [metric, name] : metrics) {
        for (const auto& row : convergence_table(report, metric)) {
            out << name << ',' << row.m << ',' << csv::sci(row.sup_err) << ',';
            if (row.ratio) out << csv::sci(*row.ratio);
            out << "\n";
        }
    }
}

}  // namespace nurecon
