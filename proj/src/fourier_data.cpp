#include "nurecon/fourier_data.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>

#include "nurecon/csv.hpp"
#include "nurecon/error.hpp"
#include "nurecon/parallel.hpp"

namespace nurecon {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::Jittered: return "jittered";
        case Scheme::Log: return "log";
        case Scheme::Uniform: return "uniform";
    }
    return "?";
}

Scheme parse_scheme(std::string_view s) {
    if (s == "jittered" || s == "jit") return Scheme::Jittered;
    if (s == "log") return Scheme::Log;
    if (s == "uniform" || s == "uni") return Scheme::Uniform;
    throw ParameterError("unknown sampling scheme '" + std::string(s) + "'");
}

std::uint64_t FrequencySet::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double l : lambda) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &l, sizeof l);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

bool operator==(const FrequencySet& a, const FrequencySet& b) {
    return a.m == b.m && a.scheme == b.scheme && a.lambda == b.lambda;
}

FrequencySet jittered_frequencies(int m, std::uint64_t seed) {
    if (m < 1) throw ParameterError("jittered_frequencies: m must be >= 1");
    FrequencySet fs{m, {}, Scheme::Jittered, seed, 0.0};
    fs.lambda.reserve(static_cast<std::size_t>(2 * m + 1));
    std::mt19937_64 gen(seed);
    for (int j = -m; j <= m; ++j) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        fs.lambda.push_back(j + (0.5 * u - 0.25));
    }
    return fs;
}

FrequencySet log_frequencies(int m, double v) {
    if (m < 2) throw ParameterError("log_frequencies: m must be >= 2");
    FrequencySet fs{m, std::vector<double>(static_cast<std::size_t>(2 * m + 1), 0.0), Scheme::Log, 0, v};
    const double rate = (v + std::log(static_cast<double>(m))) / (m - 1);
    for (int j = 1; j <= m; ++j) {
        const double l = (j == m) ? static_cast<double>(m) : std::exp(-v + rate * (j - 1));
        fs.lambda[static_cast<std::size_t>(m + j)] = l;
        fs.lambda[static_cast<std::size_t>(m - j)] = -l;
    }
    return fs;
}

FrequencySet uniform_frequencies(int m) {
    if (m < 1) throw ParameterError("uniform_frequencies: m must be >= 1");
    FrequencySet fs{m, {}, Scheme::Uniform, 0, 0.0};
    for (int j = -m; j <= m; ++j) fs.lambda.push_back(j);
    return fs;
}

std::complex<double> fourier_sample(const PiecewiseFunction& f, double lambda, const QuadratureSpec& spec) {
    if (!(spec.tol > 0.0)) throw ParameterError("fourier_sample: tol must be > 0");
    std::complex<double> total{0.0, 0.0};
    for (const auto& piece : f.pieces()) {
        const double a = piece.interval.lo;
        const double b = piece.interval.hi;
        auto integrand = [&](double x) {
            // Reduce λx modulo 1 before scaling by 2π.
            const double t = lambda * x;
            const double r = t - std::nearbyint(t);
            return piece.eval(x) * std::polar(1.0, -2.0 * std::numbers::pi * r);
        };
        const int start = static_cast<int>(std::ceil(std::abs(lambda) * (b - a) / 2.0));
        total += integrate_composite(integrand, a, b, spec, start).value;
    }
    return total;
}

std::complex<double> fourier_sample(const PiecewiseFunction& f, double lambda, double tol) {
    QuadratureSpec spec;
    spec.tol = tol;
    return fourier_sample(f, lambda, spec);
}

FourierSamples fourier_samples(const PiecewiseFunction& f, const FrequencySet& freqs, double tol) {
    FourierSamples out{freqs, std::vector<std::complex<double>>(freqs.size()), tol};
    QuadratureSpec spec;
    spec.tol = tol;
    parallel_for(freqs.size(), [&](std::size_t i) {
        try {
            out.values[i] = fourier_sample(f, freqs.lambda[i], spec);
        } catch (const NumericalError& e) {
            const int j = static_cast<int>(i) - freqs.m;
            throw NumericalError("sample j=" + std::to_string(j) + ": " + e.what(), e.achieved_estimate());
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void write_header(std::ostream& out, const FrequencySet& fs) {
    out << "# scheme=" << to_string(fs.scheme) << "\n";
    out << "# m=" << fs.m << "\n";
    if (fs.scheme == Scheme::Jittered) out << "# seed=" << fs.seed << "\n";
    if (fs.scheme == Scheme::Log) out << "# v=" << csv::sci(fs.v) << "\n";
}

void apply_comment(FrequencySet& fs, double* tol, const std::string& c) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) return;
    const auto key = csv::trim(std::string_view(c).substr(0, eq));
    const auto val = csv::trim(std::string_view(c).substr(eq + 1));
    if (key == "scheme") fs.scheme = parse_scheme(val);
    else if (key == "m") fs.m = static_cast<int>(csv::to_int(val));
    else if (key == "seed") fs.seed = static_cast<std::uint64_t>(csv::to_int(val));
    else if (key == "v") fs.v = csv::to_double(val);
    else if (key == "quadrature_tol" && tol) *tol = csv::to_double(val);
}

FourierSamples read_any(std::istream& in, bool need_values) {
    FourierSamples s;
    std::vector<std::string> comments;
    std::string line;
    if (!csv::next_row(in, line, &comments)) throw IoError("samples CSV: missing header");
    const auto header = csv::split(line);
    const bool has_values = header.size() >= 4;
    if (header.size() < 2 || header[0] != "j" || header[1] != "lambda" ||
        (has_values && (header[2] != "re" || header[3] != "im"))) {
        throw IoError("samples CSV: unexpected header '" + line + "'");
    }
    if (need_values && !has_values) throw IoError("samples CSV: re/im columns missing");
    int expected_j = 0;
    bool first = true;
    while (csv::next_row(in, line, &comments)) {
        const auto cols = csv::split(line);
        if (cols.size() != header.size()) throw IoError("samples CSV: ragged row '" + line + "'");
        const auto j = static_cast<int>(csv::to_int(cols[0]));
        if (!first && j != expected_j) throw IoError("samples CSV: rows out of order at j=" + cols[0]);
        first = false;
        expected_j = j + 1;
        s.freqs.lambda.push_back(csv::to_double(cols[1]));
        if (has_values) s.values.emplace_back(csv::to_double(cols[2]), csv::to_double(cols[3]));
    }
    for (const auto& c : comments) apply_comment(s.freqs, &s.quadrature_tolerance, c);
    if (s.freqs.lambda.size() != static_cast<std::size_t>(2 * s.freqs.m + 1)) {
        throw IoError("samples CSV: expected 2m+1 = " + std::to_string(2 * s.freqs.m + 1) + " rows, got " +
                      std::to_string(s.freqs.lambda.size()));
    }
    return s;
}

}  // namespace

void write_frequencies_csv(std::ostream& out, const FrequencySet& freqs) {
    write_header(out, freqs);
    out << "j,lambda\n";
    for (int j = -freqs.m; j <= freqs.m; ++j) out << j << "," << csv::sci(freqs.at(j)) << "\n";
}

void write_samples_csv(std::ostream& out, const FourierSamples& samples) {
    const auto& fs = samples.freqs;
    write_header(out, fs);
    out << "# quadrature_tol=" << csv::sci(samples.quadrature_tolerance) << "\n";
    out << "j,lambda,re,im\n";
    for (int j = -fs.m; j <= fs.m; ++j) {
        const auto& v = samples.values[static_cast<std::size_t>(j + fs.m)];
        out << j << "," << csv::sci(fs.at(j)) << "," << csv::sci(v.real()) << "," << csv::sci(v.imag()) << "\n";
    }
}

FourierSamples read_samples_csv(std::istream& in) { return read_any(in, true); }

FrequencySet read_frequencies_csv(std::istream& in) { return read_any(in, false).freqs; }

}  // namespace nurecon
