#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nurecon/piecewise.hpp"
#include "nurecon/quadrature.hpp"

namespace nurecon {

enum class Scheme { Jittered, Log, Uniform };

std::string_view to_string(Scheme s);
/// Accepts "jittered"/"jit", "log", "uniform"/"uni". Throws ParameterError otherwise.
Scheme parse_scheme(std::string_view s);

/// Frequencies λ_j for j = -m..m, stored at index j + m.
struct FrequencySet {
    int m = 0;
    std::vector<double> lambda;
    Scheme scheme = Scheme::Uniform;
    std::uint64_t seed = 0;  // jittered only
    double v = 0.0;          // log only

    double at(int j) const { return lambda[static_cast<std::size_t>(j + m)]; }
    std::size_t size() const noexcept { return lambda.size(); }

    /// FNV-1a over the raw bytes of the frequency list; used for provenance.
    std::uint64_t fingerprint() const;
};

bool operator==(const FrequencySet& a, const FrequencySet& b);

/// λ_j = j + ε_j, ε_j uniform in [-1/4, 1/4].
///
/// The stream is std::mt19937_64 seeded with `seed`, consumed in index order
/// j = -m..m, one 64-bit draw per j: ε = 0.5 * ((draw >> 11) * 2^-53) - 0.25.
FrequencySet jittered_frequencies(int m, std::uint64_t seed);

/// λ_{±j} = ±exp(-v + (v + log m)/(m-1) * (j-1)) for 1 ≤ j ≤ m, λ_0 = 0.
/// λ_{±m} is set to ±m exactly; negative entries are the negated positive ones.
FrequencySet log_frequencies(int m, double v = 0.001);

FrequencySet uniform_frequencies(int m);

struct FourierSamples {
    FrequencySet freqs;
    std::vector<std::complex<double>> values;
    double quadrature_tolerance = 0.0;
};

/// ∫_0^1 f(x) e^{-2πiλx} dx, summed piece by piece with composite Gauss–Legendre.
std::complex<double> fourier_sample(const PiecewiseFunction& f, double lambda, double tol = 1e-13);
std::complex<double> fourier_sample(const PiecewiseFunction& f, double lambda, const QuadratureSpec& spec);

/// fourier_sample at every frequency. Frequencies are independent, so the
/// work is split across threads; each value is written only by its own index.
FourierSamples fourier_samples(const PiecewiseFunction& f, const FrequencySet& freqs, double tol = 1e-13);

// CSV: '#' provenance comments, header "j,lambda[,re,im]".
void write_frequencies_csv(std::ostream& out, const FrequencySet& freqs);
void write_samples_csv(std::ostream& out, const FourierSamples& samples);
FourierSamples read_samples_csv(std::istream& in);
FrequencySet read_frequencies_csv(std::istream& in);

}  // namespace nurecon
