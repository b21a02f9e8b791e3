#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "nurecon/error.hpp"
#include "nurecon/fourier_data.hpp"

using namespace nurecon;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

// ∫_0^1 e^{2πiθx} dx
cd exp_integral(double theta) {
    if (theta == 0.0) return 1.0;
    const cd a{0.0, 2 * pi * theta};
    return (std::exp(a) - 1.0) / a;
}

}  // namespace

TEST_CASE("jittered frequencies") {
    const auto a = jittered_frequencies(64, 42);
    REQUIRE(a.size() == 129);
    for (int j = -64; j <= 64; ++j) {
        CHECK(a.at(j) >= j - 0.25);
        CHECK(a.at(j) <= j + 0.25);
    }
    CHECK(jittered_frequencies(64, 42).lambda == a.lambda);
    CHECK(jittered_frequencies(64, 43).lambda != a.lambda);
    CHECK_THROWS_AS(jittered_frequencies(0, 1), ParameterError);

    const auto big = jittered_frequencies(5000, 42);
    double mean = 0;
    for (int j = -5000; j <= 5000; ++j) mean += big.at(j) - j;
    mean /= big.size();
    CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("jittered stream is mt19937_64 with 53-bit mapping") {
    const auto fs = jittered_frequencies(3, 42);
    std::mt19937_64 gen(42);
    for (int j = -3; j <= 3; ++j) {
        const double u = static_cast<double>(gen() >> 11) / 9007199254740992.0;
        CHECK(fs.at(j) == j + (0.5 * u - 0.25));
    }
}

TEST_CASE("log frequencies") {
    const int m = 256;
    const auto fs = log_frequencies(m);
    CHECK(fs.at(0) == 0.0);
    CHECK(fs.at(1) == doctest::Approx(0.9990005).epsilon(1e-7));
    CHECK(fs.at(m) == static_cast<double>(m));
    for (int j = 1; j <= m; ++j) {
        CHECK(fs.at(-j) == -fs.at(j));
        if (j > 1) CHECK(fs.at(j) > fs.at(j - 1));
    }
    // interior values follow the formula
    const double v = 0.001;
    const double expect = std::exp(-v + (v + std::log(256.0)) / 255.0 * 99);
    CHECK(fs.at(100) == doctest::Approx(expect).epsilon(1e-15));
    CHECK_THROWS_AS(log_frequencies(1), ParameterError);
}

TEST_CASE("scheme names") {
    CHECK(parse_scheme("jit") == Scheme::Jittered);
    CHECK(parse_scheme("log") == Scheme::Log);
    CHECK(parse_scheme("uniform") == Scheme::Uniform);
    CHECK(to_string(Scheme::Jittered) == "jittered");
    CHECK_THROWS_AS(parse_scheme("random"), ParameterError);
}

TEST_CASE("f1 mean value") {
    CHECK(std::abs(fourier_sample(builtin_f1(), 0.0) - cd(-1.0 / pi, 0.0)) < 1e-14);
}

TEST_CASE("sampler vs closed-form exponential integrals") {
    // f = cos(2πkx) + 0.5 sin(2πkx) on one piece
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> kd(-20, 20);
    std::uniform_real_distribution<double> ld(-128.0, 128.0);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const int k = kd(gen);
        const double lambda = ld(gen);
        const PiecewiseFunction f({{{0.0, 1.0}, Expr::custom([k](double x) {
                                        return std::cos(2 * pi * k * x) + 0.5 * std::sin(2 * pi * k * x);
                                    })}});
        // cos = (e^{+} + e^{-})/2, sin = (e^{+} - e^{-})/(2i)
        const cd ep = exp_integral(k - lambda);
        const cd em = exp_integral(-k - lambda);
        const cd exact = 0.5 * (ep + em) + 0.5 * (ep - em) / cd(0.0, 2.0);
        worst = std::max(worst, std::abs(fourier_sample(f, lambda) - exact));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("orthonormality on uniform frequencies") {
    const PiecewiseFunction one({{{0.0, 1.0}, Expr::constant(1.0)}});
    const auto s = fourier_samples(one, uniform_frequencies(8));
    for (int j = -8; j <= 8; ++j) {
        const cd expect = j == 0 ? cd(1.0) : cd(0.0);
        CHECK(std::abs(s.values[j + 8] - expect) < 1e-14);
    }
}

TEST_CASE("conjugate symmetry for log frequencies") {
    const auto s = fourier_samples(builtin_f1(), log_frequencies(32));
    for (int j = 1; j <= 32; ++j) CHECK(std::abs(s.values[32 + j] - std::conj(s.values[32 - j])) < 1e-14);
}

TEST_CASE("parallel sampling equals serial sampling bit for bit") {
    const auto f = builtin_f2();
    const auto fs = jittered_frequencies(32, 42);
    const auto s = fourier_samples(f, fs);
    for (std::size_t i = 0; i < fs.size(); ++i) CHECK(s.values[i] == fourier_sample(f, fs.lambda[i]));
}

TEST_CASE("f1 jittered m=32 seed 42 fixture") {
    const auto s = fourier_samples(builtin_f1(), jittered_frequencies(32, 42));
    // Pinned values; j = 0 also checked against a 30-digit reference.
    CHECK(s.freqs.at(0) == doctest::Approx(0.12548468961424009).epsilon(1e-15));
    CHECK(s.values[32].real() == doctest::Approx(-0.2571611790955613).epsilon(1e-12));
    CHECK(s.values[32].imag() == doctest::Approx(0.20748111445476222).epsilon(1e-12));
    CHECK(s.values[64].real() == doctest::Approx(0.00030756739233074267).epsilon(1e-12));
    CHECK(s.values[64].imag() == doctest::Approx(6.7691445284687526e-05).epsilon(1e-12));
}

TEST_CASE("quadrature failure names the sample index") {
    const PiecewiseFunction f({{{0.0, 1.0}, Expr::custom([](double x) { return std::sqrt(x); })}});
    try {
        fourier_samples(f, uniform_frequencies(2), 1e-300);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("sample j=") != std::string::npos);
    }
    CHECK_THROWS_AS(fourier_sample(f, 1.0, 0.0), ParameterError);
}

TEST_CASE("samples CSV round trip") {
    const auto s = fourier_samples(builtin_f2(), jittered_frequencies(8, 3));
    std::stringstream io;
    write_samples_csv(io, s);
    const auto r = read_samples_csv(io);
    CHECK(r.freqs == s.freqs);
    CHECK(r.freqs.seed == 3);
    CHECK(r.values == s.values);
    CHECK(r.quadrature_tolerance == s.quadrature_tolerance);

    std::stringstream fio;
    write_frequencies_csv(fio, log_frequencies(10));
    const auto lf = read_frequencies_csv(fio);
    CHECK(lf == log_frequencies(10));
    CHECK(lf.v == 0.001);

    std::stringstream bad("j,lambda,re,im\n0,0.0,1.0\n");
    CHECK_THROWS_AS(read_samples_csv(bad), IoError);
}
