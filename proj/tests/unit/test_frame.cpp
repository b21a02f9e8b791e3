#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "nurecon/error.hpp"
#include "nurecon/experiment.hpp"
#include "nurecon/frame.hpp"
#include "nurecon/oracles.hpp"

using namespace nurecon;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

FilterReconstruction make_recon(const PiecewiseFunction& f, const FrequencySet& fs, int n, std::vector<double> jumps,
                                CachePolicy policy = CachePolicy::GroupByParams) {
    auto op = std::make_shared<const FrameOperator>(fs, n);
    return FilterReconstruction(op, fourier_samples(f, fs), FilterConfig{}, std::move(jumps), policy);
}

PiecewiseFunction sine_one() {
    return PiecewiseFunction({{{0.0, 1.0}, Expr::sine(2 * pi)}});
}

}  // namespace

TEST_CASE("inner products in closed form") {
    CHECK(inner_product_exp(3.0, 3) == cd(1.0, 0.0));
    CHECK(inner_product_exp(5.0, 3) == cd(0.0, 0.0));
    CHECK(inner_product_exp(-4.0, 3) == cd(0.0, 0.0));
    const cd half = inner_product_exp(3.5, 3);
    CHECK(std::abs(half - cd(0.0, 2.0 / pi)) < 1e-15);
    CHECK(std::abs(half) == doctest::Approx(0.63662).epsilon(1e-5));
    // both branches stay accurate near θ = 0, where e^{2πiθ} - 1 would cancel
    for (double t : {1e-12, 5e-10, 9.99e-10, 1.001e-9, 1e-8, 1e-5}) {
        const double theta = (2.0 + t) - 2.0;
        const cd expect = std::polar(std::sin(pi * theta) / (pi * theta), pi * theta);
        CHECK(std::abs(inner_product_exp(2.0 + t, 2) - expect) < 2e-16);
    }
}

TEST_CASE("uniform frequencies give the identity section") {
    const FrameOperator op(uniform_frequencies(12), 8);
    for (int j = -12; j <= 12; ++j) {
        for (int l = -8; l <= 8; ++l) CHECK(op.entry(j, l) == (j == l ? cd(1.0) : cd(0.0)));
    }
    for (Eigen::Index k = 0; k < op.singular_values().size(); ++k) CHECK(op.singular_values()(k) == doctest::Approx(1.0));
    CHECK(op.effective_rank() == 17);
    CHECK(op.warnings().empty());
    CHECK(admissibility_constant(op) == 1.0);
    CHECK(admissibility_constant(uniform_frequencies(12), 8) == 1.0);
}

TEST_CASE("jittered section is well conditioned") {
    const FrameOperator op(jittered_frequencies(32, 42), 19);
    const auto& s = op.singular_values();
    CHECK(s(s.size() - 1) / s(0) > 1e-6);
    CHECK(s(s.size() - 1) / s(0) == doctest::Approx(0.48448677912808569).epsilon(1e-9));
    CHECK(op.effective_rank() == 39);
    for (int j = -32; j <= 32; ++j) {
        for (int l = -19; l <= 19; ++l) CHECK(std::abs(op.entry(j, l)) <= 1.0);
    }
    const double c0 = admissibility_constant(op);
    CHECK(c0 == doctest::Approx(admissibility_constant(op.freqs(), 19)));
    CHECK(c0 == doctest::Approx(0.99998028417463569).epsilon(1e-12));
    CHECK(c0 < 4.0 / pi * 1.5);
}

TEST_CASE("assembled entries agree with quadrature") {
    const auto fs = jittered_frequencies(40, 42);
    const FrameOperator op(fs, 24);
    std::mt19937_64 gen(9);
    std::uniform_int_distribution<int> jd(-40, 40), ld(-24, 24);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const int j = jd(gen), l = ld(gen);
        worst = std::max(worst, std::abs(op.entry(j, l) - oracle::exp_inner_product(fs.at(j), l)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("pseudo-inverse consistency") {
    for (auto fs : {jittered_frequencies(48, 42), log_frequencies(48)}) {
        const int n = choose_n(fs.scheme, 48);
        const FrameOperator op(fs, n);
        const auto& O = op.omega();
        const double smax = op.singular_values()(0);
        const double resid = (O * op.pseudo_inverse() * O - O).norm();
        CHECK(resid <= 10.0 * op.rel_tol() * smax * std::sqrt(static_cast<double>(op.effective_rank())));
    }
}

TEST_CASE("rank loss and oversized n are reported") {
    const FrameOperator op(log_frequencies(32), 30);
    CHECK(op.effective_rank() < 61);
    CHECK_FALSE(op.warnings().empty());
    const FrameOperator wide(uniform_frequencies(4), 6);
    CHECK(wide.warnings().size() >= 1);
    CHECK_THROWS_AS(FrameOperator(uniform_frequencies(4), 0), ParameterError);
}

TEST_CASE("n rules") {
    CHECK(choose_n(Scheme::Jittered, 256) == 153);
    CHECK(choose_n(Scheme::Log, 256) == 55);
    CHECK(choose_n(Scheme::Uniform, 256) == 256);
    CHECK(choose_n(Scheme::Jittered, 2) == 1);
    CHECK(choose_n_theoretical(1.0, 1.0, 300) == 100);
    CHECK_THROWS_AS(choose_n(Scheme::Log, 1), ParameterError);
    CHECK_THROWS_AS(choose_n_theoretical(0.0, 1.0, 10), ParameterError);
}

TEST_CASE("constant function reconstructs exactly in no-filter mode") {
    const PiecewiseFunction one({{{0.0, 1.0}, Expr::constant(1.0)}});
    const auto recon = make_recon(one, uniform_frequencies(16), 16, {});
    const auto grid = midpoint_grid(64);
    const auto v = filter_reconstruct(recon, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(v.values[i] - 1.0) <= 1e-12);
        CHECK(v.imag_residual[i] <= 1e-12);
    }
}

TEST_CASE("in-span target is recovered from jittered samples") {
    const auto recon = make_recon(sine_one(), jittered_frequencies(64, 42), 38, {});
    const auto grid = midpoint_grid(1024);
    const auto v = filter_reconstruct(recon, grid);
    double worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(v.values[i] - std::sin(2 * pi * grid[i])));
    CHECK(worst <= 1e-8);
}

TEST_CASE("f1 jittered m=128 at x=0.25") {
    const auto f = builtin_f1();
    const int m = 128;
    const auto recon = make_recon(f, jittered_frequencies(m, 42), choose_n(Scheme::Jittered, m), f.jump_set());
    const double x = 0.25;
    const auto [value, imag] = filter_reconstruct_point(recon, x);
    CHECK(std::abs(value - f(x)) <= 1e-3);
    CHECK(std::abs(value - f(x)) == doctest::Approx(0.00041363539249122694).epsilon(1e-6));
    CHECK(imag < 1e-3);
}

TEST_CASE("grouped and per-point evaluation agree") {
    const auto f = builtin_f2();
    const auto fs = jittered_frequencies(96, 7);
    const auto grid = midpoint_grid(300);
    const auto grouped = filter_reconstruct(make_recon(f, fs, 57, f.jump_set()), grid);
    const auto each = filter_reconstruct(make_recon(f, fs, 57, f.jump_set(), CachePolicy::PerPoint), grid);
    const auto recon = make_recon(f, fs, 57, f.jump_set());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(grouped.values[i] - each.values[i]) <= 1e-12);
        CHECK(std::abs(grouped.imag_residual[i] - each.imag_residual[i]) <= 1e-12);
        CHECK(grouped.params[i] == each.params[i]);
        if (i % 37 == 0) CHECK(std::abs(filter_reconstruct_point(recon, grid[i]).first - grouped.values[i]) <= 1e-12);
    }
}

TEST_CASE("filtering matters away from jumps, and vanishing gamma removes it") {
    const auto f = builtin_f1();
    const auto recon = make_recon(f, jittered_frequencies(64, 42), 38, f.jump_set());
    const double x = 0.2;
    const std::vector<double> ones(129, 1.0);
    const auto filtered = filter_reconstruct_point(recon, x).first;
    const auto raw = reconstruct_with_weights(recon, x, ones).first;
    CHECK(std::abs(filtered - raw) > 1e-6);
    const auto tiny = frequency_weights(recon.samples.freqs, AdaptiveParams{1e-9, 3, 0.0});
    CHECK(std::abs(reconstruct_with_weights(recon, x, tiny).first - raw) <= 1e-12);
}

TEST_CASE("usage and domain errors") {
    const auto f = builtin_f1();
    auto op = std::make_shared<const FrameOperator>(jittered_frequencies(16, 1), 9);
    const auto other = fourier_samples(f, jittered_frequencies(16, 2));
    CHECK_THROWS_AS(FilterReconstruction(op, other, FilterConfig{}, f.jump_set()), UsageError);
    CHECK_THROWS_AS(FilterReconstruction(nullptr, other, FilterConfig{}, f.jump_set()), UsageError);
    const FilterReconstruction ok(op, fourier_samples(f, jittered_frequencies(16, 1)), FilterConfig{}, f.jump_set());
    const std::vector<double> bad{0.5, 1.2};
    CHECK_THROWS_AS(filter_reconstruct(ok, bad), DomainError);
    CHECK_THROWS_AS(op->solve(Eigen::VectorXcd::Zero(3)), UsageError);
}

TEST_CASE("imaginary residual stays below the real error at sup level") {
    const auto f = builtin_f1();
    for (auto fs : {jittered_frequencies(128, 42), log_frequencies(128)}) {
        const auto recon = make_recon(f, fs, choose_n(fs.scheme, 128), f.jump_set());
        const auto grid = midpoint_grid(1024);
        const auto v = filter_reconstruct(recon, grid);
        double err = 0, imag = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            err = std::max(err, std::abs(v.values[i] - f(grid[i])));
            imag = std::max(imag, v.imag_residual[i]);
        }
        CHECK(imag <= 10.0 * err);
        MESSAGE(to_string(fs.scheme) << ": sup err " << err << ", sup imag " << imag);
    }
}

TEST_CASE("CSV export") {
    const FrameOperator op(uniform_frequencies(2), 1);
    std::ostringstream o, s;
    write_omega_csv(o, op);
    write_singular_values_csv(s, op);
    CHECK(o.str().find("row,col,re,im\n-2,-1,") != std::string::npos);
    CHECK(s.str().find("k,sigma_k\n0,1.0000000000000000e+00\n") != std::string::npos);
}
