#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>

#include "nurecon/error.hpp"
#include "nurecon/experiment.hpp"
#include "nurecon/hdaf.hpp"
#include "nurecon/hybrid.hpp"
#include "nurecon/oracles.hpp"

using namespace nurecon;
using std::numbers::pi;
using cd = std::complex<double>;

TEST_CASE("gauss-kronrod on simple integrands") {
    CHECK(std::abs(oracle::integrate_gk([](double x) { return cd(x * x); }, 0.0, 1.0) - 1.0 / 3.0) < 1e-16);
    const auto e = oracle::integrate_gk([](double x) { return cd(std::exp(x)); }, 0.0, 1.0, 1e-15, 4);
    CHECK(std::abs(e - (std::exp(1.0) - 1.0)) < 1e-15);
    CHECK_THROWS_AS(oracle::integrate_gk([](double) { return cd(1.0); }, 0.0, 1.0, 0.0), ParameterError);
    // closed-form inner products
    CHECK(std::abs(oracle::exp_inner_product(3.0, 3) - 1.0) < 1e-15);
    CHECK(std::abs(oracle::exp_inner_product(3.5, 3) - cd(0.0, 2.0 / pi)) < 1e-15);
    CHECK(std::abs(oracle::exp_inner_product(-7.0, 2)) < 1e-15);
}

TEST_CASE("projection coefficients") {
    SUBCASE("sin(2πx)") {
        const PiecewiseFunction f({{{0.0, 1.0}, Expr::sine(2 * pi)}});
        const auto c = oracle::projection_coefficients(f, 4);
        for (int l = -4; l <= 4; ++l) {
            const cd expect = l == 1 ? cd(0.0, -0.5) : l == -1 ? cd(0.0, 0.5) : cd(0.0);
            CHECK(std::abs(c[static_cast<std::size_t>(l + 4)] - expect) < 1e-15);
        }
    }
    SUBCASE("constant") {
        const PiecewiseFunction f({{{0.0, 1.0}, Expr::constant(1.0)}});
        const auto c = oracle::projection_coefficients(f, 5);
        for (int l = -5; l <= 5; ++l) CHECK(std::abs(c[static_cast<std::size_t>(l + 5)] - (l == 0 ? 1.0 : 0.0)) < 1e-15);
    }
    SUBCASE("f1 mean") {
        const auto c = oracle::projection_coefficients(builtin_f1(), 0, 0);
        CHECK(std::abs(c[0] - (-1.0 / pi)) < 1e-15);
        CHECK(std::abs(fourier_sample(builtin_f1(), 0.0) - (-1.0 / pi)) < 1e-14);
    }
    CHECK_THROWS_AS(oracle::projection_coefficients(builtin_f1(), 3, 2), ParameterError);
    CHECK_THROWS_AS(oracle::projection_coefficients(builtin_f1(), -1), ParameterError);
}

TEST_CASE("projection coefficients agree with the sampling quadrature at integers") {
    for (const auto& f : {builtin_f1(), builtin_f2()}) {
        const auto c = oracle::projection_coefficients(f, 40);
        double worst = 0;
        for (int l = -40; l <= 40; ++l) worst = std::max(worst, std::abs(c[static_cast<std::size_t>(l + 40)] - fourier_sample(f, l)));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("long double sigma matches the production filter") {
    for (int p : {0, 1, 4, 17}) {
        for (double w : {0.0, 0.1, 0.5, 1.0, 2.0}) {
            CHECK(static_cast<double>(oracle::sigma(p, 6.0, w)) == doctest::Approx(filter_sigma(p, 6.0, w)).epsilon(1e-13));
        }
    }
    CHECK(oracle::sigma(3, 0.0, 0.7) == 1.0L);
}

TEST_CASE("classical filtered sum") {
    const auto f = builtin_f1();
    const int n = 16;
    const auto c = oracle::projection_coefficients(f, n);
    SUBCASE("γ = 0 is the truncated partial sum") {
        for (double x : {0.1, 0.37, 0.8}) {
            cd s{0.0, 0.0};
            for (int l = -n; l <= n; ++l) s += c[static_cast<std::size_t>(l + n)] * std::polar(1.0, 2 * pi * l * x);
            CHECK(oracle::classical_filtered_sum(c, 3, 0.0, 16, n, x) == doctest::Approx(s.real()).epsilon(1e-13));
        }
    }
    SUBCASE("φ0 stays 1 under any filter") {
        std::vector<cd> one(2 * n + 1, cd(0.0));
        one[n] = 1.0;
        for (int p : {0, 5}) {
            for (double g : {0.0, 3.0, 20.0}) CHECK(oracle::classical_filtered_sum(one, p, g, 16, n, 0.3) == 1.0);
        }
    }
    CHECK_THROWS_AS(oracle::classical_filtered_sum(c, 1, 1.0, 16, n + 1, 0.2), ParameterError);
}

TEST_CASE("uniform frequencies reproduce the classical filtered sum") {
    const auto f = builtin_f1();
    const int m = 64;
    const auto fs = uniform_frequencies(m);
    auto op = std::make_shared<const FrameOperator>(fs, m);
    const FilterReconstruction recon(op, fourier_samples(f, fs), FilterConfig{}, f.jump_set(true));
    const auto c = oracle::projection_coefficients(f, m);
    const auto grid = midpoint_grid(256);
    const auto fv = filter_reconstruct(recon, grid);
    double worst = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto prm = adaptive_params_from_distance(distance_to_jump(f, grid[k]), m, FilterConfig{});
        worst = std::max(worst, std::abs(fv.values[k] - oracle::classical_filtered_sum(c, prm.p, prm.gamma, m, m, grid[k])));
    }
    CHECK(worst <= 1e-10);

    const auto prm = adaptive_params_from_distance(0.25, m, FilterConfig{});
    CHECK(prm.p == 1);
    CHECK(prm.gamma == 4.0);
    const double at = oracle::classical_filtered_sum(c, prm.p, prm.gamma, m, m, 0.25);
    CHECK(at == doctest::Approx(1.7623207511770247e-07).epsilon(1e-6));
    CHECK(std::abs(filter_reconstruct(recon, std::vector<double>{0.25}).values[0] - at) <= 1e-10);
}

TEST_CASE("mollified tail energy") {
    SUBCASE("band-limited data has no tail") {
        std::vector<cd> c(2 * 40 + 1, cd(0.0));
        c[40 + 3] = cd(0.0, -0.5);
        c[40 - 3] = cd(0.0, 0.5);
        CHECK(oracle::mollified_tail_energy(c, 2, 5.0, 32, 10) == 0.0);
        const PiecewiseFunction s({{{0.0, 1.0}, Expr::sine(6 * pi)}});
        CHECK(oracle::mollified_tail_energy(s, 2, 5.0, 32, 10, 60) < 1e-15);
    }

    const auto f = builtin_f1();
    const int J = 256;
    const auto c = oracle::projection_coefficients(f, J);
    const std::span<const cd> all(c);

    SUBCASE("dominated by the L2 bound") {
        int checked = 0;
        for (int m : {32, 64, 128}) {
            for (int n : {20, 40, 60, 80, 100}) {
                for (double d : {0.1, 0.25, 0.5}) {
                    const auto prm = adaptive_params_from_distance(d, m, FilterConfig{});
                    if (prm.p < 1 || n * n * prm.gamma * prm.gamma / (2.0 * m * m) < prm.p) continue;
                    const double e = oracle::mollified_tail_energy(all, prm.p, prm.gamma, m, n);
                    INFO("m=" << m << " n=" << n << " d=" << d);
                    CHECK(e <= tail_bound_l2(n, m, prm.p, prm.gamma, 1.0));
                    ++checked;
                }
            }
        }
        CHECK(checked >= 10);
    }
    SUBCASE("cutoff stability") {
        for (double d : {0.25, 0.5}) {
            const auto prm = adaptive_params_from_distance(d, 32, FilterConfig{});
            const double a = oracle::mollified_tail_energy(all.subspan(J - 128, 257), prm.p, prm.gamma, 32, 20);
            const double b = oracle::mollified_tail_energy(all, prm.p, prm.gamma, 32, 20);
            CHECK(std::abs(a - b) <= 1e-14 * b);
        }
    }
    SUBCASE("a cutoff that is too short is reported") {
        const auto prm = adaptive_params_from_distance(0.1, 128, FilterConfig{});
        CHECK_THROWS_AS(oracle::mollified_tail_energy(all.subspan(J - 50, 101), prm.p, prm.gamma, 128, 20), NumericalError);
        CHECK_THROWS_AS(oracle::mollified_tail_energy(all.subspan(J - 10, 21), 1, 1.0, 64, 10), ParameterError);
    }
}

TEST_CASE("ground truth error") {
    const auto f = builtin_f1();
    auto grid = midpoint_grid(128);
    std::vector<double> exact(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) exact[i] = f(grid[i]);
    const auto zero = oracle::ground_truth_error(grid, exact, f, 0.025);
    CHECK(zero.sup == 0.0);
    CHECK(zero.mean == 0.0);
    CHECK(zero.excluded == 0);

    auto shifted = exact;
    for (auto& v : shifted) v += 1e-3;
    const auto s = oracle::ground_truth_error(grid, shifted, f, 0.025);
    CHECK(s.sup == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(s.mean == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(s.sup_interior == doctest::Approx(1e-3).epsilon(1e-12));

    grid.push_back(0.5);
    shifted.push_back(100.0);
    const auto j = oracle::ground_truth_error(grid, shifted, f, 0.025);
    CHECK(j.excluded == 1);
    CHECK(std::isnan(j.pointwise.back()));
    CHECK(j.sup == doctest::Approx(1e-3).epsilon(1e-12));

    CHECK_THROWS_AS(oracle::ground_truth_error(grid, exact, f, 0.025), ParameterError);
}

TEST_CASE("f1 hybrid m = 512 regression summary") {
    const auto f = builtin_f1();
    const HybridConfig cfg;
    const auto grid = midpoint_grid(1024);
    const auto h = hybrid_reconstruct(fourier_samples(f, jittered_frequencies(512, 42)), f.jump_set(true), grid, cfg);
    const auto e = oracle::ground_truth_error(grid, h.values, f, cfg.delta);
    CHECK(e.sup == doctest::Approx(0.0072747492548780913).epsilon(1e-6));
    CHECK(e.mean == doctest::Approx(0.00017199071089950028).epsilon(1e-6));
    CHECK(e.sup_interior == doctest::Approx(0.00013263348476449943).epsilon(1e-6));
    CHECK(e.excluded == 0);
}
