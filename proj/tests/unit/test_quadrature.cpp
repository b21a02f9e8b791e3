#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "nurecon/error.hpp"
#include "nurecon/quadrature.hpp"

using namespace nurecon;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (int n : {1, 2, 5, 16, 24}) {
        const auto rule = gauss_legendre_rule(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1));
        }
    }
    CHECK_THROWS_AS(gauss_legendre_rule(0), ParameterError);
}

TEST_CASE("composite quadrature converges on oscillatory integrands") {
    const QuadratureSpec spec;
    const double lambda = 200.3;
    auto fn = [&](double x) { return std::polar(1.0, -2 * std::numbers::pi * lambda * x); };
    const auto r = integrate_composite(fn, 0.0, 1.0, spec, 128);
    const std::complex<double> i{0, 1};
    const auto exact = (std::exp(-2 * std::numbers::pi * i * lambda) - 1.0) / (-2 * std::numbers::pi * i * lambda);
    CHECK(std::abs(r.value - exact) < 1e-13);
    CHECK(r.error_estimate <= spec.tol);
    CHECK((r.panels & (r.panels - 1)) == 0);
}

TEST_CASE("non-convergence carries the achieved estimate") {
    QuadratureSpec spec;
    spec.max_panels = 4;
    auto fn = [](double x) { return std::sin(3000.0 * x); };
    try {
        integrate_composite(fn, 0.0, 1.0, spec, 1);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.achieved_estimate() > spec.tol);
    }
}
