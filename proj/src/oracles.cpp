#include "nurecon/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nurecon/error.hpp"
#include "nurecon/parallel.hpp"

namespace nurecon::oracle {

namespace {

constexpr long double pi_l = 3.141592653589793238462643383279502884L;

// Kronrod abscissae on [0,1] (descending) and weights; Gauss weights for the
// odd-indexed abscissae.
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Gk {
    std::complex<double> kronrod;
    double error;
    double abs_integral;  // ∫|f| by the Kronrod rule
};

// QUADPACK's qk15 error estimate: |K - G| rescaled by ∫|f - mean|, since the
// raw difference measures the 7-point rule rather than the 15-point one.
Gk gk15(const ComplexFn& fn, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> fv[15];
    fv[7] = fn(c);
    for (int i = 0; i < 7; ++i) {
        fv[i] = fn(c - h * xgk[i]);
        fv[14 - i] = fn(c + h * xgk[i]);
    }
    std::complex<double> k = wgk[7] * fv[7];
    std::complex<double> g = wg[3] * fv[7];
    double kabs = wgk[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        k += wgk[i] * (fv[i] + fv[14 - i]);
        kabs += wgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) g += wg[i / 2] * (fv[i] + fv[14 - i]);
    }
    const std::complex<double> mean = 0.5 * k;
    double asc = wgk[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i) asc += wgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    asc *= std::abs(h);
    double err = std::abs((k - g) * h);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return {k * h, err, kabs * std::abs(h)};
}

std::complex<double> adapt(const ComplexFn& fn, double a, double b, double tol, int depth) {
    const Gk r = gk15(fn, a, b);
    // Below 50 ulps of ∫|f| the estimate is rounding noise.
    if (r.error <= tol || r.error <= 50.0 * std::numeric_limits<double>::epsilon() * r.abs_integral) return r.kronrod;
    if (depth >= 60) throw NumericalError("oracle::integrate_gk: no convergence", r.error);
    const double c = 0.5 * (a + b);
    return adapt(fn, a, c, 0.5 * tol, depth + 1) + adapt(fn, c, b, 0.5 * tol, depth + 1);
}

// e^{-2πiλx} with the phase formed in long double.
std::complex<double> kernel(long double lambda, double x) {
    const long double ph = -2.0L * pi_l * lambda * static_cast<long double>(x);
    return {static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph))};
}

int panels_for(double freq, double width) {
    return 1 + static_cast<int>(std::ceil(std::abs(freq) * width));
}

}  // namespace

std::complex<double> integrate_gk(const ComplexFn& fn, double a, double b, double tol, int start_panels) {
    if (!(tol > 0.0)) throw ParameterError("oracle::integrate_gk: tol must be > 0");
    start_panels = std::max(1, start_panels);
    const double h = (b - a) / start_panels;
    std::complex<double> sum{0.0, 0.0};
    for (int i = 0; i < start_panels; ++i) {
        const double lo = a + h * i;
        const double hi = (i + 1 == start_panels) ? b : a + h * (i + 1);
        sum += adapt(fn, lo, hi, tol / start_panels, 0);
    }
    return sum;
}

std::complex<double> exp_inner_product(double lambda, int l, double tol) {
    const long double theta = static_cast<long double>(lambda) - l;
    return integrate_gk([&](double x) { return kernel(-theta, x); }, 0.0, 1.0, tol,
                        panels_for(static_cast<double>(theta), 1.0));
}

std::vector<std::complex<double>> projection_coefficients(const PiecewiseFunction& f, int lo, int hi, double tol) {
    if (hi < lo) throw ParameterError("oracle::projection_coefficients: empty range");
    std::vector<std::complex<double>> out(static_cast<std::size_t>(hi - lo + 1));
    parallel_for(out.size(), [&](std::size_t i) {
        const int l = lo + static_cast<int>(i);
        std::complex<double> total{0.0, 0.0};
        for (const auto& piece : f.pieces()) {
            const auto& eval = piece.eval;
            auto fn = [&](double x) { return eval(x) * kernel(l, x); };
            total += integrate_gk(fn, piece.interval.lo, piece.interval.hi, tol,
                                  panels_for(l, piece.interval.width()));
        }
        out[i] = total;
    });
    return out;
}

std::vector<std::complex<double>> projection_coefficients(const PiecewiseFunction& f, int n, double tol) {
    if (n < 0) throw ParameterError("oracle::projection_coefficients: n must be >= 0");
    return projection_coefficients(f, -n, n, tol);
}

long double sigma(int p, double gamma, double w) {
    const long double z = 0.5L * static_cast<long double>(w) * w * gamma * gamma;
    if (z == 0.0L) return 1.0L;
    long double s = 0.0L;
    for (int l = 0; l <= p; ++l) s += std::exp(-z + l * std::log(z) - std::lgamma(static_cast<long double>(l) + 1));
    return s;
}

double classical_filtered_sum(std::span<const std::complex<double>> f_hat, int p, double gamma, int m, int n,
                              double x) {
    if (f_hat.size() != static_cast<std::size_t>(2 * n + 1)) {
        throw ParameterError("oracle::classical_filtered_sum: need 2n+1 coefficients");
    }
    long double acc = 0.0L;
    for (int l = -n; l <= n; ++l) {
        const auto c = f_hat[static_cast<std::size_t>(l + n)];
        const long double ph = 2.0L * pi_l * l * static_cast<long double>(x);
        const long double s = sigma(p, gamma, static_cast<double>(l) / m);
        acc += s * (c.real() * std::cos(ph) - c.imag() * std::sin(ph));
    }
    return static_cast<double>(acc);
}

double mollified_tail_energy(std::span<const std::complex<double>> f_hat, int p, double gamma, int m, int n) {
    if (f_hat.size() % 2 == 0) throw ParameterError("oracle::mollified_tail_energy: need 2J+1 coefficients");
    const int J = static_cast<int>(f_hat.size() / 2);
    if (J <= n) throw ParameterError("oracle::mollified_tail_energy: cutoff J must exceed n");
    auto term_sq = [&](int j) {
        const long double a = sigma(p, gamma, static_cast<double>(j) / m) *
                              static_cast<long double>(std::abs(f_hat[static_cast<std::size_t>(j + J)]));
        return a * a;
    };
    long double total = 0.0L;
    for (int j = n + 1; j <= J; ++j) total += term_sq(j) + term_sq(-j);
    const long double edge = term_sq(J) + term_sq(-J);
    if (!(std::sqrt(edge) <= 1e-18L * std::sqrt(total) || std::sqrt(edge) <= 1e-28L)) {
        throw NumericalError("oracle::mollified_tail_energy: cutoff J = " + std::to_string(J) + " too small",
                             static_cast<double>(std::sqrt(edge / total)));
    }
    return static_cast<double>(std::sqrt(total));
}

double mollified_tail_energy(const PiecewiseFunction& f, int p, double gamma, int m, int n, int J) {
    if (J <= n) throw ParameterError("oracle::mollified_tail_energy: cutoff J must exceed n");
    const auto coeffs = projection_coefficients(f, J);
    return mollified_tail_energy(coeffs, p, gamma, m, n);
}

ErrorSummary ground_truth_error(std::span<const double> grid, std::span<const double> recon,
                                const PiecewiseFunction& f, double delta) {
    if (grid.size() != recon.size()) throw ParameterError("oracle::ground_truth_error: size mismatch");
    ErrorSummary s;
    s.pointwise.resize(grid.size());
    const auto jumps = f.jump_set(true);
    const double near = 4.0 * std::numeric_limits<double>::epsilon();
    double sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const bool at_jump =
            std::any_of(jumps.begin() + 1, jumps.end() - 1, [&](double xi) { return std::abs(x - xi) <= near; });
        if (at_jump) {
            s.pointwise[i] = std::numeric_limits<double>::quiet_NaN();
            ++s.excluded;
            continue;
        }
        const double e = std::abs(recon[i] - f(x));
        s.pointwise[i] = e;
        s.sup = std::max(s.sup, e);
        sum += e;
        ++counted;
        double d = std::numeric_limits<double>::infinity();
        for (double xi : jumps) d = std::min(d, std::abs(x - xi));
        if (d >= delta) s.sup_interior = std::max(s.sup_interior, e);
    }
    s.mean = counted ? sum / static_cast<double>(counted) : 0.0;
    return s;
}

}  // namespace nurecon::oracle
