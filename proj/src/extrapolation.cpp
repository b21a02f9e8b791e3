#include "nurecon/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "nurecon/csv.hpp"
#include "nurecon/error.hpp"

namespace nurecon {

ChebyshevFit chebyshev_fit(std::span<const double> xs, std::span<const double> ys, int M) {
    if (M < 0) throw ParameterError("chebyshev_fit: degree must be >= 0");
    if (xs.size() != ys.size()) throw ParameterError("chebyshev_fit: xs and ys differ in length");
    if (xs.size() <= static_cast<std::size_t>(M)) {
        throw ParameterError("chebyshev_fit: need more than M = " + std::to_string(M) + " nodes, got " +
                             std::to_string(xs.size()));
    }
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParameterError("chebyshev_fit: repeated nodes");
    }
    for (double y : ys) {
        if (!std::isfinite(y)) throw NumericalError("chebyshev_fit: non-finite data");
    }

    ChebyshevFit fit;
    fit.degree = M;
    fit.a = sorted.front();
    fit.b = sorted.back();
    fit.node_count = static_cast<int>(xs.size());
    if (fit.a == fit.b) {  // single node, M = 0
        fit.b = fit.a + 1.0;
    }

    const auto rows = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd V(rows, M + 1);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = fit.to_t(xs[static_cast<std::size_t>(i)]);
        V(i, 0) = 1.0;
        if (M >= 1) V(i, 1) = t;
        for (int k = 2; k <= M; ++k) V(i, k) = 2.0 * t * V(i, k - 1) - V(i, k - 2);
        y(i) = ys[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    if (qr.rank() < M + 1) {
        throw NumericalError("chebyshev_fit: Chebyshev-Vandermonde matrix has rank " + std::to_string(qr.rank()) +
                             " < " + std::to_string(M + 1));
    }
    const Eigen::VectorXd c = qr.solve(y);
    fit.coefficients.assign(c.data(), c.data() + c.size());
    fit.residual_norm = std::sqrt((V * c - y).squaredNorm() / static_cast<double>(rows));
    return fit;
}

double evaluate_fit(const ChebyshevFit& fit, double x) {
    const double t = fit.to_t(x);
    double b1 = 0.0;
    double b2 = 0.0;
    for (int k = fit.degree; k >= 1; --k) {
        const double b0 = fit.coefficients[static_cast<std::size_t>(k)] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return fit.coefficients[0] + t * b1 - b2;
}

std::vector<double> equispaced_nodes(double a, double b, int N) {
    if (N < 0) throw ParameterError("equispaced_nodes: N must be >= 0");
    if (N == 0) return {a};
    std::vector<double> x(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) x[static_cast<std::size_t>(j)] = a + (b - a) * j / N;
    x.back() = b;
    return x;
}

ExtrapolationParams extrapolation_params_practical(int m, double delta) {
    if (m < 1) throw ParameterError("extrapolation_params_practical: m must be >= 1");
    if (!(delta >= 0.0)) throw ParameterError("extrapolation_params_practical: delta must be >= 0");
    const int M = static_cast<int>(std::lround(4.0 + m * delta));
    return {M, 4 * M * M};
}

ExtrapolationParams extrapolation_params_theoretical(double Q, double eps, double rho) {
    if (!(rho > 1.0)) throw ParameterError("extrapolation_params_theoretical: rho must be > 1");
    if (!(eps > 0.0) || !(Q > eps)) throw ParameterError("extrapolation_params_theoretical: need 0 < eps < Q");
    const int M = static_cast<int>(std::ceil(std::log(Q / eps) / std::log(rho)));
    return {M, 4 * M * M};
}

double extrapolation_error_bound(double rho, double Q, double eps, double x, double C) {
    if (!(rho > 1.0)) throw ParameterError("extrapolation_error_bound: rho must be > 1");
    if (!(Q > 0.0) || !(eps > 0.0) || !(C > 0.0)) {
        throw ParameterError("extrapolation_error_bound: Q, eps and C must be > 0");
    }
    const double limit = 0.5 * (rho + 1.0 / rho);
    if (!(x >= 1.0) || !(x < limit)) {
        throw DomainError("extrapolation_error_bound: x outside [1, (rho + 1/rho)/2)");
    }
    const double r = (x + std::sqrt(x * x - 1.0)) / rho;
    if (!(r < 1.0)) throw DomainError("extrapolation_error_bound: r(x) >= 1");
    const double alpha = -std::log(r) / std::log(rho);
    return C * std::pow(Q, 1.0 - alpha) * std::pow(eps, alpha) / (1.0 - r);
}

void write_fit_csv(std::ostream& out, const ChebyshevFit& fit) {
    out << "# a=" << csv::sci(fit.a) << "\n";
    out << "# b=" << csv::sci(fit.b) << "\n";
    out << "# M=" << fit.degree << "\n";
    out << "# N=" << fit.node_count - 1 << "\n";
    out << "# residual_norm=" << csv::sci(fit.residual_norm) << "\n";
    out << "k,a_k\n";
    for (std::size_t k = 0; k < fit.coefficients.size(); ++k) out << k << "," << csv::sci(fit.coefficients[k]) << "\n";
}

ChebyshevFit read_fit_csv(std::istream& in) {
    ChebyshevFit fit;
    std::vector<std::string> comments;
    std::string line;
    if (!csv::next_row(in, line, &comments) || line != "k,a_k") throw IoError("fit CSV: missing 'k,a_k' header");
    while (csv::next_row(in, line, &comments)) {
        const auto cols = csv::split(line);
        if (cols.size() != 2) throw IoError("fit CSV: ragged row '" + line + "'");
        if (csv::to_int(cols[0]) != static_cast<long long>(fit.coefficients.size())) {
            throw IoError("fit CSV: coefficient rows out of order");
        }
        fit.coefficients.push_back(csv::to_double(cols[1]));
    }
    bool have_a = false, have_b = false;
    for (const auto& c : comments) {
        const auto eq = c.find('=');
        if (eq == std::string::npos) continue;
        const auto key = csv::trim(std::string_view(c).substr(0, eq));
        const auto val = csv::trim(std::string_view(c).substr(eq + 1));
        if (key == "a") { fit.a = csv::to_double(val); have_a = true; }
        else if (key == "b") { fit.b = csv::to_double(val); have_b = true; }
        else if (key == "N") fit.node_count = static_cast<int>(csv::to_int(val)) + 1;
        else if (key == "residual_norm") fit.residual_norm = csv::to_double(val);
    }
    if (!have_a || !have_b || fit.coefficients.empty()) throw IoError("fit CSV: missing domain or coefficients");
    fit.degree = static_cast<int>(fit.coefficients.size()) - 1;
    return fit;
}

}  // namespace nurecon
