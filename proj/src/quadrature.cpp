#include "edgestat/core/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace edgestat {

void validate(const ContourSpec& spec)
{
    require(spec.delta > 0.0 && std::isfinite(spec.delta), "contour offset must be positive");
    require(spec.half_width > 0.0 && std::isfinite(spec.half_width), "contour half-width must be positive");
    require(spec.nodes >= 2, "contour needs at least two nodes");
}

void validate(const EnsembleParams& p)
{
    require(p.n >= 1, "n must be positive");
    require(p.tau >= 0.0 && p.tau < 1.0, "tau must lie in [0, 1)");
}

}  // namespace edgestat

namespace edgestat::quad {

namespace {

// P_m(x) and P_m'(x) by the three-term recurrence
void legendre(int m, double x, double& p, double& dp)
{
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = m * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Rule gauss_legendre(int m)
{
    require(m >= 1, "Gauss-Legendre needs m >= 1");
    Rule r;
    r.nodes.assign(m, 0.0);
    r.weights.assign(m, 0.0);
    if (m == 1) {
        r.weights[0] = 2.0;
        return r;
    }
    for (int i = 0; i < m / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(m, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre(m, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[m - 1 - i] = x;
        r.weights[i] = w;
        r.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) {
        double p = 0.0, dp = 1.0;
        legendre(m, 0.0, p, dp);
        r.weights[m / 2] = 2.0 / (dp * dp);
    }
    return r;
}

Rule gauss_legendre(int m, double a, double b)
{
    Rule r = gauss_legendre(m);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < m; ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
    }
    return r;
}

Rule gauss_hermite(int m)
{
    require(m >= 1, "Gauss-Hermite needs m >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        J(k, k - 1) = J(k - 1, k) = std::sqrt(0.5 * k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        r.nodes[i] = es.eigenvalues()(i);
        r.weights[i] = std::sqrt(kPi) * v0 * v0;
    }
    return r;
}

ComplexRule horizontal_line(const ContourSpec& spec)
{
    validate(spec);
    const int m = spec.nodes;
    const double h = 2.0 * spec.half_width / (m - 1);
    ComplexRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int j = 0; j < m; ++j) {
        r.nodes[j] = {-spec.half_width + j * h, spec.delta};
        r.weights[j] = (j == 0 || j == m - 1) ? 0.5 * h : h;
    }
    return r;
}

ComplexRule vertical_line(const ContourSpec& spec)
{
    validate(spec);
    const int m = spec.nodes;
    const double h = 2.0 * spec.half_width / (m - 1);
    ComplexRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int j = 0; j < m; ++j) {
        r.nodes[j] = {spec.delta, -spec.half_width + j * h};
        r.weights[j] = cplx(0.0, (j == 0 || j == m - 1) ? 0.5 * h : h);
    }
    return r;
}

ComplexRule circle(double radius, int nodes)
{
    require(radius > 0.0, "circle radius must be positive");
    require(nodes >= 2, "circle needs at least two nodes");
    ComplexRule r;
    r.nodes.resize(nodes);
    r.weights.resize(nodes);
    const double dth = 2.0 * kPi / nodes;
    for (int j = 0; j < nodes; ++j) {
        const cplx w = std::polar(radius, j * dth);
        r.nodes[j] = w;
        r.weights[j] = cplx(0.0, dth) * w;
    }
    return r;
}

}  // namespace edgestat::quad
