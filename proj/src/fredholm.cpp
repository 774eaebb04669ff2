#include "edgestat/core/fredholm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "edgestat/core/kernels_limit.hpp"
#include "edgestat/core/quadrature.hpp"

namespace edgestat::fredholm {

namespace {

constexpr double kImagFloor = 1e-3;
constexpr double kImagTol = 1e-8;
constexpr int kTailNodes = 32;

Eigen::VectorXd weight_vector(const QuadGrid& g)
{
    return Eigen::Map<const Eigen::VectorXd>(g.weights.data(), Eigen::Index(g.weights.size()));
}

// both signs of eta over (H, inf)
double eta_tail(const std::function<double(Point2)>& bound, double xi, double H)
{
    return quad::halfline_integral([&](double y) { return bound({xi, y}) + bound({xi, -y}); }, H, kTailNodes);
}

double xi_tail(const std::function<double(Point2)>& bound, double from)
{
    return quad::halfline_integral([&](double x) { return eta_tail(bound, x, 0.0); }, from, kTailNodes);
}

double band_tail(const std::function<double(Point2)>& bound, double lo, double hi, double H)
{
    const quad::Rule r = quad::gauss_legendre(kTailNodes, lo, hi);
    double sum = 0.0;
    for (int i = 0; i < kTailNodes; ++i) sum += r.weights[i] * eta_tail(bound, r.nodes[i], H);
    return sum;
}

void check_real(cplx det)
{
    const double rel = std::abs(det.imag()) / std::max(std::abs(det), kImagFloor);
    if (!(rel <= kImagTol)) throw NumericalError("Fredholm determinant has a non-negligible imaginary part");
}

double diag_trace(const KernelFn& k, const QuadGrid& g)
{
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::abs(k.eval(g.nodes[i], g.nodes[i]));
    return s;
}

// eigenvalues of the weighted operator restricted to the grid (nonzero part only)
Eigen::VectorXcd operator_spectrum(const KernelFn& k, const QuadGrid& g)
{
    const Eigen::VectorXd w = weight_vector(g);
    const Eigen::VectorXd sw = w.cwiseSqrt();
    if (k.factor) {
        const LowRankFactor f = k.factor(g.nodes);
        if (f.left.cols() < f.left.rows()) {
            Eigen::MatrixXcd m = f.right.transpose() * (w.asDiagonal() * f.left);
            if (f.core.size() != 0) m = f.core * m;
            return Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m, false).eigenvalues();
        }
    }
    Eigen::MatrixXcd a = sw.asDiagonal() * k.evaluate(g.nodes) * sw.asDiagonal();
    a = 0.5 * (a + a.adjoint()).eval();
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a, Eigen::EigenvaluesOnly).eigenvalues().cast<cplx>();
}

double hadamard_remainder(double c, int r_max)
{
    double term = 1.0;
    for (int r = 1; r <= r_max; ++r) term *= c / r;
    double sum = 0.0;
    for (int r = r_max + 1; r < 10000; ++r) {
        term *= c / r;
        sum += term;
        if (r > c && term <= 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

QuadGrid make_halfline_grid(double t, double length, int m)
{
    require(m >= 4, "half-line grid needs m >= 4");
    require(length > 0.0, "half-line length must be positive");
    QuadGrid g = make_interval_grid(t, t + length, m);
    g.kind = DomainKind::HalfLine;
    return g;
}

QuadGrid make_interval_grid(double a, double b, int m)
{
    require(m >= 1, "interval grid needs nodes");
    require(b > a, "empty interval");
    const quad::Rule r = quad::gauss_legendre(m, a, b);
    QuadGrid g;
    g.kind = DomainKind::Interval;
    g.lower = a;
    g.upper = b;
    g.weights = r.weights;
    g.nodes.reserve(m);
    for (double x : r.nodes) g.nodes.push_back({x, 0.0});
    return g;
}

QuadGrid make_plane_grid(double t, double xi_len, int m_xi, int m_eta, double eta_half)
{
    require(m_xi >= 4 && m_eta >= 4, "plane grid needs at least 4 nodes per axis");
    require(xi_len > 0.0 && eta_half > 0.0, "plane grid extents must be positive");
    const quad::Rule rx = quad::gauss_legendre(m_xi, t, t + xi_len);
    const quad::Rule ry = quad::gauss_legendre(m_eta, -eta_half, eta_half);
    QuadGrid g;
    g.kind = DomainKind::PlaneRightHalf;
    g.lower = t;
    g.upper = t + xi_len;
    g.eta_half = eta_half;
    g.nodes.reserve(std::size_t(m_xi) * m_eta);
    g.weights.reserve(std::size_t(m_xi) * m_eta);
    for (int i = 0; i < m_xi; ++i) {
        for (int j = 0; j < m_eta; ++j) {
            g.nodes.push_back({rx.nodes[i], ry.nodes[j]});
            g.weights.push_back(rx.weights[i] * ry.weights[j]);
        }
    }
    return g;
}

double tail_certificate(const std::function<double(Point2)>& bound, const QuadGrid& grid)
{
    switch (grid.kind) {
    case DomainKind::Interval:
        return 0.0;
    case DomainKind::HalfLine:
        return quad::halfline_integral([&](double x) { return bound({x, 0.0}); }, grid.upper, kTailNodes);
    case DomainKind::PlaneRightHalf:
        return xi_tail(bound, grid.upper) + band_tail(bound, grid.lower, grid.upper, grid.eta_half);
    }
    return 0.0;
}

GapValue gap_series(const KernelFn& k, const QuadGrid& grid, const SeriesBudget& budget)
{
    require(k.hermitian, "the correlation series needs a Hermitian kernel");
    require(budget.r_max >= 0 && budget.r_max <= 40, "r_max must lie in [0, 40]");
    const double c = diag_trace(k, grid) + tail_certificate(k.diag_bound, grid);

    int r_used = budget.r_max;
    for (int r = 0; r < budget.r_max; ++r) {
        if (hadamard_remainder(c, r) <= budget.tol) {
            r_used = r;
            break;
        }
    }

    std::vector<cplx> e(r_used + 1, 0.0);
    e[0] = 1.0;
    if (k.degenerate) {
        const double p1 = diag_trace(k, grid);
        for (int r = 1; r <= r_used; ++r) e[r] = e[r - 1] * p1 / double(r);
    } else if (r_used > 0) {
        const Eigen::VectorXcd lam = operator_spectrum(k, grid);
        for (Eigen::Index i = 0; i < lam.size(); ++i) {
            for (int r = r_used; r >= 1; --r) e[r] += lam[i] * e[r - 1];
        }
    }
    double value = 0.0;
    for (int r = 0; r <= r_used; ++r) value += (r % 2 == 0 ? 1.0 : -1.0) * e[r].real();
    return {value, hadamard_remainder(c, r_used)};
}

double gap_nystrom(const KernelFn& k, const QuadGrid& grid)
{
    require(k.hermitian, "the Nystrom determinant needs a Hermitian kernel");
    const Eigen::Index n = Eigen::Index(grid.nodes.size());
    if (n == 0) return 1.0;
    const Eigen::VectorXd w = weight_vector(grid);
    if (k.degenerate) return std::exp(-diag_trace(k, grid));

    cplx det;
    if (k.factor) {
        const LowRankFactor f = k.factor(grid.nodes);
        const Eigen::Index rank = f.left.cols();
        if (rank < n) {
            Eigen::MatrixXcd m = f.right.transpose() * (w.asDiagonal() * f.left);
            if (f.core.size() != 0) m = f.core * m;
            m = Eigen::MatrixXcd::Identity(rank, rank) - m;
            det = m.partialPivLu().determinant();
        } else {
            const Eigen::VectorXd sw = w.cwiseSqrt();
            Eigen::MatrixXcd left = sw.asDiagonal() * f.left;
            if (f.core.size() != 0) left = left * f.core;
            Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n) - left * (f.right.transpose() * sw.asDiagonal());
            det = a.partialPivLu().determinant();
        }
    } else {
        const Eigen::VectorXd sw = w.cwiseSqrt();
        Eigen::MatrixXcd a = -(sw.asDiagonal() * k.evaluate(grid.nodes) * sw.asDiagonal());
        a.diagonal().array() += 1.0;
        det = a.partialPivLu().determinant();
    }
    check_real(det);
    return det.real();
}

double gumbel_cdf(double t) { return std::exp(-std::exp(-t)); }

CdfPoint tracy_widom_cdf(double t, int grid_m)
{
    require(grid_m >= 20, "Tracy-Widom grid needs at least 20 nodes");
    const KernelFn k = limit::airy_kernel_fn();
    const QuadGrid g = make_halfline_grid(t, std::max(12.0, 8.0 - t), grid_m);
    return {gap_nystrom(k, g), tail_certificate(k.diag_bound, g)};
}

QuadGrid plane_grid_for(const std::function<double(Point2)>& bound, double t, const PlaneGridSpec& spec)
{
    require(spec.tail_tol > 0.0, "tail tolerance must be positive");
    double L = spec.xi_len;
    if (L <= 0.0) {
        for (L = 8.0; L < 40.0; L += 2.0) {
            if (xi_tail(bound, t + L) <= 0.5 * spec.tail_tol) break;
        }
    }
    double H = spec.eta_half;
    if (H <= 0.0) {
        for (H = 3.0; H < 40.0; H += 1.0) {
            if (band_tail(bound, t, t + L, H) <= 0.5 * spec.tail_tol) break;
        }
    }
    return make_plane_grid(t, L, spec.m_xi, spec.m_eta, H);
}

CdfPoint interp_cdf(double sigma, double t, const PlaneGridSpec& spec)
{
    require(sigma >= 0.0, "sigma must be non-negative");
    auto bound = [sigma](Point2 z) { return limit::interp_diag_bound(sigma, z); };
    const QuadGrid g = plane_grid_for(bound, t, spec);
    const ContourSpec c = limit::interp_contour(sigma, std::max(std::abs(g.lower), std::abs(g.upper)), g.eta_half);
    const KernelFn k = limit::interp_kernel_fn(sigma, c);
    return {gap_nystrom(k, g), tail_certificate(bound, g)};
}

CdfPoint interp_rescaled_cdf(double sigma, double t, const PlaneGridSpec& spec)
{
    const auto bound = limit::interp_rescaled_kernel_fn(sigma, t, t + 1.0, 1.0).diag_bound;
    const QuadGrid g = plane_grid_for(bound, t, spec);
    const KernelFn k = limit::interp_rescaled_kernel_fn(sigma, g.lower, g.upper, g.eta_half);
    return {gap_nystrom(k, g), tail_certificate(bound, g)};
}

CdfPoint finite_n_cdf(const EnsembleParams& p, const finite::ScalingParams& s, double t, const PlaneGridSpec& spec)
{
    const KernelFn k = finite::rescaled_kernel_fn(p, s);
    const QuadGrid g = plane_grid_for(k.diag_bound, t, spec);
    return {gap_nystrom(k, g), tail_certificate(k.diag_bound, g)};
}

std::vector<double> make_t_grid(double t_min, double t_max, double step)
{
    require(step > 0.0 && t_max >= t_min, "invalid t range");
    const long count = long(std::floor((t_max - t_min) / step + 1e-9)) + 1;
    std::vector<double> t(count);
    for (long i = 0; i < count; ++i) t[i] = t_min + double(i) * step;
    return t;
}

DistCurve tabulate(const std::function<CdfPoint(double)>& f, const std::vector<double>& t_grid, int threads)
{
    DistCurve c;
    c.t = t_grid;
    c.F.assign(t_grid.size(), 0.0);
    c.tail.assign(t_grid.size(), 0.0);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (std::size_t i = next++; i < t_grid.size(); i = next++) {
            try {
                const CdfPoint v = f(t_grid[i]);
                c.F[i] = v.F;
                c.tail[i] = v.tail;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int count = std::max(1, std::min<int>(threads, int(t_grid.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < count; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return c;
}

bool check_cdf_axioms(const DistCurve& c, std::string* why)
{
    constexpr double kRoundoff = 1e-12;
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (c.t.size() != c.F.size() || c.t.size() != c.tail.size()) return fail("column lengths differ");
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        if (!(c.F[i] >= -c.tail[i] - kRoundoff && c.F[i] <= 1.0 + c.tail[i] + kRoundoff)) {
            return fail("F outside [0, 1] at t = " + std::to_string(c.t[i]));
        }
        if (i == 0) continue;
        if (!(c.t[i] > c.t[i - 1])) return fail("t grid not increasing");
        const double slack = 2.0 * std::max(c.tail[i], c.tail[i - 1]) + kRoundoff;
        if (c.F[i] < c.F[i - 1] - slack) return fail("F decreases at t = " + std::to_string(c.t[i]));
    }
    return true;
}

double sup_gap(const DistCurve& a, const DistCurve& b)
{
    require(a.F.size() == b.F.size(), "curves on different grids");
    double g = 0.0;
    for (std::size_t i = 0; i < a.F.size(); ++i) g = std::max(g, std::abs(a.F[i] - b.F[i]));
    return g;
}

}  // namespace edgestat::fredholm
