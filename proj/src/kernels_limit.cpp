#include "edgestat/core/kernels_limit.hpp"

#include <algorithm>
#include <cmath>

#include "edgestat/core/quadrature.hpp"
#include "edgestat/core/specfun.hpp"

namespace edgestat {

Eigen::MatrixXcd KernelFn::evaluate(const std::vector<Point2>& pts) const
{
    if (matrix) return matrix(pts);
    const Eigen::Index n = Eigen::Index(pts.size());
    if (factor) {
        const LowRankFactor f = factor(pts);
        if (f.core.size() == 0) return f.left * f.right.transpose();
        return f.left * f.core * f.right.transpose();
    }
    Eigen::MatrixXcd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) k(i, j) = eval(pts[i], pts[j]);
    }
    return k;
}

}  // namespace edgestat

namespace edgestat::limit {

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(kPi);
constexpr double kLogTol = 37.0;   // e^{-37} ~ 1e-16 relative truncation
constexpr double kNodeFactor = 2.5;

double contour_offset(double sigma) { return 1.0 / (1.0 + sigma * sigma); }

// smallest T with (max(0, sigma T - H))^2/2 + delta T^2 >= kLogTol
double truncation(double sigma, double delta, double H)
{
    auto f = [&](double t) {
        const double g = std::max(0.0, sigma * t - H);
        return 0.5 * g * g + delta * t * t - kLogTol;
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
}

ContourSpec size_contour(double sigma, double X, double H)
{
    ContourSpec c;
    c.delta = contour_offset(sigma);
    c.half_width = truncation(sigma, c.delta, H);
    const double T = c.half_width;
    const double freq = T * T + c.delta * c.delta + X + sigma * std::sqrt(2.0 * kLogTol) + sigma * sigma * c.delta;
    const double h = 2.0 * kPi / (kNodeFactor * freq);
    c.nodes = std::max(240, int(std::ceil(2.0 * T / h)) + 1);
    return c;
}

// one factor column set: w_a exp(-(sigma u_a + s eta)^2/2 + i u_a^3/3 + i xi u_a), s = +1 for the first argument
Eigen::MatrixXcd factor_rows(double sigma, const quad::ComplexRule& rule, const std::vector<Point2>& pts, double s,
                             double xscale, double xshift, double yscale)
{
    const Eigen::Index m = Eigen::Index(rule.nodes.size());
    Eigen::MatrixXcd out(Eigen::Index(pts.size()), m);
    const cplx I(0.0, 1.0);
    for (Eigen::Index a = 0; a < m; ++a) {
        const cplx u = rule.nodes[a];
        const cplx cubic = I * u * u * u / 3.0;
        for (Eigen::Index j = 0; j < Eigen::Index(pts.size()); ++j) {
            const double xi = xshift + xscale * pts[j].xi, eta = yscale * pts[j].eta;
            const cplx g = sigma * u + s * eta;
            out(j, a) = rule.weights[a] * std::exp(-0.5 * g * g + cubic + I * xi * u);
        }
    }
    return out;
}

// -1/(4 pi^{5/2} i (u_a + u_b))
Eigen::MatrixXcd coupling(const quad::ComplexRule& rule)
{
    const Eigen::Index m = Eigen::Index(rule.nodes.size());
    Eigen::MatrixXcd c(m, m);
    const cplx pre = cplx(0.0, 1.0) / (4.0 * std::pow(kPi, 2.5));
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) c(a, b) = pre / (rule.nodes[a] + rule.nodes[b]);
    }
    return c;
}

void check_coverage(const Eigen::MatrixXcd& f, const char* what)
{
    double peak = 0.0;
    for (Eigen::Index j = 0; j < f.rows(); ++j) {
        peak = std::max(peak, f.row(j).cwiseAbs().maxCoeff());
        const double ends = std::max(std::abs(f(j, 0)), std::abs(f(j, f.cols() - 1)));
        const double rel = ends / f.row(j).cwiseAbs().maxCoeff();
        if (rel > 1e-12) throw AccuracyError(what, rel);
    }
    (void)peak;
}

double delta_bound(double sigma, double d, double xi, double eta)
{
    const double s2 = sigma * sigma;
    return std::exp(d * d * s2 + 2.0 / 3.0 * d * d * d - 2.0 * d * eta * eta / (s2 + 2.0 * d) - 2.0 * d * xi) /
           (4.0 * std::pow(kPi, 1.5) * d * (s2 + 2.0 * d));
}

}  // namespace

SigmaRescale interp_rescale(double sigma)
{
    require(sigma > 1.0, "the sigma rescaling needs sigma > 1");
    const double ls = std::log(sigma);
    SigmaRescale r;
    r.a_sigma = sigma / std::sqrt(6.0 * ls);
    r.b_sigma = std::pow(sigma, 1.5) / std::pow(6.0 * ls, 0.25);
    r.c_sigma = r.a_sigma * (3.0 * ls - 1.25 * std::log(6.0 * ls) - std::log(2.0 * kPi));
    return r;
}

ContourSpec interp_contour(double sigma, double xi_max, double eta_max)
{
    require(sigma >= 0.0, "sigma must be non-negative");
    return size_contour(sigma, std::abs(xi_max), std::abs(eta_max));
}

cplx kernel_interp(double sigma, Point2 z1, Point2 z2, const ContourSpec& spec)
{
    require(sigma >= 0.0, "sigma must be non-negative");
    validate(spec);
    const quad::ComplexRule rule = quad::horizontal_line(spec);
    const Eigen::MatrixXcd f1 = factor_rows(sigma, rule, {z1}, 1.0, 1.0, 0.0, 1.0);
    const Eigen::MatrixXcd f2 = factor_rows(sigma, rule, {z2}, -1.0, 1.0, 0.0, 1.0);
    check_coverage(f1, "contour truncated too early for the first point");
    check_coverage(f2, "contour truncated too early for the second point");
    const Eigen::MatrixXcd c = coupling(rule);
    return (f1 * c * f2.transpose())(0, 0);
}

cplx kernel_interp(double sigma, Point2 z1, Point2 z2)
{
    const double X = std::max(std::abs(z1.xi), std::abs(z2.xi));
    const double H = std::max(std::abs(z1.eta), std::abs(z2.eta));
    return kernel_interp(sigma, z1, z2, interp_contour(sigma, X, H));
}

double kernel_airy2d(Point2 z1, Point2 z2)
{
    return std::exp(-0.5 * (z1.eta * z1.eta + z2.eta * z2.eta)) * kInvSqrtPi * specfun::airy_kernel(z1.xi, z2.xi);
}

cplx kernel_poisson(PoissonVariant variant, Point2 z1, Point2 z2)
{
    switch (variant) {
    case PoissonVariant::P:
        if (z1.xi != z2.xi || z1.eta != z2.eta) return 0.0;
        return std::exp(-z1.xi - z1.eta * z1.eta) * kInvSqrtPi;
    case PoissonVariant::P1:
        if (z1.xi != z2.xi) return 0.0;
        return std::exp(-0.5 * (z1.eta * z1.eta + z2.eta * z2.eta) - z1.xi) * kInvSqrtPi;
    case PoissonVariant::P2:
        if (z1.eta != z2.eta) return 0.0;
        return std::exp(-z1.eta * z1.eta - 0.5 * (z1.xi + z2.xi)) * kInvSqrtPi;
    }
    return 0.0;
}

double interp_diag_bound(double sigma, Point2 z)
{
    double best = delta_bound(sigma, 1.0, z.xi, z.eta);
    for (double d : {0.5, 0.25, contour_offset(sigma)}) best = std::min(best, delta_bound(sigma, d, z.xi, z.eta));
    return best;
}

double airy_diag_bound(double x)
{
    if (x <= 1.0) return specfun::airy_kernel(x, x);
    return std::exp(-4.0 / 3.0 * x * std::sqrt(x)) / (4.0 * kPi * x);
}

KernelFn airy_kernel_fn()
{
    KernelFn k;
    k.name = "airy";
    k.eval = [](Point2 a, Point2 b) { return cplx(specfun::airy_kernel(a.xi, b.xi)); };
    k.diag_bound = [](Point2 z) { return airy_diag_bound(z.xi); };
    k.matrix = [](const std::vector<Point2>& pts) {
        const Eigen::Index n = Eigen::Index(pts.size());
        std::vector<double> ai(n), aip(n);
        for (Eigen::Index i = 0; i < n; ++i) specfun::airy_pair(pts[i].xi, ai[i], aip[i]);
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                m(i, j) = specfun::airy_kernel_from(pts[i].xi, ai[i], aip[i], pts[j].xi, ai[j], aip[j]);
            }
        }
        return m;
    };
    return k;
}

KernelFn airy2d_kernel_fn()
{
    KernelFn k;
    k.name = "airy2d";
    k.eval = [](Point2 a, Point2 b) { return cplx(kernel_airy2d(a, b)); };
    k.diag_bound = [](Point2 z) { return std::exp(-z.eta * z.eta) * kInvSqrtPi * airy_diag_bound(z.xi); };
    k.matrix = [](const std::vector<Point2>& pts) {
        const KernelFn line = airy_kernel_fn();
        const Eigen::MatrixXcd ka = line.matrix(pts);
        Eigen::MatrixXcd m(ka.rows(), ka.cols());
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                m(i, j) = ka(i, j) * std::exp(-0.5 * (pts[i].eta * pts[i].eta + pts[j].eta * pts[j].eta)) * kInvSqrtPi;
            }
        }
        return m;
    };
    return k;
}

KernelFn interp_kernel_fn(double sigma, const ContourSpec& spec)
{
    require(sigma >= 0.0, "sigma must be non-negative");
    validate(spec);
    KernelFn k;
    k.name = "interp";
    k.eval = [sigma, spec](Point2 a, Point2 b) { return kernel_interp(sigma, a, b, spec); };
    k.diag_bound = [sigma](Point2 z) { return interp_diag_bound(sigma, z); };
    k.factor = [sigma, spec](const std::vector<Point2>& pts) {
        const quad::ComplexRule rule = quad::horizontal_line(spec);
        LowRankFactor f;
        f.left = factor_rows(sigma, rule, pts, 1.0, 1.0, 0.0, 1.0);
        f.right = factor_rows(sigma, rule, pts, -1.0, 1.0, 0.0, 1.0);
        f.core = coupling(rule);
        return f;
    };
    return k;
}

ContourSpec interp_rescaled_contour(double sigma, double xi_min, double xi_max, double eta_max)
{
    const SigmaRescale r = interp_rescale(sigma);
    const double X = std::max(std::abs(r.c_sigma + r.a_sigma * xi_min), std::abs(r.c_sigma + r.a_sigma * xi_max));
    return size_contour(sigma, X, r.b_sigma * std::abs(eta_max));
}

KernelFn interp_rescaled_kernel_fn(double sigma, double xi_min, double xi_max, double eta_max)
{
    const SigmaRescale r = interp_rescale(sigma);
    const ContourSpec spec = interp_rescaled_contour(sigma, xi_min, xi_max, eta_max);
    const double ab = r.a_sigma * r.b_sigma;
    KernelFn k;
    k.name = "interp-rescaled";
    k.eval = [sigma, spec, r, ab](Point2 a, Point2 b) {
        const Point2 ua{r.c_sigma + r.a_sigma * a.xi, r.b_sigma * a.eta};
        const Point2 ub{r.c_sigma + r.a_sigma * b.xi, r.b_sigma * b.eta};
        return ab * kernel_interp(sigma, ua, ub, spec);
    };
    k.diag_bound = [sigma, r, ab](Point2 z) {
        const double xi = r.c_sigma + r.a_sigma * z.xi, eta = r.b_sigma * z.eta;
        return ab * std::min(interp_diag_bound(sigma, {xi, eta}), delta_bound(sigma, 0.5 / r.a_sigma, xi, eta));
    };
    k.factor = [sigma, spec, r, ab](const std::vector<Point2>& pts) {
        const quad::ComplexRule rule = quad::horizontal_line(spec);
        LowRankFactor f;
        f.left = factor_rows(sigma, rule, pts, 1.0, r.a_sigma, r.c_sigma, r.b_sigma);
        f.right = factor_rows(sigma, rule, pts, -1.0, r.a_sigma, r.c_sigma, r.b_sigma);
        f.core = ab * coupling(rule);
        return f;
    };
    return k;
}

KernelFn poisson_kernel_fn(PoissonVariant variant)
{
    KernelFn k;
    k.name = variant == PoissonVariant::P ? "poisson-p" : variant == PoissonVariant::P1 ? "poisson-p1" : "poisson-p2";
    k.eval = [variant](Point2 a, Point2 b) { return kernel_poisson(variant, a, b); };
    k.diag_bound = [](Point2 z) { return std::exp(-z.xi - z.eta * z.eta) * kInvSqrtPi; };
    k.degenerate = true;
    return k;
}

}  // namespace edgestat::limit
