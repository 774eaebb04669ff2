#include "edgestat/core/kernels_finite.hpp"

#include <cmath>
#include <limits>

#include <quadmath.h>

#include "edgestat/core/quadrature.hpp"
#include "edgestat/core/specfun.hpp"

namespace edgestat::finite {

namespace {

void require_tau_open(const EnsembleParams& p)
{
    validate(p);
    require(p.tau > 0.0, "tau = 0 is the Ginibre kernel; use kernel_ginibre");
}

double argument_scale(const EnsembleParams& p) { return std::sqrt(p.n / (2.0 * p.tau)); }

double log_prefactor(const EnsembleParams& p) { return std::log(p.n / std::sqrt(kPi * (1.0 - p.tau * p.tau))); }

// exponent of the Gaussian weight attached to one point
double log_point_weight(const EnsembleParams& p, Point2 z)
{
    return -0.5 * p.n * (z.xi * z.xi / (1.0 + p.tau) + z.eta * z.eta / (1.0 - p.tau));
}

constexpr double kContourTol = 1e-10;

// partial exponential sum in quad precision with its own running log scale
cplx ginibre_extended(int n, cplx w, double log_weight)
{
    using f128 = __float128;
    const f128 wr = w.real(), wi = w.imag();
    f128 tr = 1, ti = 0, sr = 0, si = 0;
    f128 log_scale = 0;
    for (int k = 0; k < n; ++k) {
        sr += tr;
        si += ti;
        const f128 nr = (tr * wr - ti * wi) / (k + 1), ni = (tr * wi + ti * wr) / (k + 1);
        tr = nr;
        ti = ni;
        const f128 m = fabsq(tr) + fabsq(ti);
        if (m > f128(1e300)) {
            const f128 r = 1 / m;
            tr *= r, ti *= r, sr *= r, si *= r;
            log_scale += logq(m);
        }
    }
    const f128 mag = sqrtq(sr * sr + si * si);
    if (mag == 0) return 0.0;
    const double lv = double(logq(mag) + log_scale) + log_weight;
    if (lv < -708.0) return 0.0;
    return std::polar(std::exp(lv), double(atan2q(si, sr)));
}

}  // namespace

KernelValue kernel_finite_checked(const EnsembleParams& p, Point2 z1, Point2 z2)
{
    require_tau_open(p);
    const double s = argument_scale(p);
    const double lw = log_prefactor(p) + log_point_weight(p, z1) + log_point_weight(p, z2);
    const specfun::ScaledComplex v =
        specfun::weighted_hermite_sum(p.n, p.tau, s * to_complex(z1), s * std::conj(to_complex(z2)), lw);
    KernelValue out;
    if (v.log_abs() < -708.0) {
        out.underflow = v.mant != 0.0;
        return out;
    }
    out.value = v.value();
    return out;
}

cplx kernel_finite(const EnsembleParams& p, Point2 z1, Point2 z2) { return kernel_finite_checked(p, z1, z2).value; }

cplx kernel_finite_contour(const EnsembleParams& p, Point2 z1, Point2 z2, const ContourSpec& inner,
                           const ContourSpec& outer)
{
    require_tau_open(p);
    const double s = argument_scale(p);
    specfun::detail::ContourOptions opt;
    opt.tol = kContourTol;
    opt.log_weight = log_prefactor(p) + log_point_weight(p, z1) + log_point_weight(p, z2);
    return specfun::detail::hermite_contour_eval(p.n, p.tau, s * to_complex(z1), s * std::conj(to_complex(z2)), inner,
                                                 outer, opt);
}

cplx kernel_finite_contour(const EnsembleParams& p, Point2 z1, Point2 z2, double r1, double r2)
{
    require_tau_open(p);
    const double s = argument_scale(p);
    const double lw = log_prefactor(p) + log_point_weight(p, z1) + log_point_weight(p, z2);
    return specfun::detail::hermite_contour_radii_weighted(p.n, p.tau, s * to_complex(z1),
                                                           s * std::conj(to_complex(z2)), r1, r2, lw, kContourTol);
}

cplx kernel_finite_contour(const EnsembleParams& p, Point2 z1, Point2 z2)
{
    require_tau_open(p);
    double r1 = 0.0, r2 = 0.0;
    if (default_contour_radii(p, z1, z2, r1, r2)) return kernel_finite_contour(p, z1, z2, r1, r2);
    const double s = argument_scale(p);
    const double lw = log_prefactor(p) + log_point_weight(p, z1) + log_point_weight(p, z2);
    return specfun::detail::hermite_contour_auto_weighted(p.n, p.tau, s * to_complex(z1),
                                                          s * std::conj(to_complex(z2)), lw, kContourTol);
}

bool default_contour_radii(const EnsembleParams& p, Point2 z1, Point2 z2, double& r1, double& r2)
{
    require_tau_open(p);
    const double n = p.n;
    const double scale = std::sqrt(2.0 * n / p.tau);
    const double c1 = scale * z1.xi, c2 = scale * z2.xi;
    if (c1 * c1 <= 8.0 * n || c2 * c2 <= 8.0 * n || c1 <= 0.0 || c2 <= 0.0) return false;
    const SaddleData s1 = saddle_points(p.n, c1, p.tau);
    const SaddleData s2 = saddle_points(p.n, c2, p.tau);
    r1 = s1.w_minus;
    r2 = s2.w_plus;
    // separate contours that pinch at the edge
    if (r1 >= p.tau * r2 / 1.2) {
        const double eps = std::min(0.25, 10.0 / std::sqrt(n));
        r1 *= 1.0 - eps;
        r2 *= 1.0 + eps;
    }
    return r1 < p.tau * r2 / 1.2;
}

cplx kernel_ginibre(int n, Point2 z1, Point2 z2)
{
    require(n >= 1, "n must be positive");
    const cplx w = double(n) * to_complex(z1) * std::conj(to_complex(z2));
    const double lw = std::log(n / kPi) - 0.5 * n * (std::norm(to_complex(z1)) + std::norm(to_complex(z2)));
    specfun::ScaledComplex term = specfun::ScaledComplex::from_exp(lw);
    specfun::ScaledSum sum;
    double abs_sum = 0.0;  // sum of |terms| relative to the leading weight
    double abs_term = 1.0;
    for (int k = 0; k < n; ++k) {
        sum.add(term);
        abs_sum += abs_term;
        abs_term *= std::abs(w) / double(k + 1);
        if (abs_sum > 1e300) break;
        term.mant *= w / double(k + 1);
        term.normalize();
    }
    const specfun::ScaledComplex& v = sum.total();
    const double cancel = std::log(abs_sum) + lw - v.log_abs();
    if (cancel > std::log(1e4) || abs_sum > 1e300) return ginibre_extended(n, w, lw);
    if (v.log_abs() < -708.0) return 0.0;
    return v.value();
}

ScalingParams scaling_params(const EnsembleParams& p, Regime regime)
{
    validate(p);
    ScalingParams s;
    const double n = p.n;
    s.sigma_n = std::pow(n, 1.0 / 6.0) * std::sqrt(1.0 - p.tau);
    s.regime = regime;
    const double n23 = std::pow(n, -2.0 / 3.0);
    if (regime == Regime::Interpolating) {
        s.a = n23;
        s.b = s.sigma_n * n23;
        s.c = 1.0 + p.tau;
        return s;
    }
    require(s.sigma_n > 1.0, "the Gumbel regime needs sigma_n > 1");
    const double th = 0.5 * (1.0 + p.tau);
    const double ls = std::log(s.sigma_n);
    s.a = std::sqrt(th) * s.sigma_n * n23 / std::sqrt(6.0 * ls);
    s.b = std::pow(th, -0.25) * std::pow(s.sigma_n, 2.5) * n23 / std::pow(6.0 * ls, 0.25);
    s.c = 2.0 * th + s.a * (3.0 * ls - 1.25 * std::log(6.0 * ls) - std::log(2.0 * kPi * std::pow(th, 0.75)));
    return s;
}

double tau_for_sigma(int n, double sigma)
{
    require(n >= 1, "n must be positive");
    require(sigma >= 0.0, "sigma must be non-negative");
    const double tau = 1.0 - sigma * sigma * std::pow(double(n), -1.0 / 3.0);
    require(tau >= 0.0 && tau < 1.0, "sigma too large for this n (tau would leave [0, 1))");
    return tau;
}

cplx kernel_rescaled(const EnsembleParams& p, const ScalingParams& s, Point2 z1, Point2 z2)
{
    validate(p);
    const Point2 u1{s.c + s.a * z1.xi, s.b * z1.eta};
    const Point2 u2{s.c + s.a * z2.xi, s.b * z2.eta};
    const cplx k = p.tau == 0.0 ? kernel_ginibre(p.n, u1, u2) : kernel_finite(p, u1, u2);
    return s.a * s.b * k;
}

SaddleData saddle_points(int n, double c_n, double tau)
{
    require(n >= 1, "n must be positive");
    if (!(c_n > 0.0 && c_n * c_n > 8.0 * n)) throw ContractError("degenerate saddle points: need c_n^2 > 8n");
    SaddleData d;
    d.c_n = c_n;
    const double root = std::sqrt(1.0 - 8.0 * n / (c_n * c_n));
    d.w_plus = 0.25 * c_n * (1.0 + root);
    d.w_minus = 0.5 * n / d.w_plus;  // product of the roots is n/2
    d.delta_n = tau > 0.0 ? c_n - std::sqrt(2.0 * n / tau) * (1.0 + tau) : std::numeric_limits<double>::quiet_NaN();
    return d;
}

Eigen::MatrixXcd kernel_factor(const EnsembleParams& p, const std::vector<Point2>& points, double& scale)
{
    validate(p);
    const int n = p.n;
    const Eigen::Index count = Eigen::Index(points.size());
    Eigen::MatrixXcd phi(count, n);
    if (p.tau == 0.0) {
        scale = n / kPi;
        for (Eigen::Index j = 0; j < count; ++j) {
            const cplx z = std::sqrt(double(n)) * to_complex(points[j]);
            const double r = std::abs(z);
            const double th = std::arg(z);
            const double lr = r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity();
            double la = -0.5 * std::norm(z);  // log |Phi_k| = k log r - lgamma(k+1)/2 - r^2/2
            for (int k = 0; k < n; ++k) {
                if (k > 0) la += lr - 0.5 * std::log(double(k));
                phi(j, k) = (la < -708.0 || (k > 0 && r == 0.0)) ? cplx(0.0) : std::polar(std::exp(la), k * th);
            }
        }
        return phi;
    }
    scale = std::exp(log_prefactor(p));
    const double s = argument_scale(p);
    std::vector<cplx> row(n);
    for (Eigen::Index j = 0; j < count; ++j) {
        specfun::detail::hermite_row(n, p.tau, s * to_complex(points[j]), log_point_weight(p, points[j]), row.data());
        for (int k = 0; k < n; ++k) phi(j, k) = row[k];
    }
    return phi;
}

double trace_integral(const EnsembleParams& p, int nodes_per_axis)
{
    validate(p);
    require(nodes_per_axis >= 4, "trace quadrature needs at least 4 nodes per axis");
    const double X = 1.0 + p.tau + 2.0, Y = 1.0 - p.tau + 2.0;
    const quad::Rule rx = quad::gauss_legendre(nodes_per_axis, -X, X);
    const quad::Rule ry = quad::gauss_legendre(nodes_per_axis, -Y, Y);
    std::vector<Point2> column(nodes_per_axis);
    double total = 0.0;
    for (int i = 0; i < nodes_per_axis; ++i) {
        for (int j = 0; j < nodes_per_axis; ++j) column[j] = {rx.nodes[i], ry.nodes[j]};
        double scale = 0.0;
        const Eigen::MatrixXcd phi = kernel_factor(p, column, scale);
        for (int j = 0; j < nodes_per_axis; ++j) {
            total += rx.weights[i] * ry.weights[j] * scale * phi.row(j).squaredNorm();
        }
    }
    return total;
}

KernelFn rescaled_kernel_fn(const EnsembleParams& p, const ScalingParams& s)
{
    validate(p);
    KernelFn k;
    k.name = "finite-rescaled";
    k.eval = [p, s](Point2 a, Point2 b) { return kernel_rescaled(p, s, a, b); };
    k.diag_bound = [p, s](Point2 z) { return std::abs(kernel_rescaled(p, s, z, z)); };
    k.factor = [p, s](const std::vector<Point2>& pts) {
        std::vector<Point2> mapped(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) mapped[j] = {s.c + s.a * pts[j].xi, s.b * pts[j].eta};
        double scale = 0.0;
        LowRankFactor f;
        f.left = kernel_factor(p, mapped, scale);
        f.left *= std::sqrt(s.a * s.b * scale);
        f.right = f.left.conjugate();
        return f;
    };
    return k;
}

}  // namespace edgestat::finite
