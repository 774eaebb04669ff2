#pragma once

#include <functional>
#include <string>
#include <vector>

#include "edgestat/core/common.hpp"
#include "edgestat/core/kernel_fn.hpp"
#include "edgestat/core/kernels_finite.hpp"

namespace edgestat::fredholm {

enum class DomainKind { HalfLine, PlaneRightHalf, Interval };

/// Quadrature nodes and positive weights on a (truncated) domain.
/// HalfLine and PlaneRightHalf are anchored at lower; upper is the truncation point.
struct QuadGrid {
    std::vector<Point2> nodes;
    std::vector<double> weights;
    DomainKind kind = DomainKind::Interval;
    double lower = 0.0;
    double upper = 0.0;
    double eta_half = 0.0;  // plane grids only
};

QuadGrid make_halfline_grid(double t, double length, int m);
QuadGrid make_interval_grid(double a, double b, int m);

/// Gauss-Legendre on (t, t + xi_len) times Gauss-Legendre on (-eta_half, eta_half).
QuadGrid make_plane_grid(double t, double xi_len, int m_xi, int m_eta, double eta_half);

/// Integral of bound over the part of the untruncated domain the grid leaves out.
double tail_certificate(const std::function<double(Point2)>& bound, const QuadGrid& grid);

struct SeriesBudget {
    int r_max = 6;
    double tol = 1e-10;
};

struct GapValue {
    double value = 1.0;
    double tail = 0.0;
};

/// Truncated correlation series with the Hadamard remainder as tail.
GapValue gap_series(const KernelFn& k, const QuadGrid& grid, const SeriesBudget& budget);

/// Nystrom determinant det(I - W^{1/2} K W^{1/2}).
double gap_nystrom(const KernelFn& k, const QuadGrid& grid);

/// A distribution value with its truncation certificate.
struct CdfPoint {
    double F = 0.0;
    double tail = 0.0;
};

double gumbel_cdf(double t);

CdfPoint tracy_widom_cdf(double t, int grid_m = 60);

/// Plane grid resolution; zero extents are chosen from the kernel's diagonal majorant.
struct PlaneGridSpec {
    int m_xi = 40;
    int m_eta = 48;
    double xi_len = 0.0;
    double eta_half = 0.0;
    double tail_tol = 1e-10;
};

/// Plane grid on (t, inf) x R with extents sized by the tail certificate of bound.
QuadGrid plane_grid_for(const std::function<double(Point2)>& bound, double t, const PlaneGridSpec& spec);

/// det(I - M_sigma) on (t, inf) x R.
CdfPoint interp_cdf(double sigma, double t, const PlaneGridSpec& spec = {});

/// F_sigma(c_sigma + a_sigma t), sigma > 1.
CdfPoint interp_rescaled_cdf(double sigma, double t, const PlaneGridSpec& spec = {});

/// Exact finite-n law of the rescaled max real part.
CdfPoint finite_n_cdf(const EnsembleParams& p, const finite::ScalingParams& s, double t, const PlaneGridSpec& spec = {});

struct DistCurve {
    std::vector<double> t;
    std::vector<double> F;
    std::vector<double> tail;
};

std::vector<double> make_t_grid(double t_min, double t_max, double step);

/// Evaluates f on every grid point with up to threads workers; output order follows t_grid.
DistCurve tabulate(const std::function<CdfPoint(double)>& f, const std::vector<double>& t_grid, int threads = 1);

/// Monotone within twice the certificate, inside [0, 1 + tail]. why receives the first violation.
bool check_cdf_axioms(const DistCurve& c, std::string* why = nullptr);

/// Largest |F_a - F_b| over a shared grid.
double sup_gap(const DistCurve& a, const DistCurve& b);

}  // namespace edgestat::fredholm
