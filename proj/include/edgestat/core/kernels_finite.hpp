#pragma once

#include <vector>

#include <Eigen/Core>

#include "edgestat/core/common.hpp"
#include "edgestat/core/kernel_fn.hpp"

namespace edgestat::finite {

enum class Regime { Gumbel, Interpolating };

/// Edge-scaling constants: points are mapped as (c + a xi, b eta).
struct ScalingParams {
    double a = 1.0;
    double b = 1.0;
    double c = 0.0;
    double sigma_n = 0.0;
    Regime regime = Regime::Interpolating;
};

struct SaddleData {
    double w_minus = 0.0;
    double w_plus = 0.0;
    double c_n = 0.0;
    double delta_n = 0.0;
};

struct KernelValue {
    cplx value{0.0, 0.0};
    bool underflow = false;  // true when the modulus fell below the double range and was flushed to 0
};

/// Correlation kernel of the ellipse ensemble, 0 < tau < 1.
cplx kernel_finite(const EnsembleParams& p, Point2 z1, Point2 z2);
KernelValue kernel_finite_checked(const EnsembleParams& p, Point2 z1, Point2 z2);

/// Double contour representation with explicit contours: circle |w1| = inner.delta,
/// vertical line Re w2 = outer.delta, |Im w2| <= outer.half_width.
cplx kernel_finite_contour(const EnsembleParams& p, Point2 z1, Point2 z2, const ContourSpec& inner,
                           const ContourSpec& outer);

/// Double contour representation with radii r1 < tau r2 and node counts sized automatically.
cplx kernel_finite_contour(const EnsembleParams& p, Point2 z1, Point2 z2, double r1, double r2);

/// Double contour representation with automatically placed contours.
cplx kernel_finite_contour(const EnsembleParams& p, Point2 z1, Point2 z2);

/// Contour radii derived from the saddle points of the two exponents.
/// Returns false when the saddle placement is not admissible (points inside the bulk).
bool default_contour_radii(const EnsembleParams& p, Point2 z1, Point2 z2, double& r1, double& r2);

/// Ginibre kernel (tau = 0).
cplx kernel_ginibre(int n, Point2 z1, Point2 z2);

ScalingParams scaling_params(const EnsembleParams& p, Regime regime);

/// tau_n = 1 - sigma^2 n^{-1/3}, so that sigma_n = sigma.
double tau_for_sigma(int n, double sigma);

/// Kernel of the rescaled process, dispatching to the Ginibre kernel at tau = 0.
cplx kernel_rescaled(const EnsembleParams& p, const ScalingParams& s, Point2 z1, Point2 z2);

/// Rescaled kernel with its rank-n factorization; the diagonal majorant is the exact diagonal.
KernelFn rescaled_kernel_fn(const EnsembleParams& p, const ScalingParams& s);

/// Saddle points of n log w + w^2 - c_n w; delta_n is filled when tau lies in (0, 1).
SaddleData saddle_points(int n, double c_n, double tau = 0.0);

/// Factor Phi with K(z_i, z_j) = scale * sum_k Phi(i,k) conj(Phi(j,k)) at the given points
/// (already mapped to unscaled coordinates).
Eigen::MatrixXcd kernel_factor(const EnsembleParams& p, const std::vector<Point2>& points, double& scale);

/// Tensor Gauss-Legendre integral of the diagonal over the bounding box of the ellipse.
double trace_integral(const EnsembleParams& p, int nodes_per_axis = 400);

}  // namespace edgestat::finite
