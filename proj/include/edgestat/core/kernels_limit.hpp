#pragma once

#include "edgestat/core/common.hpp"
#include "edgestat/core/kernel_fn.hpp"

namespace edgestat::limit {

struct SigmaRescale {
    double a_sigma = 1.0;
    double b_sigma = 1.0;
    double c_sigma = 0.0;
};

/// Constants of the large-sigma rescaling, sigma > 1.
SigmaRescale interp_rescale(double sigma);

/// Contour t + i delta adequate for points with |xi| <= xi_max and |eta| <= eta_max.
ContourSpec interp_contour(double sigma, double xi_max, double eta_max);

/// Interpolating kernel M_sigma by factorized double contour quadrature.
cplx kernel_interp(double sigma, Point2 z1, Point2 z2, const ContourSpec& spec);
cplx kernel_interp(double sigma, Point2 z1, Point2 z2);

/// Two-dimensional Airy-type kernel M_A.
double kernel_airy2d(Point2 z1, Point2 z2);

enum class PoissonVariant { P, P1, P2 };

/// Poisson-type kernels; Kronecker deltas use exact equality.
cplx kernel_poisson(PoissonVariant variant, Point2 z1, Point2 z2);

/// Majorant of |M_sigma(z, z)|.
double interp_diag_bound(double sigma, Point2 z);

/// Majorant of K_A(x, x).
double airy_diag_bound(double x);

/// Airy kernel on the line (eta is ignored).
KernelFn airy_kernel_fn();
KernelFn airy2d_kernel_fn();

/// M_sigma with a factorization on the given contour.
KernelFn interp_kernel_fn(double sigma, const ContourSpec& spec);

/// a_sigma b_sigma M_sigma((c_sigma + a_sigma xi, b_sigma eta), ...) on a contour adequate for the stated box.
KernelFn interp_rescaled_kernel_fn(double sigma, double xi_min, double xi_max, double eta_max);

/// Contour for the rescaled kernel covering the rescaled box.
ContourSpec interp_rescaled_contour(double sigma, double xi_min, double xi_max, double eta_max);

KernelFn poisson_kernel_fn(PoissonVariant variant);

}  // namespace edgestat::limit
