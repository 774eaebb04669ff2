#pragma once

#include "edgestat/core/common.hpp"

namespace edgestat::specfun {

/// Physicists' Hermite polynomial H_k(z).
cplx hermite_H(int k, cplx z);

/// Orthonormal Hermite polynomial h_k = H_k / (pi^{1/4} sqrt(2^k k!)).
cplx hermite_h(int k, cplx z);

/// A complex number with a separate binary exponent: value = mant * 2^exp2.
struct ScaledComplex {
    cplx mant{0.0, 0.0};
    long exp2 = 0;

    /// Converted to double precision; tiny values flush to zero.
    cplx value() const;
    /// Natural log of the modulus (-inf for zero).
    double log_abs() const;
    void normalize();

    static ScaledComplex from_exp(cplx log_value);
};

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);

/// Running sum of ScaledComplex terms.
class ScaledSum {
public:
    void add(const ScaledComplex& term);
    const ScaledComplex& total() const { return sum_; }

private:
    ScaledComplex sum_;
};

/// e^{log_weight} * sum_{k<n} tau^k h_k(z1) h_k(z2), carried with a binary exponent.
ScaledComplex weighted_hermite_sum(int n, double tau, cplx z1, cplx z2, double log_weight = 0.0);

/// Contour quadrature of the Hermite sum: a circle |w1| = inner.delta against the
/// vertical line Re w2 = outer.delta truncated at |Im w2| <= outer.half_width.
/// inner.half_width is not used. Requires inner.delta < tau * outer.delta.
cplx hermite_sum_contour(int n, double tau, cplx z1, cplx z2, const ContourSpec& inner,
                         const ContourSpec& outer);

/// Contours, symmetry variant and node counts picked for a given evaluation.
struct HermiteContourPlan {
    cplx z1, z2;  // arguments after the symmetry variant is applied
    ContourSpec inner, outer;
};

HermiteContourPlan plan_hermite_contour(int n, double tau, cplx z1, cplx z2);

/// Hermite sum by the contour identity with automatically placed contours.
cplx hermite_sum_contour(int n, double tau, cplx z1, cplx z2);

namespace detail {

struct ContourOptions {
    double tol = 1e-11;           // relative accuracy target for the returned value
    double log_weight = 0.0;      // folded into the prefactor
    bool allow_extended = true;   // retry in quad precision on a poor cancellation certificate
};

cplx hermite_contour_eval(int n, double tau, cplx z1, cplx z2, const ContourSpec& inner,
                          const ContourSpec& outer, const ContourOptions& opt);

// plan with node counts sized for `digits` accurate digits relative to the integrand magnitude
HermiteContourPlan plan_hermite_contour(int n, double tau, cplx z1, cplx z2, double digits);

// auto-placed contours, result scaled by e^{log_weight}
cplx hermite_contour_auto_weighted(int n, double tau, cplx z1, cplx z2, double log_weight, double tol);

// fixed radii r1 < tau r2 with node counts sized automatically, result scaled by e^{log_weight}
cplx hermite_contour_radii_weighted(int n, double tau, cplx z1, cplx z2, double r1, double r2, double log_weight,
                                    double tol);

// out[k] = e^{log_weight} tau^{k/2} h_k(z) for k < n; values below the double range flush to 0
void hermite_row(int n, double tau, cplx z, double log_weight, cplx* out);

}  // namespace detail

/// Airy function Ai(x) from the horizontal contour t + i*delta.
double airy_ai(double x);
double airy_ai(double x, double delta);

/// Ai'(x) from the differentiated contour integral.
double airy_ai_prime(double x);
double airy_ai_prime(double x, double delta);

/// Airy kernel K_A(x1, x2).
double airy_kernel(double x1, double x2);

/// Ai and Ai' at one point sharing a single contour pass.
void airy_pair(double x, double& ai, double& aip);

/// K_A from precomputed Ai/Ai' values.
double airy_kernel_from(double x1, double ai1, double aip1, double x2, double ai2, double aip2);

}  // namespace edgestat::specfun
