#pragma once

#include <vector>

#include "edgestat/core/common.hpp"

namespace edgestat::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on the three-term recurrence.
Rule gauss_legendre(int m);

/// Gauss-Legendre rule mapped affinely onto [a, b].
Rule gauss_legendre(int m, double a, double b);

/// Gauss-Hermite rule for the weight exp(-x^2) (Golub-Welsch).
Rule gauss_hermite(int m);

/// Complex nodes and weights (du included) of a contour rule.
struct ComplexRule {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
};

/// Trapezoid rule on u = t + i*delta, |t| <= half_width.
ComplexRule horizontal_line(const ContourSpec& spec);

/// Trapezoid rule on w = delta + i*t, |t| <= half_width, weights include dw = i dt.
ComplexRule vertical_line(const ContourSpec& spec);

/// Periodic trapezoid rule on the circle |w| = radius, counter-clockwise, weights include dw.
ComplexRule circle(double radius, int nodes);

/// Integral of f over (a, inf) by Gauss-Legendre after the map x = a + s/(1-s).
template <class F>
double halfline_integral(F&& f, double a, int m = 96)
{
    const Rule r = gauss_legendre(m, 0.0, 1.0);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        const double s = r.nodes[i];
        const double x = a + s / (1.0 - s);
        sum += r.weights[i] * f(x) / ((1.0 - s) * (1.0 - s));
    }
    return sum;
}

}  // namespace edgestat::quad
