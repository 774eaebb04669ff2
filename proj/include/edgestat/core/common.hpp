#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace edgestat {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// A point of the plane: xi is the horizontal (real) coordinate, eta the vertical one.
struct Point2 {
    double xi = 0.0;
    double eta = 0.0;
};

inline cplx to_complex(Point2 p) { return {p.xi, p.eta}; }

/// One ellipse ensemble: matrix dimension n and non-Hermiticity tau in [0, 1).
struct EnsembleParams {
    int n = 1;
    double tau = 0.0;
};

/// Truncated contour description.
/// For a horizontal line t + i*delta, or a vertical line delta + i*t, half_width is the
/// truncation |t| <= T and nodes the trapezoid count. For a circle, delta is the radius.
struct ContourSpec {
    double delta = 1.0;
    double half_width = 1.0;
    int nodes = 2;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violated precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Result outside the floating range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A quadrature or truncation certificate exceeded its tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double bound) : Error(what), bound_(bound) {}
    double bound() const { return bound_; }

private:
    double bound_;
};

/// Failure inside a numerical kernel (non-convergence, an asserted residual, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

inline void require(bool ok, const char* what)
{
    if (!ok) throw ContractError(what);
}

void validate(const ContourSpec& spec);
void validate(const EnsembleParams& p);

}  // namespace edgestat
