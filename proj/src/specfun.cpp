#include "edgestat/core/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

extern "C" {
#include <quadmath.h>
}

namespace edgestat::specfun {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
const double kPiQuarter = std::pow(kPi, -0.25);

void check_finite(cplx v, const char* what)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw RangeError(what);
}

}  // namespace

cplx hermite_H(int k, cplx z)
{
    require(k >= 0, "Hermite order must be non-negative");
    if (k == 0) return 1.0;
    cplx hm = 1.0, h = 2.0 * z;
    for (int j = 1; j < k; ++j) {
        const cplx hn = 2.0 * z * h - 2.0 * double(j) * hm;
        hm = h;
        h = hn;
    }
    check_finite(h, "hermite_H overflow; use the weighted forms");
    return h;
}

cplx hermite_h(int k, cplx z)
{
    require(k >= 0, "Hermite order must be non-negative");
    cplx hm = 0.0, h = kPiQuarter;
    for (int j = 0; j < k; ++j) {
        const cplx hn = std::sqrt(2.0 / (j + 1)) * z * h - std::sqrt(double(j) / (j + 1)) * hm;
        hm = h;
        h = hn;
    }
    check_finite(h, "hermite_h overflow; use the weighted forms");
    return h;
}

// ---------------------------------------------------------------------------
// ScaledComplex

cplx ScaledComplex::value() const
{
    if (mant == 0.0) return 0.0;
    if (exp2 < -2200) return 0.0;
    if (exp2 > 1100) throw RangeError("scaled value exceeds the double range");
    const int e = int(exp2);
    cplx v(std::ldexp(mant.real(), e), std::ldexp(mant.imag(), e));
    check_finite(v, "scaled value exceeds the double range");
    return v;
}

double ScaledComplex::log_abs() const
{
    if (mant == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant)) + double(exp2) * kLn2;
}

void ScaledComplex::normalize()
{
    const double big = std::max(std::abs(mant.real()), std::abs(mant.imag()));
    if (big == 0.0) {
        mant = 0.0;
        exp2 = 0;
        return;
    }
    const int e = std::ilogb(big);
    mant = cplx(std::ldexp(mant.real(), -e), std::ldexp(mant.imag(), -e));
    exp2 += e;
}

ScaledComplex ScaledComplex::from_exp(cplx log_value)
{
    ScaledComplex s;
    if (log_value.real() == -std::numeric_limits<double>::infinity()) return s;
    const double e = std::floor(log_value.real() / kLn2);
    s.exp2 = long(e);
    s.mant = std::polar(std::exp(log_value.real() - e * kLn2), log_value.imag());
    return s;
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b)
{
    ScaledComplex r;
    r.mant = a.mant * b.mant;
    r.exp2 = a.exp2 + b.exp2;
    r.normalize();
    return r;
}

void ScaledSum::add(const ScaledComplex& term)
{
    if (term.mant == 0.0) return;
    if (sum_.mant == 0.0) {
        sum_ = term;
        return;
    }
    if (term.exp2 > sum_.exp2) {
        const long shift = sum_.exp2 - term.exp2;
        sum_.mant = shift < -2100 ? cplx(0.0)
                                  : cplx(std::ldexp(sum_.mant.real(), int(shift)),
                                         std::ldexp(sum_.mant.imag(), int(shift)));
        sum_.exp2 = term.exp2;
        sum_.mant += term.mant;
    } else {
        const long shift = term.exp2 - sum_.exp2;
        if (shift > -2100) {
            sum_.mant += cplx(std::ldexp(term.mant.real(), int(shift)),
                              std::ldexp(term.mant.imag(), int(shift)));
        }
    }
    sum_.normalize();
}

// ---------------------------------------------------------------------------
// Weighted Hermite sum

namespace {

// q_k = tau^{k/2} h_k(z) with a shared binary exponent for (q_{k-1}, q_k)
class ScaledHermite {
public:
    ScaledHermite(double tau, cplx z) : tau_(tau), z_(z), q_(kPiQuarter) {}

    ScaledComplex current() const { return {q_, exp2_}; }

    void advance()
    {
        const double k = k_;
        const cplx qn = std::sqrt(2.0 * tau_ / (k + 1.0)) * z_ * q_ - tau_ * std::sqrt(k / (k + 1.0)) * qm_;
        qm_ = q_;
        q_ = qn;
        ++k_;
        const double big = std::max(std::abs(q_), std::abs(qm_));
        if (k_ % 32 == 0 || big > 0x1p500 || (big < 0x1p-500 && big > 0.0)) renormalize();
    }

private:
    void renormalize()
    {
        const double big = std::max({std::abs(q_.real()), std::abs(q_.imag()), std::abs(qm_.real()),
                                     std::abs(qm_.imag())});
        if (big == 0.0) return;
        const int e = std::ilogb(big);
        q_ = cplx(std::ldexp(q_.real(), -e), std::ldexp(q_.imag(), -e));
        qm_ = cplx(std::ldexp(qm_.real(), -e), std::ldexp(qm_.imag(), -e));
        exp2_ += e;
    }

    double tau_;
    cplx z_;
    cplx q_, qm_{0.0};
    long exp2_ = 0;
    long k_ = 0;
};

}  // namespace

ScaledComplex weighted_hermite_sum(int n, double tau, cplx z1, cplx z2, double log_weight)
{
    require(n >= 1, "n must be positive");
    require(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
    ScaledHermite a(tau, z1), b(tau, z2);
    ScaledSum sum;
    for (int k = 0; k < n; ++k) {
        sum.add(a.current() * b.current());
        if (k + 1 < n) {
            a.advance();
            b.advance();
        }
    }
    return sum.total() * ScaledComplex::from_exp(log_weight);
}

namespace detail {

void hermite_row(int n, double tau, cplx z, double log_weight, cplx* out)
{
    require(n >= 1, "n must be positive");
    require(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
    const ScaledComplex w = ScaledComplex::from_exp(log_weight);
    ScaledHermite q(tau, z);
    for (int k = 0; k < n; ++k) {
        out[k] = (q.current() * w).value();
        if (k + 1 < n) q.advance();
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Contour identity for the Hermite sum

namespace {

using f128 = __float128;

using f80 = long double;

inline double rexp(double x) { return std::exp(x); }
inline f80 rexp(f80 x) { return std::exp(x); }
inline f128 rexp(f128 x) { return expq(x); }
inline double rcos(double x) { return std::cos(x); }
inline f80 rcos(f80 x) { return std::cos(x); }
inline f128 rcos(f128 x) { return cosq(x); }
inline double rsin(double x) { return std::sin(x); }
inline f80 rsin(f80 x) { return std::sin(x); }
inline f128 rsin(f128 x) { return sinq(x); }
inline double rlog(double x) { return std::log(x); }
inline f80 rlog(f80 x) { return std::log(x); }
inline f128 rlog(f128 x) { return logq(x); }
inline double ratan2(double y, double x) { return std::atan2(y, x); }
inline f80 ratan2(f80 y, f80 x) { return std::atan2(y, x); }
inline f128 ratan2(f128 y, f128 x) { return atan2q(y, x); }

template <class R>
R pi_of();
template <>
double pi_of<double>() { return kPi; }
template <>
f80 pi_of<f80>() { return 3.14159265358979323846264338327950288L; }
template <>
f128 pi_of<f128>() { return acosq(f128(-1)); }

template <class R>
struct Cx {
    R re, im;
};

template <class R>
inline Cx<R> operator+(Cx<R> a, Cx<R> b) { return {a.re + b.re, a.im + b.im}; }
template <class R>
inline Cx<R> operator-(Cx<R> a, Cx<R> b) { return {a.re - b.re, a.im - b.im}; }
template <class R>
inline Cx<R> operator*(Cx<R> a, Cx<R> b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
template <class R>
inline Cx<R> operator*(R s, Cx<R> a) { return {s * a.re, s * a.im}; }
template <class R>
inline Cx<R> inverse(Cx<R> a)
{
    const R d = a.re * a.re + a.im * a.im;
    return {a.re / d, -a.im / d};
}
template <class R>
inline Cx<R> cexp(Cx<R> a)
{
    const R m = rexp(a.re);
    return {m * rcos(a.im), m * rsin(a.im)};
}
template <class R>
inline double cabs(Cx<R> a)
{
    const double x = double(a.re), y = double(a.im);
    return std::hypot(x, y);
}
template <class R>
inline Cx<R> lift(cplx z) { return {R(z.real()), R(z.imag())}; }

struct ContourValue {
    ScaledComplex value;
    double log_magnitude;   // log of sum |integrand| * |weights| with the prefactor
    double line_tail_rel;   // tail of the truncated line relative to its absolute integral
};

template <class R>
ContourValue contour_kernel(int n, double tau, cplx z1d, cplx z2d, double r1d, int m1, double r2d, double Td,
                            int m2, double log_weight)
{
    const Cx<R> z1 = lift<R>(z1d), z2 = lift<R>(z2d);
    const R r1 = R(r1d), r2 = R(r2d), T = R(Td), tauR = R(tau);
    const R two = R(2);
    const R pi = pi_of<R>();

    // circle factor: dw1 * w1^{-n} e^{2 z1 w1 - w1^2}
    std::vector<Cx<R>> w1(m1), A(m1);
    std::vector<Cx<R>> expoA(m1);
    const R dth = two * pi / R(m1);
    double maxA = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m1; ++a) {
        const R th = dth * R(a);
        w1[a] = {r1 * rcos(th), r1 * rsin(th)};
        // log(dw1) = log(i * w1 * dth) = log(r1 dth) + i(th + pi/2)
        const Cx<R> logw{rlog(r1), th};
        Cx<R> e = two * (z1 * w1[a]) - w1[a] * w1[a] - R(n) * logw;
        e = e + Cx<R>{rlog(r1 * dth), th + pi / two};
        expoA[a] = e;
        maxA = std::max(maxA, double(e.re));
    }
    for (int a = 0; a < m1; ++a) {
        A[a] = cexp(Cx<R>{expoA[a].re - R(maxA), expoA[a].im});
    }

    // line factor: dw2 * w2^n e^{w2^2 - 2 z2 w2}
    std::vector<Cx<R>> w2(m2), B(m2), expoB(m2);
    const R h = two * T / R(m2 - 1);
    double maxB = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < m2; ++b) {
        const R t = -T + h * R(b);
        w2[b] = {r2, t};
        const Cx<R> logw{rlog(r2 * r2 + t * t) / two, ratan2(t, r2)};
        Cx<R> e = w2[b] * w2[b] - two * (z2 * w2[b]) + R(n) * logw;
        const R wt = (b == 0 || b == m2 - 1) ? h / two : h;
        e = e + Cx<R>{rlog(wt), pi / two};
        expoB[b] = e;
        maxB = std::max(maxB, double(e.re));
    }
    double sumAbsB = 0.0;
    for (int b = 0; b < m2; ++b) {
        B[b] = cexp(Cx<R>{expoB[b].re - R(maxB), expoB[b].im});
        sumAbsB += cabs(B[b]);
    }
    // end-point magnitudes stand in for the discarded tails
    const double endB = cabs(B[0]) + cabs(B[m2 - 1]);
    const double slope = std::max(1.0, 2.0 * Td - 2.0 * std::abs(z2d) - n * Td / (r2d * r2d + Td * Td));
    const double tailRel = endB / (double(h) * slope) / sumAbsB;

    Cx<R> total{R(0), R(0)};
    for (int a = 0; a < m1; ++a) {
        Cx<R> inner{R(0), R(0)};
        for (int b = 0; b < m2; ++b) {
            const Cx<R> d = w1[a] - tauR * w2[b];
            const R inv = R(1) / (d.re * d.re + d.im * d.im);
            inner = inner + inv * (Cx<R>{d.re, -d.im} * B[b]);
        }
        total = total + A[a] * inner;
    }

    // absolute integral for the cancellation certificate, in double precision
    std::vector<double> absB(m2);
    std::vector<cplx> w2d(m2);
    for (int b = 0; b < m2; ++b) {
        absB[b] = cabs(B[b]);
        w2d[b] = cplx(double(w2[b].re), double(w2[b].im));
    }
    double mag = 0.0;
    for (int a = 0; a < m1; ++a) {
        const cplx w1d(double(w1[a].re), double(w1[a].im));
        double innerAbs = 0.0;
        for (int b = 0; b < m2; ++b) innerAbs += absB[b] / std::abs(w1d - tau * w2d[b]);
        mag += cabs(A[a]) * innerAbs;
    }

    // prefactor tau^n e^{z2^2} / (2 pi^2)
    const cplx lp = double(n) * std::log(tau) + z2d * z2d - std::log(2.0 * kPi * kPi) + maxA + maxB + log_weight;
    ScaledComplex s;
    const double tr = double(total.re), ti = double(total.im);
    s.mant = cplx(tr, ti);
    s.normalize();
    if (!std::isfinite(tr) || !std::isfinite(ti)) throw NumericalError("non-finite contour sum");
    ContourValue out;
    out.value = s * ScaledComplex::from_exp(lp);
    out.log_magnitude = std::log(mag) + lp.real();
    out.line_tail_rel = tailRel;
    return out;
}

// crude log-magnitude of the double integral for one placement
double placement_log_magnitude(int n, double tau, cplx z1, cplx z2, double r1, double r2)
{
    constexpr int m1 = 128, m2 = 400;
    double lmaxA = -1e300;
    std::vector<double> la(m1), lb(m2);
    for (int a = 0; a < m1; ++a) {
        const double th = 2.0 * kPi * a / m1;
        const cplx w = std::polar(r1, th);
        la[a] = (2.0 * z1 * w - w * w).real() - n * std::log(r1);
        lmaxA = std::max(lmaxA, la[a]);
    }
    double sa = 0.0;
    for (double v : la) sa += std::exp(v - lmaxA);
    const double logA = lmaxA + std::log(sa / m1 * 2.0 * kPi * r1);

    const double T = 3.0 * std::sqrt(double(n)) + 10.0 + std::abs(z2.imag());
    const double h = 2.0 * T / (m2 - 1);
    double lmaxB = -1e300;
    for (int b = 0; b < m2; ++b) {
        const cplx w(r2, -T + b * h);
        lb[b] = (w * w - 2.0 * z2 * w).real() + 0.5 * n * std::log(std::norm(w));
        lmaxB = std::max(lmaxB, lb[b]);
    }
    double sb = 0.0;
    for (double v : lb) sb += std::exp(v - lmaxB);
    const double logB = lmaxB + std::log(sb * h);
    return logA + logB - std::log(tau * r2 - r1) + n * std::log(tau) + (z2 * z2).real();
}

constexpr double kSeparation = 2.0;  // tau * r2 / r1

void size_nodes(HermiteContourPlan& plan, int n, double tau, double digits)
{
    const double r1 = plan.inner.delta, r2 = plan.outer.delta;
    const double az1 = std::abs(plan.z1);
    const double sep = tau * r2 / r1;
    plan.inner.half_width = kPi;
    plan.inner.nodes = n + int(std::ceil(digits / std::log(sep))) +
                       int(std::ceil(std::exp(1.0) * (2.0 * az1 * r1 + r1 * r1))) + 16;

    // grow T until the line integrand has decayed by e^{-digits} from its peak
    auto logb = [&](double t) {
        const cplx w(r2, t);
        return (w * w - 2.0 * plan.z2 * w).real() + 0.5 * n * std::log(std::norm(w));
    };
    double peak = -1e300;
    const double T0 = 3.0 * std::sqrt(double(n)) + 10.0 + std::abs(plan.z2.imag());
    for (int i = 0; i <= 400; ++i) {
        const double t = -T0 + 2.0 * T0 * i / 400.0;
        peak = std::max(peak, logb(t));
    }
    double T = T0;
    while (std::max(logb(T), logb(-T)) > peak - digits - 5.0) T *= 1.1;
    plan.outer.half_width = T;

    const double d = r2 * (1.0 - 1.0 / sep);
    const double growth = 2.0 * std::abs(r2 - plan.z2.real()) + n / r2 + 2.0 * std::abs(plan.z2.imag()) + d;
    const double h = std::min(0.25, 2.0 * kPi * d / (digits + 5.0 + d * growth));
    plan.outer.nodes = int(std::ceil(2.0 * T / h)) + 1;
}

}  // namespace

namespace detail {

HermiteContourPlan plan_hermite_contour(int n, double tau, cplx z1, cplx z2, double digits)
{
    require(n >= 1, "n must be positive");
    require(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
    const cplx variants[4][2] = {{z1, z2}, {-z1, -z2}, {z2, z1}, {-z2, -z1}};
    const double rmax = std::max(12.0, 2.0 * (std::abs(z1) + std::abs(z2)) + std::sqrt(double(n)));
    double best = std::numeric_limits<double>::infinity();
    HermiteContourPlan plan{z1, z2, {}, {}};
    constexpr int kScan = 50;
    for (const auto& v : variants) {
        for (int i = 0; i < kScan; ++i) {
            const double r2 = 0.2 * std::pow(rmax / 0.2, double(i) / (kScan - 1));
            const double r1 = tau * r2 / kSeparation;
            const double lm = placement_log_magnitude(n, tau, v[0], v[1], r1, r2);
            if (lm < best) {
                best = lm;
                plan.z1 = v[0];
                plan.z2 = v[1];
                plan.inner.delta = r1;
                plan.outer.delta = r2;
            }
        }
    }
    size_nodes(plan, n, tau, digits);
    return plan;
}

cplx hermite_contour_eval(int n, double tau, cplx z1, cplx z2, const ContourSpec& inner, const ContourSpec& outer,
                          const ContourOptions& opt)
{
    require(n >= 1, "n must be positive");
    require(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
    require(inner.delta > 0.0 && outer.delta > 0.0, "contour radii must be positive");
    require(inner.nodes >= 2, "circle needs at least two nodes");
    validate(outer);
    require(inner.delta < tau * outer.delta, "inadmissible contours: need r1 < tau * r2");

    ContourValue cv = contour_kernel<double>(n, tau, z1, z2, inner.delta, inner.nodes, outer.delta, outer.half_width,
                                             outer.nodes, opt.log_weight);
    auto relative = [&](const ContourValue& v, double eps) {
        const double lv = v.value.log_abs();
        if (!std::isfinite(lv)) return std::numeric_limits<double>::infinity();
        return 8.0 * eps * std::exp(v.log_magnitude - lv);
    };
    double err = relative(cv, 1.1e-16);
    if (err > opt.tol && opt.allow_extended && err * 1e-3 < opt.tol) {
        cv = contour_kernel<f80>(n, tau, z1, z2, inner.delta, inner.nodes, outer.delta, outer.half_width, outer.nodes,
                                 opt.log_weight);
        err = relative(cv, 5.5e-20);
    }
    if (err > opt.tol && opt.allow_extended) {
        cv = contour_kernel<f128>(n, tau, z1, z2, inner.delta, inner.nodes, outer.delta, outer.half_width, outer.nodes,
                                  opt.log_weight);
        err = relative(cv, 2e-34);
    }
    if (err > opt.tol) throw AccuracyError("contour quadrature lost accuracy to cancellation", err);
    const double tail = cv.line_tail_rel * std::exp(cv.log_magnitude - cv.value.log_abs());
    if (tail > opt.tol) throw AccuracyError("line contour truncated too early", tail);
    return cv.value.value();
}

}  // namespace detail

HermiteContourPlan plan_hermite_contour(int n, double tau, cplx z1, cplx z2)
{
    return detail::plan_hermite_contour(n, tau, z1, z2, 38.0);
}

cplx hermite_sum_contour(int n, double tau, cplx z1, cplx z2, const ContourSpec& inner, const ContourSpec& outer)
{
    return detail::hermite_contour_eval(n, tau, z1, z2, inner, outer, {});
}

namespace {

// auto-placed evaluation: double pass, then a quad pass with node counts sized for the observed cancellation
cplx hermite_contour_auto(int n, double tau, cplx z1, cplx z2, double log_weight, double tol)
{
    HermiteContourPlan plan = detail::plan_hermite_contour(n, tau, z1, z2, 38.0);
    detail::ContourOptions opt;
    opt.tol = tol;
    opt.log_weight = log_weight;
    opt.allow_extended = false;
    try {
        return detail::hermite_contour_eval(n, tau, plan.z1, plan.z2, plan.inner, plan.outer, opt);
    } catch (const AccuracyError& e) {
        const double digits = std::min(78.0, 38.0 + std::log(std::max(1.0, e.bound() / tol)) + 6.0);
        size_nodes(plan, n, tau, digits);
        opt.allow_extended = true;
        return detail::hermite_contour_eval(n, tau, plan.z1, plan.z2, plan.inner, plan.outer, opt);
    }
}

}  // namespace

cplx hermite_sum_contour(int n, double tau, cplx z1, cplx z2)
{
    return hermite_contour_auto(n, tau, z1, z2, 0.0, 1e-11);
}

namespace detail {

cplx hermite_contour_auto_weighted(int n, double tau, cplx z1, cplx z2, double log_weight, double tol)
{
    return hermite_contour_auto(n, tau, z1, z2, log_weight, tol);
}

cplx hermite_contour_radii_weighted(int n, double tau, cplx z1, cplx z2, double r1, double r2, double log_weight,
                                    double tol)
{
    require(r1 > 0.0 && r1 < tau * r2, "inadmissible contours: need 0 < r1 < tau * r2");
    HermiteContourPlan plan{z1, z2, {r1, kPi, 2}, {r2, 1.0, 2}};
    size_nodes(plan, n, tau, 38.0);
    ContourOptions opt;
    opt.tol = tol;
    opt.log_weight = log_weight;
    opt.allow_extended = false;
    try {
        return hermite_contour_eval(n, tau, plan.z1, plan.z2, plan.inner, plan.outer, opt);
    } catch (const AccuracyError& e) {
        const double digits = std::min(78.0, 38.0 + std::log(std::max(1.0, e.bound() / tol)) + 6.0);
        size_nodes(plan, n, tau, digits);
        opt.allow_extended = true;
        return hermite_contour_eval(n, tau, plan.z1, plan.z2, plan.inner, plan.outer, opt);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Airy

namespace {

double default_airy_delta(double x)
{
    if (x >= 1.0) return std::sqrt(x);
    if (x >= -10.0) return 1.0;
    return 10.0 / -x;
}

// sum over t + i delta of e^{i u^3/3 + i u x} and of i u times it
void airy_contour(double x, double delta, double& ai, double& aip)
{
    require(std::isfinite(x), "Airy argument must be finite");
    require(delta > 0.0, "Airy contour offset must be positive");
    const double T = std::sqrt(41.45 / delta);
    const int m = std::max({240, int(std::ceil(24.0 * T)), int(std::ceil(T * (T * T + std::abs(x) + delta * delta)))});
    const double h = 2.0 * T / (m - 1);
    // peak modulus factored out: Re(i u^3/3 + i u x) at t = 0
    const double peak = delta * delta * delta / 3.0 - x * delta;
    double s0 = 0.0, s1 = 0.0;
    for (int j = 0; j < m; ++j) {
        const double t = -T + j * h;
        const cplx u(t, delta);
        const cplx e = cplx(0.0, 1.0) * (u * u * u / 3.0 + u * x) - peak;
        const cplx f = std::exp(e) * ((j == 0 || j == m - 1) ? 0.5 * h : h);
        s0 += f.real();
        s1 += (cplx(0.0, 1.0) * u * f).real();
    }
    const double scale = std::exp(peak) / (2.0 * kPi);
    ai = s0 * scale;
    aip = s1 * scale;
}

}  // namespace

double airy_ai(double x, double delta)
{
    double ai = 0.0, aip = 0.0;
    airy_contour(x, delta, ai, aip);
    return ai;
}

double airy_ai(double x) { return airy_ai(x, default_airy_delta(x)); }

double airy_ai_prime(double x, double delta)
{
    double ai = 0.0, aip = 0.0;
    airy_contour(x, delta, ai, aip);
    return aip;
}

double airy_ai_prime(double x) { return airy_ai_prime(x, default_airy_delta(x)); }

void airy_pair(double x, double& ai, double& aip) { airy_contour(x, default_airy_delta(x), ai, aip); }

double airy_kernel_from(double x1, double ai1, double aip1, double x2, double ai2, double aip2)
{
    if (x1 < x2) return airy_kernel_from(x2, ai2, aip2, x1, ai1, aip1);
    if (x1 - x2 > 1e-6) return (ai1 * aip2 - aip1 * ai2) / (x1 - x2);
    const double xm = 0.5 * (x1 + x2);
    double ai = 0.0, aip = 0.0;
    airy_pair(xm, ai, aip);
    return aip * aip - xm * ai * ai;
}

double airy_kernel(double x1, double x2)
{
    double a1 = 0.0, d1 = 0.0, a2 = 0.0, d2 = 0.0;
    if (std::abs(x1 - x2) <= 1e-6) return airy_kernel_from(x1, 0.0, 0.0, x2, 0.0, 0.0);
    airy_pair(x1, a1, d1);
    airy_pair(x2, a2, d2);
    return airy_kernel_from(x1, a1, d1, x2, a2, d2);
}

}  // namespace edgestat::specfun
