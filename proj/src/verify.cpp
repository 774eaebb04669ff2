#include "edgestat/core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "edgestat/core/fredholm.hpp"
#include "edgestat/core/kernels_finite.hpp"
#include "edgestat/core/kernels_limit.hpp"
#include "edgestat/core/specfun.hpp"

namespace edgestat::verify {

namespace {

CheckResult make(const std::string& name, double measured, double threshold, std::string detail = {})
{
    return {name, measured <= threshold, measured, threshold, std::move(detail)};
}

CheckResult hermite_identity(double scale)
{
    std::mt19937_64 g(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        const int n = 1 + int(u(g) * 20);
        const double tau = (1 + int(u(g) * 9)) / 10.0;
        const cplx z1 = std::polar(3.0 * std::sqrt(u(g)), 2.0 * kPi * u(g));
        const cplx z2 = std::polar(3.0 * std::sqrt(u(g)), 2.0 * kPi * u(g));
        const cplx d = specfun::weighted_hermite_sum(n, tau, z1, z2).value();
        const cplx c = specfun::hermite_sum_contour(n, tau, z1, z2);
        worst = std::max(worst, std::abs(c - d) / std::abs(d));
    }
    return make("hermite-identity", worst, 1e-8 * scale, "max relative error, 40 random cases");
}

CheckResult contour_invariance(double scale)
{
    const EnsembleParams p{12, 0.6};
    const Point2 pts[][2] = {{{1.5, 0.1}, {1.4, -0.2}}, {{1.6, 0.0}, {1.6, 0.0}}, {{1.2, 0.3}, {1.55, 0.1}}};
    double worst = 0.0;
    for (const auto& pr : pts) {
        const cplx d = finite::kernel_finite(p, pr[0], pr[1]);
        const cplx c = finite::kernel_finite_contour(p, pr[0], pr[1]);
        worst = std::max(worst, std::abs(c - d) / std::abs(d));
    }
    return make("contour-invariance", worst, 1e-7 * scale, "direct sum vs contour, n = 12");
}

CheckResult trace(double scale)
{
    double worst = 0.0;
    for (int n : {5, 10}) {
        const EnsembleParams p{n, 0.5};
        worst = std::max(worst, std::abs(finite::trace_integral(p, 200) - n) / n);
    }
    return make("trace", worst, 1e-4 * scale, "relative deviation of the trace from n");
}

CheckResult sigma0_degeneracy(double scale)
{
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const Point2 a{-4.0 + 2.0 * i, -2.0 + j};
            const Point2 b{-1.0 + 0.5 * j, 0.5 - 0.25 * i};
            worst = std::max(worst, std::abs(limit::kernel_interp(0.0, a, b) - limit::kernel_airy2d(a, b)));
        }
    }
    return make("sigma0-degeneracy", worst, 1e-6 * scale, "max |M_0 - M_A|");
}

CheckResult series_nystrom(double scale)
{
    const KernelFn k = limit::airy_kernel_fn();
    double worst_excess = 0.0;
    std::ostringstream detail;
    for (double t : {0.0, 1.0, 2.0}) {
        const fredholm::QuadGrid g = fredholm::make_halfline_grid(t, 12.0, 60);
        const auto s = fredholm::gap_series(k, g, {6, 0.0});
        const double d = std::abs(s.value - fredholm::gap_nystrom(k, g));
        worst_excess = std::max(worst_excess, d / std::max(1e-6, s.tail));
        detail << "t=" << t << " diff=" << d << " ";
    }
    return make("series-nystrom", worst_excess, scale, detail.str() + "(ratio to max(1e-6, tail))");
}

CheckResult poisson_gumbel(double scale)
{
    const KernelFn k = limit::poisson_kernel_fn(limit::PoissonVariant::P1);
    double worst = 0.0;
    for (double t : {-1.0, 0.0, 1.0, 2.0}) {
        const auto g = fredholm::make_plane_grid(t, 25.0, 40, 48, 10.0);
        const auto s = fredholm::gap_series(k, g, {40, 1e-9});
        worst = std::max(worst, std::abs(s.value - fredholm::gumbel_cdf(t)));
    }
    return make("poisson-gumbel", worst, 1e-6 * scale, "series to Hadamard tail 1e-9");
}

struct Entry {
    const char* name;
    CheckResult (*fn)(double);
};

const Entry kChecks[] = {
    {"hermite-identity", hermite_identity}, {"contour-invariance", contour_invariance},
    {"trace", trace},                       {"sigma0-degeneracy", sigma0_degeneracy},
    {"series-nystrom", series_nystrom},     {"poisson-gumbel", poisson_gumbel},
};

}  // namespace

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : kChecks) v.emplace_back(e.name);
        return v;
    }();
    return names;
}

CheckResult run_check(const std::string& name, double tol_scale)
{
    require(tol_scale > 0.0 && std::isfinite(tol_scale), "tolerance scale must be positive");
    for (const auto& e : kChecks) {
        if (name != e.name) continue;
        try {
            return e.fn(tol_scale);
        } catch (const Error& err) {
            return {name, false, 0.0, 0.0, std::string("error: ") + err.what()};
        }
    }
    throw ContractError("unknown check: " + name);
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& only, double tol_scale,
                                    const std::function<void(const CheckResult&)>& on_result)
{
    for (const auto& n : only) {
        if (std::find(check_names().begin(), check_names().end(), n) == check_names().end()) {
            throw ContractError("unknown check: " + n);
        }
    }
    std::vector<CheckResult> out;
    for (const auto& name : check_names()) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
        out.push_back(run_check(name, tol_scale));
        if (on_result) on_result(out.back());
    }
    return out;
}

}  // namespace edgestat::verify
