// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "edgestat/core/ensemble.hpp"
#include "edgestat/core/fredholm.hpp"
#include "edgestat/core/kernels_finite.hpp"
#include "edgestat/core/kernels_limit.hpp"
#include "edgestat/core/specfun.hpp"

using namespace edgestat;

namespace {

struct Outcome {
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct Options {
    int threads = 0;
    bool full = false;
};

std::string num(double x)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", x);
    return b;
}

std::string list(const std::vector<double>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s + "]";
}

bool strictly_decreasing(const std::vector<double>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

Outcome c01(const Options&)
{
    std::mt19937_64 g(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    const int cases = 200;
    for (int i = 0; i < cases; ++i) {
        const int n = 1 + int(g() % 30);
        const double tau = (1 + int(g() % 9)) / 10.0;
        const cplx z1 = std::polar(3.0 * std::sqrt(u(g)), 2.0 * kPi * u(g));
        const cplx z2 = std::polar(3.0 * std::sqrt(u(g)), 2.0 * kPi * u(g));
        const cplx d = specfun::weighted_hermite_sum(n, tau, z1, z2).value();
        const cplx c = specfun::hermite_sum_contour(n, tau, z1, z2);
        worst = std::max(worst, std::abs(c - d) / std::abs(d));
    }
    return {worst <= 1e-8, worst, 1e-8, std::to_string(cases) + " random (n, tau, z1, z2), max relative error"};
}

Outcome c02(const Options&)
{
    std::mt19937_64 g(202);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    const int pairs = 200;
    for (int i = 0; i < pairs; ++i) {
        const int n = 2 + int(g() % 49);
        const double tau = 0.1 + 0.8 * (0.5 + 0.5 * u(g));
        const EnsembleParams p{n, tau};
        // within a few edge widths of the rightmost point 1 + tau
        const double wx = 3.0 * std::pow(double(n), -2.0 / 3.0) + 0.05, wy = 0.3 * std::sqrt(1.0 - tau) + 0.05;
        const Point2 a{1.0 + tau + wx * u(g), wy * u(g)}, b{1.0 + tau + wx * u(g), wy * u(g)};
        const cplx d = finite::kernel_finite(p, a, b);
        const cplx c = finite::kernel_finite_contour(p, a, b);
        worst = std::max(worst, std::abs(c - d) / std::abs(d));
    }
    return {worst <= 1e-7, worst, 1e-7, std::to_string(pairs) + " edge pairs with n <= 50, max relative error"};
}

Outcome c03(const Options&)
{
    double worst = 0.0;
    for (int n : {5, 20, 50}) {
        for (double tau : {0.2, 0.5, 0.8}) {
            worst = std::max(worst, std::abs(finite::trace_integral({n, tau}, 400) - n) / n);
        }
    }
    return {worst <= 1e-4, worst, 1e-4, "n in {5, 20, 50}, tau in {0.2, 0.5, 0.8}, 400^2 Gauss-Legendre"};
}

Outcome c04(const Options&)
{
    std::vector<Point2> grid;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) grid.push_back({-4.0 + i, -2.0 + 0.5 * j});
    }
    const ContourSpec spec = limit::interp_contour(0.0, 4.0, 2.0);
    double worst = 0.0;
    for (const Point2& a : grid) {
        for (const Point2& b : grid) {
            worst = std::max(worst, std::abs(limit::kernel_interp(0.0, a, b, spec) - limit::kernel_airy2d(a, b)));
        }
    }
    return {worst <= 1e-6, worst, 1e-6, "all 81^2 ordered pairs of the 9x9 grid, max |M_0 - M_A|"};
}

Outcome c05(const Options&)
{
    const KernelFn k = limit::poisson_kernel_fn(limit::PoissonVariant::P1);
    double worst = 0.0;
    std::vector<double> errs;
    for (double t : {-1.0, 0.0, 1.0, 2.0}) {
        const auto g = fredholm::make_plane_grid(t, 25.0, 40, 48, 10.0);
        const auto s = fredholm::gap_series(k, g, {10, 0.0});
        errs.push_back(std::abs(s.value - fredholm::gumbel_cdf(t)));
        worst = std::max(worst, errs.back());
    }
    return {worst <= 1e-6, worst, 1e-6, "r_max = 10, |error| at t = -1, 0, 1, 2: " + list(errs)};
}

Outcome c06(const Options&)
{
    const KernelFn k = limit::airy_kernel_fn();
    double excess = 0.0;
    std::vector<double> diffs;
    for (double t : {-1.0, 0.0, 1.0, 2.0}) {
        const auto g = fredholm::make_halfline_grid(t, std::max(12.0, 8.0 - t), 60);
        const auto s = fredholm::gap_series(k, g, {10, 0.0});
        const double d = std::abs(s.value - fredholm::gap_nystrom(k, g));
        diffs.push_back(d);
        excess = std::max(excess, d / std::max(1e-6, s.tail));
    }
    const double self = std::abs(fredholm::tracy_widom_cdf(0.0, 60).F - fredholm::tracy_widom_cdf(0.0, 120).F);
    const double measured = std::max(excess, self / 1e-7);
    return {excess <= 1.0 && self <= 1e-7, measured, 1.0,
            "series vs Nystrom " + list(diffs) + "; node doubling at t=0 " + num(self) +
                " (measured = worst ratio to its bound)"};
}

Outcome c07(const Options& o)
{
    const int n = 100;
    const EnsembleParams p{n, finite::tau_for_sigma(n, 1.0)};
    const auto sp = finite::scaling_params(p, finite::Regime::Interpolating);
    const auto mc = ensemble::run_edge_mc(p, sp, 2000, 7, o.threads);
    const auto edf = ensemble::empirical_cdf(mc.values);
    const auto grid = fredholm::make_t_grid(std::floor(edf.samples.front()), std::ceil(edf.samples.back()), 0.1);
    const auto ref = fredholm::tabulate([&](double t) { return fredholm::finite_n_cdf(p, sp, t); }, grid, o.threads);
    const double d = ensemble::ks_distance(edf, ref);
    const double band = ensemble::kolmogorov_band(edf.count, 0.01);
    return {d <= band, d, band,
            "n = 100, sigma = 1, " + std::to_string(edf.count) + " samples (" + std::to_string(mc.dropped) +
                " dropped)"};
}

Outcome c08(const Options& o)
{
    const auto grid = fredholm::make_t_grid(-4.0, 3.0, 0.5);
    const auto limit_curve = fredholm::tabulate([](double t) { return fredholm::interp_cdf(1.0, t); }, grid, o.threads);
    std::vector<double> gaps;
    for (int n : {100, 400, 1600}) {
        const EnsembleParams p{n, finite::tau_for_sigma(n, 1.0)};
        const auto sp = finite::scaling_params(p, finite::Regime::Interpolating);
        const auto c = fredholm::tabulate([&](double t) { return fredholm::finite_n_cdf(p, sp, t); }, grid, o.threads);
        gaps.push_back(fredholm::sup_gap(c, limit_curve));
    }
    const bool ok = strictly_decreasing(gaps);
    return {ok, gaps.back(), gaps[1], "sup gap over t in [-4, 3] for n = 100, 400, 1600: " + list(gaps)};
}

Outcome c09(const Options& o)
{
    const std::vector<int> ns = o.full ? std::vector<int>{50, 200, 800} : std::vector<int>{50, 200, 400};
    std::vector<double> ks;
    for (int n : ns) {
        const EnsembleParams p{n, 0.0};
        const auto sp = finite::scaling_params(p, finite::Regime::Gumbel);
        const auto mc = ensemble::run_edge_mc(p, sp, 2000, 9, o.threads);
        ks.push_back(ensemble::ks_distance(ensemble::empirical_cdf(mc.values), fredholm::gumbel_cdf));
    }
    const bool ok = strictly_decreasing(ks) && ks.back() <= 0.1;
    std::string which = "n = " + std::to_string(ns[0]) + ", " + std::to_string(ns[1]) + ", " + std::to_string(ns[2]);
    return {ok, ks.back(), 0.1, which + ", KS to Gumbel " + list(ks) + " (needs decrease and last <= 0.1)"};
}

Outcome c10(const Options& o)
{
    const auto grid = fredholm::make_t_grid(-2.0, 4.0, 0.25);
    std::vector<double> gaps;
    for (double sigma : {4.0, 6.0, 8.0}) {
        const auto c = fredholm::tabulate([&](double t) { return fredholm::interp_rescaled_cdf(sigma, t); }, grid,
                                          o.threads);
        double g = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) g = std::max(g, std::abs(c.F[i] - fredholm::gumbel_cdf(grid[i])));
        gaps.push_back(g);
    }
    return {strictly_decreasing(gaps), gaps.back(), gaps[1],
            "sup |F_sigma(c + a t) - F_G(t)| on [-2, 4] for sigma = 4, 6, 8: " + list(gaps)};
}

Outcome c11(const Options& o)
{
    const double tau = 0.5;
    const auto spectra = ensemble::sample_spectra({400, tau}, 50, 11, o.threads);
    const auto r = ensemble::ellipse_density_check(spectra, tau);
    const bool ok = r.inside_fraction >= 0.98 && r.p_value >= 1e-3;
    return {ok, r.inside_fraction, 0.98,
            "inside fraction of " + std::to_string(r.points) + " eigenvalues; chi2 " + num(r.chi2) + " on " +
                std::to_string(r.cells - 1) + " dof, p = " + num(r.p_value) + " (needs >= 0.001)"};
}

struct Criterion {
    int id;
    const char* title;
    double limit_s;
    Outcome (*run)(const Options&);
};

const Criterion kCriteria[] = {
    {1, "Hermite contour identity", 10, c01},
    {2, "dual kernel representation", 30, c02},
    {3, "trace identity", 120, c03},
    {4, "sigma = 0 degeneracy", 60, c04},
    {5, "Poisson series gives Gumbel", 60, c05},
    {6, "series/Nystrom duality for Tracy-Widom", 120, c06},
    {7, "exact finite-n edge law", 1200, c07},
    {8, "interpolating regime trend", 600, c08},
    {9, "Ginibre Gumbel trend", 3600, c09},
    {10, "large-sigma rescaled limit trend", 900, c10},
    {11, "ellipse law", 300, c11},
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"edgestat acceptance suite"};
    int only = 0;
    Options opt;
    app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
    app.add_option("--threads", opt.threads, "Worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    app.add_flag("--full", opt.full, "Use n = 800 for criterion 9");
    CLI11_PARSE(app, argc, argv);
    if (opt.threads == 0) opt.threads = int(std::max(1u, std::thread::hardware_concurrency()));

    int failed = 0;
    for (const auto& c : kCriteria) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run(opt);
        } catch (const std::exception& e) {
            out = {false, NAN, NAN, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_s;
        const bool pass = out.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("C%02d %s  %-40s measured %.4g threshold %.4g  runtime %.1fs limit %.0fs%s  %s\n", c.id,
                    pass ? "PASS" : "FAIL", c.title, out.measured, out.threshold, secs, c.limit_s,
                    in_time ? "" : " (over time)", out.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
