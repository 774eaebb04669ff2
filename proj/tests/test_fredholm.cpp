#include <doctest.h>

#include <cmath>

#include "edgestat/core/fredholm.hpp"
#include "edgestat/core/kernels_limit.hpp"
#include "edgestat/core/specfun.hpp"

using namespace edgestat;
using namespace edgestat::fredholm;

namespace {

KernelFn constant_kernel(cplx value, bool hermitian = true)
{
    KernelFn k;
    k.name = "constant";
    k.eval = [value](Point2, Point2) { return value; };
    k.diag_bound = [value](Point2) { return std::abs(value); };
    k.hermitian = hermitian;
    return k;
}

}  // namespace

TEST_SUITE("fredholm")
{
    TEST_CASE("grid construction")
    {
        const QuadGrid h = make_halfline_grid(0.5, 12.0, 40);
        CHECK(h.nodes.size() == 40);
        CHECK(h.kind == DomainKind::HalfLine);
        double w = 0.0;
        for (double x : h.weights) w += x;
        CHECK(w == doctest::Approx(12.0).epsilon(1e-14));

        const QuadGrid p = make_plane_grid(0.0, 10.0, 30, 20, 4.0);
        CHECK(p.nodes.size() == 600);
        double s = 0.0;
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            s += p.weights[i] * std::exp(-p.nodes[i].xi - p.nodes[i].eta * p.nodes[i].eta);
        }
        CHECK(std::abs(s - (1.0 - std::exp(-10.0)) * std::sqrt(kPi) * std::erf(4.0)) < 1e-8);

        CHECK_THROWS_AS(make_plane_grid(0.0, 0.0, 30, 20, 6.0), ContractError);
        CHECK_THROWS_AS(make_interval_grid(1.0, 1.0, 10), ContractError);
    }

    TEST_CASE("tail certificate covers the omitted mass")
    {
        const auto bound = [](Point2 z) { return std::exp(-z.xi - z.eta * z.eta); };
        const QuadGrid p = make_plane_grid(0.0, 10.0, 30, 30, 3.0);
        const double omitted = std::sqrt(kPi) - (1.0 - std::exp(-10.0)) * std::sqrt(kPi) * std::erf(3.0);
        CHECK(tail_certificate(bound, p) == doctest::Approx(omitted).epsilon(1e-6));
        CHECK(tail_certificate(bound, make_interval_grid(0.0, 1.0, 8)) == 0.0);
        const QuadGrid sized = plane_grid_for(bound, 0.0, {});
        CHECK(tail_certificate(bound, sized) <= 1e-10);
    }

    TEST_CASE("series edge cases")
    {
        const KernelFn k = limit::airy_kernel_fn();
        const QuadGrid g = make_halfline_grid(0.0, 12.0, 40);
        const GapValue zero = gap_series(k, g, {0, 0.0});
        CHECK(zero.value == 1.0);
        double c = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) c += g.weights[i] * specfun::airy_kernel(g.nodes[i].xi, g.nodes[i].xi);
        c += tail_certificate(k.diag_bound, g);
        CHECK(zero.tail == doctest::Approx(std::exp(c) - 1.0).epsilon(1e-10));

        const GapValue nothing = gap_series(constant_kernel(0.0), g, {6, 0.0});
        CHECK(nothing.value == 1.0);
        CHECK(gap_nystrom(constant_kernel(0.0), g) == 1.0);
        CHECK_THROWS_AS(gap_series(k, g, {41, 0.0}), ContractError);
    }

    TEST_CASE("series and Nystrom agree")
    {
        const KernelFn k = limit::airy_kernel_fn();
        const QuadGrid g = make_halfline_grid(2.0, 12.0, 40);
        const GapValue s = gap_series(k, g, {3, 0.0});
        CHECK(std::abs(s.value - gap_nystrom(k, g)) < 1e-5);
        CHECK(std::abs(s.value - gap_nystrom(k, g)) <= s.tail + 1e-14);
    }

    TEST_CASE("far tail of the Airy determinant is one minus the trace")
    {
        const KernelFn k = limit::airy_kernel_fn();
        const QuadGrid g = make_halfline_grid(6.0, 12.0, 40);
        double trace = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) trace += g.weights[i] * specfun::airy_kernel(g.nodes[i].xi, g.nodes[i].xi);
        CHECK(std::abs(gap_nystrom(k, g) - (1.0 - trace)) < 1e-8);
    }

    TEST_CASE("Tracy-Widom values")
    {
        // independent Nystrom reference with 80 nodes
        CHECK(tracy_widom_cdf(-3.5).F == doctest::Approx(0.020967691492767927).epsilon(1e-10));
        CHECK(tracy_widom_cdf(-2.0).F == doctest::Approx(0.41322414250511447).epsilon(1e-11));
        CHECK(tracy_widom_cdf(0.0).F == doctest::Approx(0.9693728283552613).epsilon(1e-12));
        CHECK(tracy_widom_cdf(2.0).F == doctest::Approx(0.9998875536983092).epsilon(1e-12));
        CHECK(std::abs(tracy_widom_cdf(8.0).F - 1.0) < 1e-8);
        CHECK(std::abs(tracy_widom_cdf(0.0, 30).F - tracy_widom_cdf(0.0, 60).F) < 1e-7);
        CHECK(tracy_widom_cdf(0.0).tail < 1e-10);
    }

    TEST_CASE("Tracy-Widom moments")
    {
        // literature values: mean -1.7710868074, variance 0.8131947928
        const double a = -9.0, b = 7.0;
        const QuadGrid g = make_interval_grid(a, b, 160);
        double i0 = 0.0, i1 = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = g.nodes[i].xi, F = tracy_widom_cdf(t).F;
            i0 += g.weights[i] * F;
            i1 += g.weights[i] * 2.0 * t * F;
        }
        const double mean = b - i0, var = b * b - i1 - mean * mean;
        CHECK(mean == doctest::Approx(-1.7710868074).epsilon(1e-9));
        CHECK(var == doctest::Approx(0.8131947928).epsilon(1e-9));
    }

    TEST_CASE("Tracy-Widom curve is a distribution function")
    {
        const DistCurve c = tabulate([](double t) { return tracy_widom_cdf(t); }, make_t_grid(-6.0, 4.0, 0.25), 2);
        std::string why;
        CHECK_MESSAGE(check_cdf_axioms(c, &why), why);
        for (std::size_t i = 1; i < c.F.size(); ++i) CHECK(c.F[i] >= c.F[i - 1]);
    }

    TEST_CASE("Poisson kernel gives the Gumbel law")
    {
        const KernelFn k = limit::poisson_kernel_fn(limit::PoissonVariant::P1);
        for (double t : {0.0, 1.0, 2.0}) {
            const QuadGrid g = make_plane_grid(t, 25.0, 40, 48, 10.0);
            CHECK(std::abs(gap_nystrom(k, g) - gumbel_cdf(t)) < 1e-9);
            const GapValue s = gap_series(k, g, {40, 1e-9});
            CHECK(std::abs(s.value - gumbel_cdf(t)) < 1e-6);
        }
    }

    TEST_CASE("Gumbel closed form")
    {
        CHECK(gumbel_cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
        CHECK(gumbel_cdf(-std::log(std::log(2.0))) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(gumbel_cdf(40.0) == 1.0);
    }

    TEST_CASE("interpolating law at sigma = 0 is Tracy-Widom")
    {
        for (double t : {-1.0, 0.0, 1.5}) CHECK(std::abs(interp_cdf(0.0, t).F - tracy_widom_cdf(t).F) < 1e-4);
    }

    TEST_CASE("finite-n law far to the right")
    {
        const EnsembleParams p{50, 0.5};
        const auto s = finite::scaling_params(p, finite::Regime::Interpolating);
        CHECK(std::abs(finite_n_cdf(p, s, 6.0).F - 1.0) < 1e-6);
    }

    TEST_CASE("Hadamard remainder bounds the series error")
    {
        const KernelFn k = limit::airy_kernel_fn();
        for (double t : {-1.0, 0.0, 2.0}) {
            const QuadGrid g = make_halfline_grid(t, 14.0, 50);
            const double exact = gap_nystrom(k, g);
            for (int r : {2, 4, 6}) {
                const GapValue s = gap_series(k, g, {r, 0.0});
                CHECK(std::abs(s.value - exact) <= s.tail + 1e-14);
            }
        }
    }

    TEST_CASE("early stop at the requested tolerance")
    {
        const KernelFn k = limit::airy_kernel_fn();
        const QuadGrid g = make_halfline_grid(3.0, 12.0, 40);
        const GapValue s = gap_series(k, g, {40, 1e-12});
        CHECK(s.tail <= 1e-12);
        CHECK(std::abs(s.value - gap_nystrom(k, g)) < 1e-12);
    }

    TEST_CASE("tabulate is deterministic across thread counts")
    {
        const auto f = [](double t) { return interp_cdf(0.5, t, {20, 20}); };
        const auto grid = make_t_grid(-1.0, 1.0, 0.5);
        const DistCurve one = tabulate(f, grid, 1), four = tabulate(f, grid, 4);
        CHECK(one.F == four.F);
        CHECK(one.tail == four.tail);
        CHECK_THROWS_AS(tabulate([](double) -> CdfPoint { throw NumericalError("boom"); }, grid, 3), NumericalError);
    }

    TEST_CASE("axiom checker")
    {
        DistCurve c{{0, 1, 2}, {0.1, 0.5, 0.4}, {0, 0, 0}};
        std::string why;
        CHECK_FALSE(check_cdf_axioms(c, &why));
        CHECK(why.find("decreases") != std::string::npos);
        c.tail = {0.0, 0.06, 0.06};
        CHECK(check_cdf_axioms(c));
        c.F = {0.1, 0.5, 1.2};
        CHECK_FALSE(check_cdf_axioms(c));
        CHECK(sup_gap(DistCurve{{0, 1}, {0.2, 0.4}, {0, 0}}, DistCurve{{0, 1}, {0.25, 0.1}, {0, 0}}) ==
              doctest::Approx(0.3));
    }

    TEST_CASE("numerical and contract failures")
    {
        const QuadGrid g = make_interval_grid(0.0, 1.0, 4);
        CHECK_THROWS_AS(gap_nystrom(constant_kernel({0.0, 0.5}), g), NumericalError);
        CHECK_THROWS_AS(gap_nystrom(constant_kernel(0.3, false), g), ContractError);
        CHECK_THROWS_AS(gap_series(constant_kernel(0.3, false), g, {}), ContractError);
        CHECK_THROWS_AS(make_t_grid(1.0, 0.0, 0.1), ContractError);
    }

    TEST_CASE("t grid")
    {
        const auto t = make_t_grid(-2.0, 4.0, 0.1);
        CHECK(t.size() == 61);
        CHECK(t.back() == doctest::Approx(4.0));
    }
}
