#include <doctest.h>

#include <cmath>
#include <random>

#include "edgestat/core/quadrature.hpp"
#include "edgestat/core/specfun.hpp"

using namespace edgestat;
using namespace edgestat::specfun;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("specfun")
{
    TEST_CASE("low-order Hermite closed forms")
    {
        const cplx z(0.3, -1.2);
        CHECK(rel(hermite_H(0, z), 1.0) < 1e-15);
        CHECK(rel(hermite_H(1, z), 2.0 * z) < 1e-15);
        CHECK(rel(hermite_H(2, z), 4.0 * z * z - 2.0) < 1e-14);
        CHECK(rel(hermite_H(3, z), 8.0 * z * z * z - 12.0 * z) < 1e-14);
    }

    TEST_CASE("Hermite values against high-precision references")
    {
        CHECK(rel(hermite_H(7, {1.1, -0.4}), {1063.9021184, -1331.4466304}) < 1e-13);
        CHECK(rel(hermite_h(5, {0.7, 0.3}), {0.675965472524828789866737399481, -0.277225281469740195036239071197}) <
              1e-13);
    }

    TEST_CASE("orthonormality under Gauss-Hermite quadrature")
    {
        const quad::Rule r = quad::gauss_hermite(40);
        for (int j = 0; j < 12; ++j) {
            for (int k = 0; k <= j; ++k) {
                double s = 0.0;
                for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                    s += r.weights[i] * std::real(hermite_h(j, r.nodes[i]) * hermite_h(k, r.nodes[i]));
                }
                CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }

    TEST_CASE("three-term recurrence holds at large order")
    {
        const cplx z(2.5, 0.7);
        for (int k : {40, 120}) {
            const cplx lhs = hermite_h(k + 1, z);
            const cplx rhs = std::sqrt(2.0 / (k + 1)) * z * hermite_h(k, z) - std::sqrt(double(k) / (k + 1)) * hermite_h(k - 1, z);
            CHECK(rel(lhs, rhs) < 1e-12);
        }
    }

    TEST_CASE("scaled complex arithmetic")
    {
        ScaledComplex a = ScaledComplex::from_exp({800.0, 0.3});
        ScaledComplex b = ScaledComplex::from_exp({-790.0, -0.3});
        const cplx v = (a * b).value();
        CHECK(std::abs(v - std::exp(10.0)) / std::exp(10.0) < 1e-12);
        CHECK(a.log_abs() == doctest::Approx(800.0).epsilon(1e-14));
        CHECK(ScaledComplex::from_exp({-2000.0, 0.0}).value() == cplx(0.0, 0.0));
        ScaledSum s;
        s.add(ScaledComplex::from_exp({700.0, 0.0}));
        s.add(ScaledComplex::from_exp({700.0, 0.0}));
        CHECK(s.total().log_abs() == doctest::Approx(700.0 + std::log(2.0)).epsilon(1e-14));
    }

    TEST_CASE("weighted Hermite sum: single term and weight")
    {
        const cplx z1(0.4, 0.1), z2(-0.2, 0.3);
        const cplx one = weighted_hermite_sum(1, 0.5, z1, z2).value();
        CHECK(rel(one, 1.0 / std::sqrt(kPi)) < 1e-15);
        const cplx w = weighted_hermite_sum(6, 0.5, z1, z2, -3.0).value();
        const cplx u = weighted_hermite_sum(6, 0.5, z1, z2).value();
        CHECK(rel(w, u * std::exp(-3.0)) < 1e-14);
    }

    TEST_CASE("weighted Hermite sum survives large n")
    {
        const ScaledComplex s = weighted_hermite_sum(2000, 0.5, {40.0, 3.0}, {41.0, -2.0});
        CHECK(std::isfinite(s.log_abs()));
        CHECK(s.log_abs() > 700.0);
    }

    TEST_CASE("contour identity matches the direct sum")
    {
        const cplx d = weighted_hermite_sum(10, 0.4, 0.5, {0.0, 0.5}).value();
        CHECK(rel(hermite_sum_contour(10, 0.4, 0.5, {0.0, 0.5}), d) < 1e-8);
        CHECK(rel(detail::hermite_contour_radii_weighted(10, 0.4, 0.5, {0.0, 0.5}, 0.3, 2.0, 0.0, 1e-11), d) < 1e-8);
        std::mt19937_64 g(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 10; ++i) {
            const int n = 1 + int(u(g) * 30);
            const double tau = 0.1 + 0.8 * u(g);
            const cplx z1 = std::polar(3.0 * u(g), 6.28 * u(g)), z2 = std::polar(3.0 * u(g), 6.28 * u(g));
            CAPTURE(n);
            CAPTURE(tau);
            CHECK(rel(hermite_sum_contour(n, tau, z1, z2), weighted_hermite_sum(n, tau, z1, z2).value()) < 1e-8);
        }
    }

    TEST_CASE("contour identity rejects non-admissible radii")
    {
        CHECK_THROWS_AS(hermite_sum_contour(5, 0.5, 0.1, 0.2, {1.0, 1.0, 64}, {1.5, 10.0, 200}), ContractError);
    }

    TEST_CASE("Airy function against high-precision references")
    {
        CHECK(airy_ai(-2.5) == doctest::Approx(-0.11232506769296608918746310014).epsilon(1e-12));
        CHECK(airy_ai(0.5) == doctest::Approx(0.23169360648083348976912525451).epsilon(1e-12));
        CHECK(airy_ai(3.0) == doctest::Approx(0.00659113935746071914425744840796).epsilon(1e-11));
        CHECK(airy_ai_prime(-2.5) == doctest::Approx(0.678852734264794363372140030823).epsilon(1e-12));
        CHECK(airy_ai_prime(1.0) == doctest::Approx(-0.159147441296793212787500252497).epsilon(1e-12));
    }

    TEST_CASE("Airy contour height does not change the value")
    {
        CHECK(std::abs(airy_ai(1.3, 0.5) - airy_ai(1.3, 1.5)) < 1e-13);
        CHECK(std::abs(airy_ai_prime(-1.0, 0.7) - airy_ai_prime(-1.0, 1.4)) < 1e-13);
    }

    TEST_CASE("Airy kernel")
    {
        CHECK(airy_kernel(1.0, 2.0) == doctest::Approx(0.00162464039662917702034737090508).epsilon(1e-11));
        CHECK(airy_kernel(0.5, 0.5) == doctest::Approx(0.02374378406146417723012798056).epsilon(1e-11));
        CHECK(airy_kernel(0.3, -0.7) == doctest::Approx(airy_kernel(-0.7, 0.3)).epsilon(1e-14));
        // continuity across the diagonal
        CHECK(airy_kernel(0.5, 0.5 + 1e-6) == doctest::Approx(airy_kernel(0.5, 0.5)).epsilon(1e-6));
        double ai, aip;
        airy_pair(0.8, ai, aip);
        CHECK(ai == doctest::Approx(airy_ai(0.8)).epsilon(1e-14));
        CHECK(aip == doctest::Approx(airy_ai_prime(0.8)).epsilon(1e-14));
    }
}

TEST_SUITE("quadrature")
{
    TEST_CASE("Gauss-Legendre on an interval")
    {
        const quad::Rule r = quad::gauss_legendre(40, 0.0, 10.0);
        double w = 0.0, cube = 0.0;
        for (int i = 0; i < 40; ++i) {
            w += r.weights[i];
            cube += r.weights[i] * r.nodes[i] * r.nodes[i] * r.nodes[i];
        }
        CHECK(w == doctest::Approx(10.0).epsilon(1e-14));
        CHECK(cube == doctest::Approx(2500.0).epsilon(1e-13));
        CHECK_THROWS_AS(quad::gauss_legendre(0), ContractError);
    }

    TEST_CASE("Gauss-Hermite moments")
    {
        const quad::Rule r = quad::gauss_hermite(30);
        double m0 = 0.0, m2 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double x = r.nodes[i];
            m0 += r.weights[i];
            m2 += r.weights[i] * x * x;
            m4 += r.weights[i] * x * x * x * x;
        }
        CHECK(m0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
        CHECK(m2 == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-13));
        CHECK(m4 == doctest::Approx(3 * std::sqrt(kPi) / 4).epsilon(1e-13));
    }

    TEST_CASE("contour rules")
    {
        const quad::ComplexRule c = quad::circle(0.7, 32);
        cplx s = 0.0;
        for (std::size_t i = 0; i < c.nodes.size(); ++i) s += c.weights[i] / c.nodes[i];
        CHECK(std::abs(s - cplx(0.0, 2.0 * kPi)) < 1e-13);

        // Gaussian along a shifted horizontal line
        const quad::ComplexRule h = quad::horizontal_line({0.5, 12.0, 241});
        cplx g = 0.0;
        for (std::size_t i = 0; i < h.nodes.size(); ++i) g += h.weights[i] * std::exp(-h.nodes[i] * h.nodes[i]);
        CHECK(std::abs(g - std::sqrt(kPi)) < 1e-13);

        const quad::ComplexRule v = quad::vertical_line({0.5, 12.0, 241});
        cplx e = 0.0;
        for (std::size_t i = 0; i < v.nodes.size(); ++i) e += v.weights[i] * std::exp(v.nodes[i] * v.nodes[i]);
        CHECK(std::abs(e - cplx(0.0, std::sqrt(kPi))) < 1e-13);
    }

    TEST_CASE("half-line map")
    {
        const double v = quad::halfline_integral([](double x) { return std::exp(-x); }, 1.0);
        CHECK(v == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    }
}
