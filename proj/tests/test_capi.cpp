#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "edgestat/edgestat.h"

TEST_SUITE("capi")
{
    TEST_CASE("kernel handles")
    {
        es_kernel* k = nullptr;
        REQUIRE(es_kernel_create(ES_KERNEL_FINITE, 1, 0.5, 0.0, &k) == ES_OK);
        double re = 0, im = 0;
        REQUIRE(es_kernel_eval(k, {0, 0}, {0, 0}, &re, &im) == ES_OK);
        CHECK(re == doctest::Approx(1.0 / (M_PI * std::sqrt(0.75))).epsilon(1e-14));
        CHECK(im == 0.0);
        es_kernel_destroy(k);

        REQUIRE(es_kernel_create(ES_KERNEL_AIRY2D, 0, 0, 0, &k) == ES_OK);
        double a = 0, b = 0;
        es_kernel_eval(k, {0.3, 0.1}, {-0.2, 0.4}, &a, &im);
        es_kernel_eval(k, {-0.2, 0.4}, {0.3, 0.1}, &b, &im);
        CHECK(a == b);
        es_kernel_destroy(k);
        es_kernel_destroy(nullptr);
    }

    TEST_CASE("error codes and messages")
    {
        es_kernel* k = nullptr;
        CHECK(es_kernel_create(ES_KERNEL_FINITE, 5, 0.0, 0.0, &k) == ES_ERR_CONTRACT);
        CHECK(k == nullptr);
        CHECK(std::string(es_last_error()).find("tau") != std::string::npos);
        CHECK(es_kernel_create(ES_KERNEL_FINITE, 5, 0.5, 0.0, nullptr) == ES_ERR_CONTRACT);

        es_scaling s;
        CHECK(es_scaling_params(100, 0.9, ES_REGIME_GUMBEL, &s) == ES_ERR_CONTRACT);
        REQUIRE(es_scaling_params(1000000, 0.99, ES_REGIME_INTERP, &s) == ES_OK);
        CHECK(s.sigma_n == doctest::Approx(1.0));
        CHECK(s.a == doctest::Approx(1e-4));

        es_curve* c = nullptr;
        CHECK(es_curve_read("/nonexistent/curve.csv", &c) == ES_ERR_IO);
        CHECK(c == nullptr);
    }

    TEST_CASE("errors are thread-local")
    {
        es_kernel* k = nullptr;
        CHECK(es_kernel_create(ES_KERNEL_FINITE, 0, 0.5, 0.0, &k) == ES_ERR_CONTRACT);
        const std::string mine = es_last_error();
        std::string other;
        std::thread t([&] {
            es_curve* c = nullptr;
            es_curve_read("/nonexistent/x.csv", &c);
            other = es_last_error();
        });
        t.join();
        CHECK(std::string(es_last_error()) == mine);
        CHECK(other != mine);
    }

    TEST_CASE("curves: compute, write, read, compare")
    {
        es_curve_config cfg;
        es_curve_config_init(&cfg, ES_CURVE_TRACY_WIDOM);
        es_curve* c = nullptr;
        REQUIRE(es_curve_compute(&cfg, -2.0, 2.0, 1.0, 2, &c) == ES_OK);
        REQUIRE(es_curve_size(c) == 5);
        double t, F, tail;
        REQUIRE(es_curve_get(c, 2, &t, &F, &tail) == ES_OK);
        CHECK(t == 0.0);
        CHECK(F == doctest::Approx(0.9693728283552613).epsilon(1e-12));
        CHECK(es_curve_get(c, 5, &t, &F, &tail) == ES_ERR_CONTRACT);
        int ok = 0;
        REQUIRE(es_curve_check(c, &ok) == ES_OK);
        CHECK(ok == 1);

        const char* keys[] = {"curve"};
        const char* vals[] = {"tracy-widom"};
        const std::string base = std::string("capi_curve_") + std::to_string(::getpid());
        for (const char* fmt : {"csv", "json"}) {
            const std::string path = base + "." + fmt;
            REQUIRE(es_curve_write(c, path.c_str(), fmt, keys, vals, 1) == ES_OK);
            es_curve* back = nullptr;
            REQUIRE(es_curve_read(path.c_str(), &back) == ES_OK);
            double gap = 1.0;
            REQUIRE(es_curve_sup_gap(c, back, &gap) == ES_OK);
            CHECK(gap == 0.0);
            es_curve_destroy(back);
            std::remove(path.c_str());
        }
        CHECK(es_curve_write(c, "x.bin", "bin", nullptr, nullptr, 0) == ES_ERR_CONTRACT);

        const double ts[] = {0.0, 1.0, 2.0}, Fs[] = {0.1, 0.5, 0.3}, tails[] = {0, 0, 0};
        es_curve* bad = nullptr;
        REQUIRE(es_curve_from_arrays(ts, Fs, tails, 3, &bad) == ES_OK);
        REQUIRE(es_curve_check(bad, &ok) == ES_OK);
        CHECK(ok == 0);
        double gap = 0;
        CHECK(es_curve_sup_gap(c, bad, &gap) == ES_ERR_CONTRACT);
        es_curve_destroy(bad);
        es_curve_destroy(c);
    }

    TEST_CASE("Monte Carlo handle")
    {
        es_scaling s;
        double tau = 0;
        REQUIRE(es_tau_for_sigma(30, 1.0, &tau) == ES_OK);
        REQUIRE(es_scaling_params(30, tau, ES_REGIME_INTERP, &s) == ES_OK);
        es_mc_result* r = nullptr;
        REQUIRE(es_mc_edge(30, tau, &s, 40, 5, 2, &r) == ES_OK);
        CHECK(es_mc_count(r) == 40);
        CHECK(es_mc_dropped(r) == 0);
        const double* v = es_mc_sorted(r);
        for (size_t i = 1; i < es_mc_count(r); ++i) CHECK(v[i - 1] <= v[i]);
        double d = 0;
        REQUIRE(es_mc_ks_gumbel(r, &d) == ES_OK);
        CHECK(d > 0.0);
        CHECK(d <= 1.0);
        es_mc_destroy(r);
        CHECK(es_kolmogorov_band(2000, 0.01) == doctest::Approx(0.0364).epsilon(0.01));
    }

    TEST_CASE("density check")
    {
        es_density_report rep;
        REQUIRE(es_density_check(100, 0.5, 4, 1, 2, 4, 5, nullptr, &rep) == ES_OK);
        CHECK(rep.points == 400);
        CHECK(rep.cells == 20);
        CHECK(rep.inside_fraction > 0.8);
        CHECK(es_density_check(100, 0.5, 4, 1, 2, 0, 5, nullptr, &rep) == ES_ERR_CONTRACT);
    }

    TEST_CASE("invariant checks")
    {
        REQUIRE(es_verify_check_count() == 6);
        CHECK(std::string(es_verify_check_name(0)) == "hermite-identity");
        CHECK(es_verify_check_name(99) == nullptr);
        std::vector<std::string> seen;
        const char* only[] = {"trace", "sigma0-degeneracy"};
        int all = 0;
        auto cb = [](const char* name, int, double, double, const char*, void* user) {
            static_cast<std::vector<std::string>*>(user)->push_back(name);
        };
        REQUIRE(es_verify(only, 2, 1.0, cb, &seen, &all) == ES_OK);
        CHECK(all == 1);
        CHECK(seen == std::vector<std::string>{"trace", "sigma0-degeneracy"});
        const char* unknown[] = {"nope"};
        CHECK(es_verify(unknown, 1, 1.0, nullptr, nullptr, &all) == ES_ERR_CONTRACT);
        CHECK(es_verify(nullptr, 0, 0.0, nullptr, nullptr, &all) == ES_ERR_CONTRACT);
    }
}
