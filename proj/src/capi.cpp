#include "edgestat/edgestat.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "edgestat/core/ensemble.hpp"
#include "edgestat/core/fredholm.hpp"
#include "edgestat/core/io.hpp"
#include "edgestat/core/kernels_finite.hpp"
#include "edgestat/core/kernels_limit.hpp"
#include "edgestat/core/specfun.hpp"
#include "edgestat/core/verify.hpp"

using namespace edgestat;

struct es_kernel {
    es_kernel_kind kind;
    EnsembleParams p;
    double sigma;
};

struct es_curve {
    fredholm::DistCurve curve;
};

struct es_mc_result {
    ensemble::McResult mc;
    ensemble::EdfTable edf;
};

namespace {

thread_local std::string g_error;
thread_local double g_bound = 0.0;

es_status fail(es_status s, const std::string& what, double bound = 0.0)
{
    g_error = what;
    g_bound = bound;
    return s;
}

template <class F>
es_status guarded(F&& body, es_status generic = ES_ERR_INTERNAL)
{
    try {
        body();
        return ES_OK;
    } catch (const ContractError& e) {
        return fail(ES_ERR_CONTRACT, e.what());
    } catch (const RangeError& e) {
        return fail(ES_ERR_RANGE, e.what());
    } catch (const AccuracyError& e) {
        return fail(ES_ERR_ACCURACY, e.what(), e.bound());
    } catch (const NumericalError& e) {
        return fail(ES_ERR_NUMERICAL, e.what());
    } catch (const ensemble::DropRateError& e) {
        return fail(ES_ERR_DROP_RATE, e.what());
    } catch (const std::exception& e) {
        return fail(generic, e.what());
    } catch (...) {
        return fail(ES_ERR_INTERNAL, "unknown failure");
    }
}

io::Meta make_meta(const char* const* keys, const char* const* values, size_t count)
{
    io::Meta m;
    for (size_t i = 0; i < count; ++i) m.emplace_back(keys[i], values[i]);
    return m;
}

finite::Regime to_regime(es_regime r)
{
    return r == ES_REGIME_GUMBEL ? finite::Regime::Gumbel : finite::Regime::Interpolating;
}

bool ends_with(const std::string& s, const std::string& tail)
{
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace

extern "C" {

const char* es_last_error(void) { return g_error.c_str(); }
double es_last_error_bound(void) { return g_bound; }
const char* es_version(void) { return "1.0.0"; }

es_status es_kernel_create(es_kernel_kind kind, int n, double tau, double sigma, es_kernel** out)
{
    if (!out) return fail(ES_ERR_CONTRACT, "null output handle");
    return guarded([&] {
        switch (kind) {
        case ES_KERNEL_FINITE:
        case ES_KERNEL_FINITE_CONTOUR:
            validate(EnsembleParams{n, tau});
            require(tau > 0.0, "finite kernel needs 0 < tau < 1");
            break;
        case ES_KERNEL_GINIBRE:
            require(n >= 1, "n must be positive");
            break;
        case ES_KERNEL_INTERP:
            require(sigma >= 0.0, "sigma must be non-negative");
            break;
        case ES_KERNEL_AIRY:
        case ES_KERNEL_AIRY2D:
        case ES_KERNEL_POISSON_P:
        case ES_KERNEL_POISSON_P1:
        case ES_KERNEL_POISSON_P2:
            break;
        default:
            throw ContractError("unknown kernel kind");
        }
        *out = new es_kernel{kind, {n, tau}, sigma};
    });
}

es_status es_kernel_eval(const es_kernel* k, es_point z1, es_point z2, double* re, double* im)
{
    if (!k || !re || !im) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded([&] {
        const Point2 a{z1.xi, z1.eta}, b{z2.xi, z2.eta};
        cplx v;
        switch (k->kind) {
        case ES_KERNEL_FINITE: v = finite::kernel_finite(k->p, a, b); break;
        case ES_KERNEL_FINITE_CONTOUR: v = finite::kernel_finite_contour(k->p, a, b); break;
        case ES_KERNEL_GINIBRE: v = finite::kernel_ginibre(k->p.n, a, b); break;
        case ES_KERNEL_INTERP: v = limit::kernel_interp(k->sigma, a, b); break;
        case ES_KERNEL_AIRY: v = specfun::airy_kernel(a.xi, b.xi); break;
        case ES_KERNEL_AIRY2D: v = limit::kernel_airy2d(a, b); break;
        case ES_KERNEL_POISSON_P: v = limit::kernel_poisson(limit::PoissonVariant::P, a, b); break;
        case ES_KERNEL_POISSON_P1: v = limit::kernel_poisson(limit::PoissonVariant::P1, a, b); break;
        case ES_KERNEL_POISSON_P2: v = limit::kernel_poisson(limit::PoissonVariant::P2, a, b); break;
        }
        *re = v.real();
        *im = v.imag();
    });
}

void es_kernel_destroy(es_kernel* k) { delete k; }

es_status es_scaling_params(int n, double tau, es_regime regime, es_scaling* out)
{
    if (!out) return fail(ES_ERR_CONTRACT, "null output");
    return guarded([&] {
        const auto s = finite::scaling_params({n, tau}, to_regime(regime));
        *out = {s.a, s.b, s.c, s.sigma_n, regime};
    });
}

es_status es_tau_for_sigma(int n, double sigma, double* tau)
{
    if (!tau) return fail(ES_ERR_CONTRACT, "null output");
    return guarded([&] { *tau = finite::tau_for_sigma(n, sigma); });
}

void es_curve_config_init(es_curve_config* cfg, es_curve_kind kind)
{
    if (!cfg) return;
    *cfg = {kind, 0.0, 100, 0.5, ES_REGIME_INTERP, 60, 40, 48};
}

es_status es_curve_compute(const es_curve_config* cfg, double t_min, double t_max, double t_step, int threads,
                           es_curve** out)
{
    if (!cfg || !out) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded([&] {
        const auto grid = fredholm::make_t_grid(t_min, t_max, t_step);
        fredholm::PlaneGridSpec plane;
        if (cfg->m_xi > 0) plane.m_xi = cfg->m_xi;
        if (cfg->m_eta > 0) plane.m_eta = cfg->m_eta;
        const int grid_m = cfg->grid_m > 0 ? cfg->grid_m : 60;
        std::function<fredholm::CdfPoint(double)> f;
        switch (cfg->kind) {
        case ES_CURVE_GUMBEL:
            f = [](double t) { return fredholm::CdfPoint{fredholm::gumbel_cdf(t), 0.0}; };
            break;
        case ES_CURVE_TRACY_WIDOM:
            f = [grid_m](double t) { return fredholm::tracy_widom_cdf(t, grid_m); };
            break;
        case ES_CURVE_INTERP: {
            const double s = cfg->sigma;
            require(s >= 0.0, "sigma must be non-negative");
            f = [s, plane](double t) { return fredholm::interp_cdf(s, t, plane); };
            break;
        }
        case ES_CURVE_INTERP_RESCALED: {
            const double s = cfg->sigma;
            require(s > 1.0, "the rescaled curve needs sigma > 1");
            f = [s, plane](double t) { return fredholm::interp_rescaled_cdf(s, t, plane); };
            break;
        }
        case ES_CURVE_FINITE: {
            const EnsembleParams p{cfg->n, cfg->tau};
            validate(p);
            const auto sp = finite::scaling_params(p, to_regime(cfg->regime));
            f = [p, sp, plane](double t) { return fredholm::finite_n_cdf(p, sp, t, plane); };
            break;
        }
        default:
            throw ContractError("unknown curve kind");
        }
        *out = new es_curve{fredholm::tabulate(f, grid, threads)};
    });
}

es_status es_curve_from_arrays(const double* t, const double* F, const double* tail, size_t count, es_curve** out)
{
    if (!t || !F || !out) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded([&] {
        auto c = new es_curve;
        c->curve.t.assign(t, t + count);
        c->curve.F.assign(F, F + count);
        if (tail) c->curve.tail.assign(tail, tail + count);
        else c->curve.tail.assign(count, 0.0);
        *out = c;
    });
}

size_t es_curve_size(const es_curve* c) { return c ? c->curve.t.size() : 0; }

es_status es_curve_get(const es_curve* c, size_t i, double* t, double* F, double* tail)
{
    if (!c || i >= c->curve.t.size()) return fail(ES_ERR_CONTRACT, "curve index out of range");
    if (t) *t = c->curve.t[i];
    if (F) *F = c->curve.F[i];
    if (tail) *tail = c->curve.tail[i];
    return ES_OK;
}

es_status es_curve_write(const es_curve* c, const char* path, const char* format, const char* const* keys,
                         const char* const* values, size_t meta_count)
{
    if (!c || !path) return fail(ES_ERR_CONTRACT, "null argument");
    const std::string fmt = format ? format : "csv";
    if (fmt != "csv" && fmt != "json") return fail(ES_ERR_CONTRACT, "format must be csv or json");
    return guarded(
        [&] {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw Error(std::string("cannot open ") + path);
            const io::Meta meta = make_meta(keys, values, meta_count);
            if (fmt == "csv") io::write_curve_csv(f, c->curve, meta);
            else f << io::curve_to_json(c->curve, meta) << '\n';
            if (!f) throw Error(std::string("write failed: ") + path);
        },
        ES_ERR_IO);
}

es_status es_curve_read(const char* path, es_curve** out)
{
    if (!path || !out) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded(
        [&] {
            std::ifstream f(path, std::ios::binary);
            if (!f) throw Error(std::string("cannot open ") + path);
            auto c = new es_curve;
            try {
                if (ends_with(path, ".json")) {
                    std::stringstream ss;
                    ss << f.rdbuf();
                    c->curve = io::curve_from_json(ss.str());
                } else {
                    c->curve = io::read_curve_csv(f);
                }
            } catch (...) {
                delete c;
                throw;
            }
            *out = c;
        },
        ES_ERR_IO);
}

es_status es_curve_check(const es_curve* c, int* ok)
{
    if (!c || !ok) return fail(ES_ERR_CONTRACT, "null argument");
    std::string why;
    *ok = fredholm::check_cdf_axioms(c->curve, &why) ? 1 : 0;
    if (!*ok) g_error = why;
    return ES_OK;
}

es_status es_curve_sup_gap(const es_curve* a, const es_curve* b, double* gap)
{
    if (!a || !b || !gap) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded([&] { *gap = fredholm::sup_gap(a->curve, b->curve); });
}

void es_curve_destroy(es_curve* c) { delete c; }

es_status es_mc_edge(int n, double tau, const es_scaling* s, size_t samples, uint64_t seed, int threads,
                     es_mc_result** out)
{
    if (!s || !out) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded([&] {
        finite::ScalingParams sp;
        sp.a = s->a;
        sp.b = s->b;
        sp.c = s->c;
        sp.sigma_n = s->sigma_n;
        sp.regime = to_regime(s->regime);
        auto r = new es_mc_result;
        try {
            r->mc = ensemble::run_edge_mc({n, tau}, sp, samples, seed, threads);
            r->edf = ensemble::empirical_cdf(r->mc.values);
        } catch (...) {
            delete r;
            throw;
        }
        *out = r;
    });
}

size_t es_mc_count(const es_mc_result* r) { return r ? r->edf.count : 0; }
size_t es_mc_dropped(const es_mc_result* r) { return r ? r->mc.dropped : 0; }
const double* es_mc_sorted(const es_mc_result* r) { return r ? r->edf.samples.data() : nullptr; }
size_t es_mc_log_count(const es_mc_result* r) { return r ? r->mc.log.size() : 0; }

const char* es_mc_log_line(const es_mc_result* r, size_t i)
{
    return r && i < r->mc.log.size() ? r->mc.log[i].c_str() : nullptr;
}

es_status es_mc_ks_curve(const es_mc_result* r, const es_curve* c, double* d)
{
    if (!r || !c || !d) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded([&] { *d = ensemble::ks_distance(r->edf, c->curve); });
}

es_status es_mc_ks_gumbel(const es_mc_result* r, double* d)
{
    if (!r || !d) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded([&] { *d = ensemble::ks_distance(r->edf, fredholm::gumbel_cdf); });
}

es_status es_mc_write_edf(const es_mc_result* r, const char* path, const char* const* keys, const char* const* values,
                          size_t meta_count)
{
    if (!r || !path) return fail(ES_ERR_CONTRACT, "null argument");
    return guarded(
        [&] {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw Error(std::string("cannot open ") + path);
            io::write_edf_csv(f, r->edf, make_meta(keys, values, meta_count));
            if (!f) throw Error(std::string("write failed: ") + path);
        },
        ES_ERR_IO);
}

void es_mc_destroy(es_mc_result* r) { delete r; }

double es_kolmogorov_band(size_t count, double alpha)
{
    try {
        return ensemble::kolmogorov_band(count, alpha);
    } catch (const std::exception& e) {
        fail(ES_ERR_CONTRACT, e.what());
        return NAN;
    }
}

es_status es_density_check(int n, double tau, size_t spectra, uint64_t seed, int threads, int rings, int sectors,
                           const char* dump_path, es_density_report* out)
{
    if (!out) return fail(ES_ERR_CONTRACT, "null output");
    return guarded([&] {
        require(spectra >= 1, "at least one spectrum is required");
        const EnsembleParams p{n, tau};
        const auto samples = ensemble::sample_spectra(p, spectra, seed, threads);
        const auto rep = ensemble::ellipse_density_check(samples, tau, rings, sectors);
        *out = {rep.points, rep.inside_fraction, rep.cells, rep.chi2, rep.p_value};
        if (dump_path && *dump_path) {
            std::ofstream f(dump_path, std::ios::binary);
            if (!f) throw Error(std::string("cannot open ") + dump_path);
            if (ends_with(dump_path, ".bin")) io::write_spectra_binary(f, samples, n, tau);
            else io::write_spectra_csv(f, samples, {{"n", std::to_string(n)}, {"seed", std::to_string(seed)}});
            if (!f) throw Error(std::string("write failed: ") + dump_path);
        }
    });
}

size_t es_verify_check_count(void) { return verify::check_names().size(); }

const char* es_verify_check_name(size_t i)
{
    return i < verify::check_names().size() ? verify::check_names()[i].c_str() : nullptr;
}

es_status es_verify(const char* const* only, size_t count, double tol_scale, es_verify_callback cb, void* user,
                    int* all_pass)
{
    if (!all_pass) return fail(ES_ERR_CONTRACT, "null output");
    if (!(tol_scale > 0.0) || !std::isfinite(tol_scale)) return fail(ES_ERR_CONTRACT, "tolerance must be positive");
    return guarded([&] {
        std::vector<std::string> names;
        for (size_t i = 0; i < count; ++i) names.emplace_back(only[i]);
        bool ok = true;
        verify::run_checks(names, tol_scale, [&](const verify::CheckResult& r) {
            ok = ok && r.pass;
            if (cb) cb(r.name.c_str(), r.pass ? 1 : 0, r.measured, r.threshold, r.detail.c_str(), user);
        });
        *all_pass = ok ? 1 : 0;
    });
}

}  // extern "C"
