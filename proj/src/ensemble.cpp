#include "edgestat/core/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <boost/math/special_functions/gamma.hpp>

namespace edgestat::ensemble {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t replica)
{
    std::uint64_t state = master;
    const std::uint64_t a = splitmix64(state);
    state = a ^ replica;
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        const std::uint64_t v = splitmix64(state);
        words[2 * i] = std::uint32_t(v);
        words[2 * i + 1] = std::uint32_t(v >> 32);
    }
    std::seed_seq seq(words, words + 8);
    return std::mt19937_64(seq);
}

// zgeev on a copy; info != 0 reports non-convergence
int run_zgeev(const Eigen::MatrixXcd& a, Eigen::VectorXcd& w, Eigen::MatrixXcd* vr)
{
    Eigen::MatrixXcd work = a;
    const lapack_int n = lapack_int(a.rows());
    w.resize(n);
    std::complex<double> dummy;
    if (vr) vr->resize(n, n);
    return LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', vr ? 'V' : 'N', n, work.data(), n, w.data(), &dummy, 1,
                         vr ? vr->data() : &dummy, vr ? n : 1);
}

double interpolate(const fredholm::DistCurve& c, double x)
{
    const auto it = std::upper_bound(c.t.begin(), c.t.end(), x);
    if (it == c.t.begin()) return c.F.front();
    if (it == c.t.end()) return c.F.back();
    const std::size_t j = std::size_t(it - c.t.begin());
    const double s = (x - c.t[j - 1]) / (c.t[j] - c.t[j - 1]);
    return (1.0 - s) * c.F[j - 1] + s * c.F[j];
}

double kolmogorov_q(double lambda)
{
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t replica)
    : seed_{master_seed, replica}, engine_(make_engine(master_seed, replica))
{
}

double RngStream::normal(double sd) { return sd * gauss_(engine_); }

MatrixSample sample_gue(int n, RngStream& rng)
{
    require(n >= 1, "n must be positive");
    MatrixSample m;
    m.n = n;
    m.kind = MatrixKind::Hermitian;
    m.entries.resize(n, n);
    const double sd_diag = 1.0 / std::sqrt(double(n));
    const double sd_off = 1.0 / std::sqrt(2.0 * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            const double re = rng.normal(sd_off);
            const double im = rng.normal(sd_off);
            m.entries(i, j) = {re, im};
            m.entries(j, i) = {re, -im};
        }
        m.entries(j, j) = rng.normal(sd_diag);
    }
    return m;
}

MatrixSample sample_ellipse(const EnsembleParams& p, RngStream& rng)
{
    validate(p);
    const MatrixSample h1 = sample_gue(p.n, rng);
    const MatrixSample h2 = sample_gue(p.n, rng);
    MatrixSample a;
    a.n = p.n;
    a.kind = MatrixKind::General;
    a.entries = std::sqrt(0.5 * (1.0 + p.tau)) * h1.entries + cplx(0.0, std::sqrt(0.5 * (1.0 - p.tau))) * h2.entries;
    return a;
}

SpectrumSample spectrum(const MatrixSample& m, bool validate)
{
    require(m.entries.rows() == m.entries.cols() && m.entries.rows() == m.n, "matrix sample is not n x n");
    require(m.entries.allFinite(), "matrix sample has non-finite entries");
    Eigen::VectorXcd w;
    const int info = run_zgeev(m.entries, w, nullptr);
    if (info != 0) throw NumericalError("zgeev did not converge (info " + std::to_string(info) + ")");
    if (validate) {
        const double r = spectrum_residual(m);
        if (!(r <= 10.0)) throw NumericalError("eigenpair residual above the backward-stability bound");
    }
    SpectrumSample s;
    s.eigenvalues.reserve(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) s.eigenvalues.push_back({w[i].real(), w[i].imag()});
    return s;
}

double spectrum_residual(const MatrixSample& m)
{
    Eigen::VectorXcd w;
    Eigen::MatrixXcd v;
    const int info = run_zgeev(m.entries, w, &v);
    if (info != 0) throw NumericalError("zgeev did not converge (info " + std::to_string(info) + ")");
    const double scale = m.n * std::numeric_limits<double>::epsilon() * m.entries.norm();
    if (scale == 0.0) return 0.0;
    const Eigen::MatrixXcd r = m.entries * v - v * w.asDiagonal();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < r.cols(); ++j) worst = std::max(worst, r.col(j).norm() / v.col(j).norm());
    return worst / scale;
}

double max_real_rescaled(const SpectrumSample& s, const finite::ScalingParams& sp)
{
    require(!s.eigenvalues.empty(), "empty spectrum");
    double top = -std::numeric_limits<double>::infinity();
    for (const Point2& z : s.eigenvalues) top = std::max(top, z.xi);
    return (top - sp.c) / sp.a;
}

std::vector<Point2> edge_point_cloud(const SpectrumSample& s, const finite::ScalingParams& sp, double window)
{
    require(window > 0.0, "window must be positive");
    std::vector<Point2> out;
    for (const Point2& z : s.eigenvalues) {
        const Point2 r{(z.xi - sp.c) / sp.a, z.eta / sp.b};
        if (r.xi > -window) out.push_back(r);
    }
    return out;
}

double EdfTable::operator()(double t) const
{
    return double(std::upper_bound(samples.begin(), samples.end(), t) - samples.begin()) / double(count);
}

EdfTable empirical_cdf(std::vector<double> samples)
{
    require(!samples.empty(), "empirical CDF of an empty sample");
    std::sort(samples.begin(), samples.end());
    EdfTable e;
    e.count = samples.size();
    e.samples = std::move(samples);
    return e;
}

double ks_distance(const EdfTable& edf, const std::function<double(double)>& F)
{
    const double n = double(edf.count);
    double d = 0.0;
    std::size_t i = 0;
    while (i < edf.count) {
        std::size_t j = i;
        while (j < edf.count && edf.samples[j] == edf.samples[i]) ++j;
        const double f = F(edf.samples[i]);
        d = std::max({d, std::abs(f - double(i) / n), std::abs(double(j) / n - f)});
        i = j;
    }
    return d;
}

double ks_distance(const EdfTable& edf, const fredholm::DistCurve& curve)
{
    require(!curve.t.empty(), "empty reference curve");
    require(edf.samples.front() >= curve.t.front() && edf.samples.back() <= curve.t.back(),
            "reference curve does not cover the sample range");
    return ks_distance(edf, [&](double x) { return interpolate(curve, x); });
}

double ks_two_sample(const EdfTable& a, const EdfTable& b)
{
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.count && j < b.count) {
        const double x = std::min(a.samples[i], b.samples[j]);
        while (i < a.count && a.samples[i] == x) ++i;
        while (j < b.count && b.samples[j] == x) ++j;
        d = std::max(d, std::abs(double(i) / a.count - double(j) / b.count));
    }
    return d;
}

double kolmogorov_band(std::size_t count, double alpha)
{
    require(count > 0 && alpha > 0.0 && alpha < 1.0, "invalid Kolmogorov band request");
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(double(count));
}

double ks_two_sample_pvalue(double d, std::size_t n1, std::size_t n2)
{
    const double ne = double(n1) * double(n2) / double(n1 + n2);
    const double s = std::sqrt(ne);
    return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

DensityReport ellipse_density_check(const std::vector<SpectrumSample>& spectra, double tau, int rings, int sectors)
{
    require(!spectra.empty(), "density check needs at least one spectrum");
    require(tau >= 0.0 && tau < 1.0, "tau must lie in [0, 1)");
    require(rings >= 1 && sectors >= 1 && rings * sectors >= 2, "partition needs at least two cells");
    const int cells = rings * sectors;
    std::vector<double> counts(cells, 0.0);
    std::size_t total = 0, inside = 0;
    for (const auto& s : spectra) {
        for (const Point2& z : s.eigenvalues) {
            ++total;
            const double u = z.xi / (1.0 + tau), v = z.eta / (1.0 - tau);
            const double r2 = u * u + v * v;
            if (r2 > 1.0) continue;
            ++inside;
            const int ring = std::min(rings - 1, int(r2 * rings));
            double th = std::atan2(v, u);
            if (th < 0.0) th += 2.0 * kPi;
            const int sector = std::min(sectors - 1, int(th / (2.0 * kPi) * sectors));
            counts[ring * sectors + sector] += 1.0;
        }
    }
    DensityReport rep;
    rep.points = total;
    rep.cells = cells;
    rep.inside_fraction = total ? double(inside) / double(total) : 0.0;
    const double expected = double(inside) / cells;
    if (expected > 0.0) {
        for (double c : counts) rep.chi2 += (c - expected) * (c - expected) / expected;
        rep.p_value = boost::math::gamma_q(0.5 * (cells - 1), 0.5 * rep.chi2);
    }
    return rep;
}

namespace {

// runs body(replica) for every replica, collecting per-replica failures as log lines
template <class Body>
std::vector<std::string> for_replicas(std::size_t count, int threads, Body body, std::vector<char>& ok)
{
    ok.assign(count, 0);
    std::vector<std::string> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t r = next++; r < count; r = next++) {
            try {
                body(r);
                ok[r] = 1;
            } catch (const NumericalError& e) {
                errors[r] = "replica " + std::to_string(r) + " dropped: " + e.what();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, int(count)));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<std::string> log;
    for (auto& e : errors) {
        if (!e.empty()) log.push_back(std::move(e));
    }
    return log;
}

void enforce_drop_rate(std::size_t dropped, std::size_t requested)
{
    if (double(dropped) > 1e-3 * double(requested)) {
        throw DropRateError("eigensolver drops " + std::to_string(dropped) + " of " + std::to_string(requested) +
                            " exceed 0.1%");
    }
}

}  // namespace

std::vector<SpectrumSample> sample_spectra(const EnsembleParams& p, std::size_t count, std::uint64_t seed,
                                           int threads, std::vector<std::string>* log)
{
    validate(p);
    std::vector<SpectrumSample> out(count);
    std::vector<char> ok;
    auto lines = for_replicas(
        count, threads,
        [&](std::size_t r) {
            RngStream rng(seed, r);
            out[r] = spectrum(sample_ellipse(p, rng), r % 100 == 0);
            out[r].seed = rng.seed();
        },
        ok);
    std::vector<SpectrumSample> kept;
    for (std::size_t r = 0; r < count; ++r) {
        if (ok[r]) kept.push_back(std::move(out[r]));
    }
    enforce_drop_rate(count - kept.size(), count);
    if (log) log->insert(log->end(), lines.begin(), lines.end());
    return kept;
}

McResult run_edge_mc(const EnsembleParams& p, const finite::ScalingParams& sp, std::size_t samples,
                     std::uint64_t seed, int threads)
{
    validate(p);
    require(samples >= 1, "at least one replica is required");
    std::vector<double> top(samples, 0.0);
    std::vector<char> ok;
    McResult res;
    res.requested = samples;
    res.log = for_replicas(
        samples, threads,
        [&](std::size_t r) {
            RngStream rng(seed, r);
            top[r] = max_real_rescaled(spectrum(sample_ellipse(p, rng), r % 100 == 0), sp);
        },
        ok);
    for (std::size_t r = 0; r < samples; ++r) {
        if (ok[r]) res.values.push_back(top[r]);
    }
    res.dropped = samples - res.values.size();
    enforce_drop_rate(res.dropped, samples);
    return res;
}

}  // namespace edgestat::ensemble
