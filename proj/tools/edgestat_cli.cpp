#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "edgestat/edgestat.h"
#include "json.hpp"

namespace {

enum Exit { kOk = 0, kInvariant = 1, kConfig = 2, kAccuracy = 3, kDropRate = 4 };

struct Config {
    std::string command;
    std::string kind = "airy2d";
    std::string curve = "gumbel";
    std::string regime = "interp";
    std::string reference = "finite";
    std::string format = "csv";
    std::string out;
    std::vector<std::string> only;
    int n = 100;
    double tau = NAN;
    double sigma = NAN;
    double t_min = -2.0, t_max = 4.0, t_step = 0.1;
    std::size_t samples = 2000;
    std::uint64_t seed = 1;
    int grid_xi = 0, grid_eta = 0;  // 0: command default
    std::vector<double> xi_range{-1.0, 1.0};
    std::vector<double> eta_range{0.0, 0.0};
    int grid_m = 60;
    int threads = 0;
    double tol = 1.0;
    double alpha = 0.01;
};

using Meta = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int exit_for(es_status s)
{
    switch (s) {
    case ES_OK: return kOk;
    case ES_ERR_ACCURACY:
    case ES_ERR_NUMERICAL: return kAccuracy;
    case ES_ERR_DROP_RATE: return kDropRate;
    case ES_ERR_INTERNAL: return kInvariant;
    default: return kConfig;
    }
}

int report_failure(es_status s)
{
    std::cerr << "edgestat: " << es_last_error() << '\n';
    if (s == ES_ERR_ACCURACY) std::cerr << "edgestat: failing certificate " << fmt(es_last_error_bound()) << '\n';
    return exit_for(s);
}

class MetaArrays {
public:
    explicit MetaArrays(const Meta& m)
    {
        for (const auto& [k, v] : m) {
            keys_.push_back(k.c_str());
            values_.push_back(v.c_str());
        }
    }
    const char* const* keys() const { return keys_.data(); }
    const char* const* values() const { return values_.data(); }
    std::size_t size() const { return keys_.size(); }

private:
    std::vector<const char*> keys_, values_;
};

std::ostream& open_out(const Config& c, std::ofstream& file)
{
    if (c.out.empty()) return std::cout;
    file.open(c.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + c.out);
    return file;
}

void write_header(std::ostream& o, const Meta& meta)
{
    for (const auto& [k, v] : meta) o << "# " << k << ": " << v << '\n';
}

es_regime regime_of(const Config& c) { return c.regime == "gumbel" ? ES_REGIME_GUMBEL : ES_REGIME_INTERP; }

// tau from --tau, else from --sigma in the interpolating regime, else 0
es_status resolve_tau(const Config& c, double& tau)
{
    if (!std::isnan(c.tau)) {
        tau = c.tau;
        return ES_OK;
    }
    if (!std::isnan(c.sigma) && c.regime == "interp") return es_tau_for_sigma(c.n, c.sigma, &tau);
    tau = 0.0;
    return ES_OK;
}

Meta base_meta(const Config& c)
{
    return {{"tool", std::string("edgestat ") + es_version()}, {"command", c.command}};
}

int cmd_kernel_eval(const Config& c)
{
    static const std::pair<const char*, es_kernel_kind> kinds[] = {
        {"finite", ES_KERNEL_FINITE},       {"finite-contour", ES_KERNEL_FINITE_CONTOUR},
        {"ginibre", ES_KERNEL_GINIBRE},     {"interp", ES_KERNEL_INTERP},
        {"airy", ES_KERNEL_AIRY},           {"airy2d", ES_KERNEL_AIRY2D},
        {"poisson-p", ES_KERNEL_POISSON_P}, {"poisson-p1", ES_KERNEL_POISSON_P1},
        {"poisson-p2", ES_KERNEL_POISSON_P2}};
    es_kernel_kind kind = ES_KERNEL_AIRY2D;
    bool found = false;
    for (const auto& [name, k] : kinds) {
        if (c.kind == name) kind = k, found = true;
    }
    if (!found) {
        std::cerr << "edgestat: unknown kernel kind " << c.kind << '\n';
        return kConfig;
    }
    const double tau = std::isnan(c.tau) ? 0.5 : c.tau;
    const double sigma = std::isnan(c.sigma) ? 0.0 : c.sigma;
    es_kernel* k = nullptr;
    es_status s = es_kernel_create(kind, c.n, tau, sigma, &k);
    if (s != ES_OK) return report_failure(s);
    es_kernel* dual = nullptr;
    if (kind == ES_KERNEL_FINITE) {
        s = es_kernel_create(ES_KERNEL_FINITE_CONTOUR, c.n, tau, sigma, &dual);
        if (s != ES_OK) {
            es_kernel_destroy(k);
            return report_failure(s);
        }
    }

    const int gx = c.grid_xi ? c.grid_xi : 3, ge = c.grid_eta ? c.grid_eta : 1;
    std::vector<es_point> pts;
    for (int i = 0; i < gx; ++i) {
        for (int j = 0; j < ge; ++j) {
            const double xi = gx == 1 ? 0.5 * (c.xi_range[0] + c.xi_range[1])
                                      : c.xi_range[0] + (c.xi_range[1] - c.xi_range[0]) * i / (gx - 1);
            const double eta = ge == 1 ? 0.5 * (c.eta_range[0] + c.eta_range[1])
                                       : c.eta_range[0] + (c.eta_range[1] - c.eta_range[0]) * j / (ge - 1);
            pts.push_back({xi, eta});
        }
    }

    struct Row {
        es_point a, b;
        double re, im, dre, dim;
    };
    std::vector<Row> rows;
    for (const auto& a : pts) {
        for (const auto& b : pts) {
            Row r{a, b, 0, 0, 0, 0};
            s = es_kernel_eval(k, a, b, &r.re, &r.im);
            if (s == ES_OK && dual) s = es_kernel_eval(dual, a, b, &r.dre, &r.dim);
            if (s != ES_OK) break;
            rows.push_back(r);
        }
        if (s != ES_OK) break;
    }
    es_kernel_destroy(k);
    es_kernel_destroy(dual);
    if (s != ES_OK) return report_failure(s);

    Meta meta = base_meta(c);
    meta.insert(meta.end(), {{"kind", c.kind},
                             {"n", std::to_string(c.n)},
                             {"tau", fmt(tau)},
                             {"sigma", fmt(sigma)},
                             {"xi_range", fmt(c.xi_range[0]) + " " + fmt(c.xi_range[1])},
                             {"eta_range", fmt(c.eta_range[0]) + " " + fmt(c.eta_range[1])},
                             {"grid", std::to_string(gx) + "x" + std::to_string(ge)}});
    std::ofstream file;
    std::ostream& o = open_out(c, file);
    if (c.format == "json") {
        nlohmann::ordered_json j;
        for (const auto& [key, v] : meta) j["meta"][key] = v;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json e{{"xi1", r.a.xi}, {"eta1", r.a.eta}, {"xi2", r.b.xi},
                                     {"eta2", r.b.eta}, {"re", r.re},    {"im", r.im}};
            if (dual) {
                e["re_contour"] = r.dre;
                e["im_contour"] = r.dim;
            }
            j["rows"].push_back(e);
        }
        o << j.dump(1) << '\n';
        return kOk;
    }
    write_header(o, meta);
    o << "xi1,eta1,xi2,eta2,re,im" << (dual ? ",re_contour,im_contour,rel_diff" : "") << '\n';
    for (const auto& r : rows) {
        o << fmt(r.a.xi) << ',' << fmt(r.a.eta) << ',' << fmt(r.b.xi) << ',' << fmt(r.b.eta) << ',' << fmt(r.re)
          << ',' << fmt(r.im);
        if (dual) {
            const double diff = std::hypot(r.re - r.dre, r.im - r.dim) / std::hypot(r.re, r.im);
            o << ',' << fmt(r.dre) << ',' << fmt(r.dim) << ',' << fmt(diff);
        }
        o << '\n';
    }
    return kOk;
}

int cmd_curve(const Config& c)
{
    static const std::pair<const char*, es_curve_kind> kinds[] = {{"gumbel", ES_CURVE_GUMBEL},
                                                                  {"tracy-widom", ES_CURVE_TRACY_WIDOM},
                                                                  {"interp", ES_CURVE_INTERP},
                                                                  {"interp-rescaled", ES_CURVE_INTERP_RESCALED},
                                                                  {"finite", ES_CURVE_FINITE}};
    es_curve_kind kind = ES_CURVE_GUMBEL;
    bool found = false;
    for (const auto& [name, k] : kinds) {
        if (c.curve == name) kind = k, found = true;
    }
    if (!found) {
        std::cerr << "edgestat: unknown curve " << c.curve << '\n';
        return kConfig;
    }
    es_curve_config cfg;
    es_curve_config_init(&cfg, kind);
    cfg.n = c.n;
    cfg.sigma = std::isnan(c.sigma) ? 0.0 : c.sigma;
    cfg.regime = regime_of(c);
    cfg.grid_m = c.grid_m;
    if (c.grid_xi) cfg.m_xi = c.grid_xi;
    if (c.grid_eta) cfg.m_eta = c.grid_eta;
    es_status s = kind == ES_CURVE_FINITE ? resolve_tau(c, cfg.tau) : ES_OK;
    if (s != ES_OK) return report_failure(s);

    es_curve* curve = nullptr;
    s = es_curve_compute(&cfg, c.t_min, c.t_max, c.t_step, c.threads, &curve);
    if (s != ES_OK) return report_failure(s);

    Meta meta = base_meta(c);
    meta.insert(meta.end(), {{"curve", c.curve}, {"t_min", fmt(c.t_min)}, {"t_max", fmt(c.t_max)},
                             {"t_step", fmt(c.t_step)}});
    if (kind == ES_CURVE_TRACY_WIDOM) meta.emplace_back("grid_m", std::to_string(c.grid_m));
    if (kind == ES_CURVE_INTERP || kind == ES_CURVE_INTERP_RESCALED) meta.emplace_back("sigma", fmt(cfg.sigma));
    if (kind == ES_CURVE_FINITE) {
        meta.insert(meta.end(), {{"n", std::to_string(cfg.n)}, {"tau", fmt(cfg.tau)}, {"regime", c.regime}});
    }
    if (kind >= ES_CURVE_INTERP) {
        meta.emplace_back("grid", std::to_string(cfg.m_xi) + "x" + std::to_string(cfg.m_eta));
    }
    const MetaArrays arr(meta);
    s = es_curve_write(curve, c.out.empty() ? "/dev/stdout" : c.out.c_str(), c.format.c_str(), arr.keys(),
                       arr.values(), arr.size());
    es_curve_destroy(curve);
    return s == ES_OK ? kOk : report_failure(s);
}

int cmd_mc_edge(const Config& c)
{
    double tau = 0.0;
    es_status s = resolve_tau(c, tau);
    if (s != ES_OK) return report_failure(s);
    es_scaling sc;
    s = es_scaling_params(c.n, tau, regime_of(c), &sc);
    if (s != ES_OK) return report_failure(s);

    es_mc_result* mc = nullptr;
    s = es_mc_edge(c.n, tau, &sc, c.samples, c.seed, c.threads, &mc);
    if (s != ES_OK) return report_failure(s);
    for (std::size_t i = 0; i < es_mc_log_count(mc); ++i) std::cerr << "edgestat: " << es_mc_log_line(mc, i) << '\n';

    const std::size_t count = es_mc_count(mc);
    const double* sorted = es_mc_sorted(mc);
    double ks = 0.0;
    es_curve* ref = nullptr;
    if (c.reference == "limit" && c.regime == "gumbel") {
        s = es_mc_ks_gumbel(mc, &ks);
    } else {
        es_curve_config cfg;
        es_curve_config_init(&cfg, c.reference == "limit" ? ES_CURVE_INTERP : ES_CURVE_FINITE);
        cfg.n = c.n;
        cfg.tau = tau;
        cfg.sigma = sc.sigma_n;
        cfg.regime = regime_of(c);
        if (c.grid_xi) cfg.m_xi = c.grid_xi;
        if (c.grid_eta) cfg.m_eta = c.grid_eta;
        const double lo = std::floor(sorted[0] / c.t_step) * c.t_step;
        const double hi = std::ceil(sorted[count - 1] / c.t_step) * c.t_step;
        s = es_curve_compute(&cfg, lo, hi, c.t_step, c.threads, &ref);
        if (s == ES_OK) s = es_mc_ks_curve(mc, ref, &ks);
    }
    if (s != ES_OK) {
        es_mc_destroy(mc);
        es_curve_destroy(ref);
        return report_failure(s);
    }
    const double band = es_kolmogorov_band(count, c.alpha);
    const bool pass = ks <= band;

    Meta meta = base_meta(c);
    meta.insert(meta.end(), {{"n", std::to_string(c.n)},
                             {"tau", fmt(tau)},
                             {"regime", c.regime},
                             {"samples", std::to_string(c.samples)},
                             {"seed", std::to_string(c.seed)},
                             {"reference", c.reference},
                             {"alpha", fmt(c.alpha)},
                             {"t_step", fmt(c.t_step)}});
    const MetaArrays arr(meta);
    if (!c.out.empty()) {
        s = es_mc_write_edf(mc, (c.out + ".edf.csv").c_str(), arr.keys(), arr.values(), arr.size());
        if (s == ES_OK && ref) {
            s = es_curve_write(ref, (c.out + ".ref.csv").c_str(), "csv", arr.keys(), arr.values(), arr.size());
        }
    }
    const std::size_t dropped = es_mc_dropped(mc);
    es_mc_destroy(mc);
    es_curve_destroy(ref);
    if (s != ES_OK) return report_failure(s);

    std::ofstream file;
    std::ostream& o = open_out(c, file);
    if (c.format == "json") {
        nlohmann::ordered_json j;
        for (const auto& [key, v] : meta) j["meta"][key] = v;
        j["a"] = sc.a;
        j["b"] = sc.b;
        j["c"] = sc.c;
        j["sigma_n"] = sc.sigma_n;
        j["count"] = count;
        j["dropped"] = dropped;
        j["ks"] = ks;
        j["band"] = band;
        j["pass"] = pass;
        o << j.dump(1) << '\n';
    } else {
        write_header(o, meta);
        o << "a,b,c,sigma_n,count,dropped,ks,band,pass\n";
        o << fmt(sc.a) << ',' << fmt(sc.b) << ',' << fmt(sc.c) << ',' << fmt(sc.sigma_n) << ',' << count << ','
          << dropped << ',' << fmt(ks) << ',' << fmt(band) << ',' << (pass ? "pass" : "fail") << '\n';
    }
    return pass ? kOk : kInvariant;
}

int cmd_density_check(const Config& c)
{
    const double tau = std::isnan(c.tau) ? 0.5 : c.tau;
    es_density_report rep;
    const std::string dump = c.out.empty() ? std::string() : c.out + (c.format == "bin" ? ".bin" : ".spectra.csv");
    const es_status s = es_density_check(c.n, tau, c.samples, c.seed, c.threads, 4, 5, dump.c_str(), &rep);
    if (s != ES_OK) return report_failure(s);
    Meta meta = base_meta(c);
    meta.insert(meta.end(), {{"n", std::to_string(c.n)},
                             {"tau", fmt(tau)},
                             {"samples", std::to_string(c.samples)},
                             {"seed", std::to_string(c.seed)}});
    std::ofstream file;
    std::ostream& o = open_out(c, file);
    if (c.format == "json") {
        nlohmann::ordered_json j;
        for (const auto& [key, v] : meta) j["meta"][key] = v;
        j["points"] = rep.points;
        j["inside_fraction"] = rep.inside_fraction;
        j["cells"] = rep.cells;
        j["chi2"] = rep.chi2;
        j["p_value"] = rep.p_value;
        o << j.dump(1) << '\n';
    } else {
        write_header(o, meta);
        o << "points,inside_fraction,cells,chi2,p_value\n";
        o << rep.points << ',' << fmt(rep.inside_fraction) << ',' << rep.cells << ',' << fmt(rep.chi2) << ','
          << fmt(rep.p_value) << '\n';
    }
    return kOk;
}

void print_check(const char* name, int pass, double measured, double threshold, const char* detail, void* user)
{
    auto& failed = *static_cast<std::string*>(user);
    std::printf("[%s] %-20s measured %.3e threshold %.3e  %s\n", pass ? "PASS" : "FAIL", name, measured, threshold,
                detail);
    if (!pass && failed.empty()) failed = name;
}

int cmd_verify(const Config& c)
{
    if (!(c.tol > 0.0)) {
        std::cerr << "edgestat: --tol must be positive\n";
        return kConfig;
    }
    std::vector<const char*> names;
    for (const auto& s : c.only) names.push_back(s.c_str());
    std::string failed;
    int all = 0;
    const es_status s = es_verify(names.data(), names.size(), c.tol, print_check, &failed, &all);
    if (s != ES_OK) return report_failure(s);
    if (!all) {
        std::printf("first failing invariant: %s\n", failed.c_str());
        return kInvariant;
    }
    std::printf("all checks passed\n");
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    Config c;
    CLI::App app{"Edge statistics of the ellipse ensemble"};
    app.add_option("--command", c.command, "Command to run")
        ->required()
        ->check(CLI::IsMember({"kernel-eval", "curve", "mc-edge", "density-check", "verify"}));
    app.add_option("--kind", c.kind, "Kernel for kernel-eval");
    app.add_option("--curve", c.curve, "Distribution for curve");
    app.add_option("--n", c.n, "Matrix dimension")->check(CLI::PositiveNumber);
    app.add_option("--tau", c.tau, "Non-Hermiticity parameter")->check(CLI::Range(0.0, 0.999999999));
    app.add_option("--sigma", c.sigma, "Interpolation parameter")->check(CLI::NonNegativeNumber);
    app.add_option("--regime", c.regime, "Edge regime")->check(CLI::IsMember({"gumbel", "interp"}));
    app.add_option("--reference", c.reference, "mc-edge reference law")->check(CLI::IsMember({"finite", "limit"}));
    app.add_option("--t-min", c.t_min);
    app.add_option("--t-max", c.t_max);
    app.add_option("--t-step", c.t_step)->check(CLI::PositiveNumber);
    app.add_option("--samples", c.samples)->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "Master seed");
    app.add_option("--grid-xi", c.grid_xi, "Grid nodes along xi")->check(CLI::NonNegativeNumber);
    app.add_option("--grid-eta", c.grid_eta, "Grid nodes along eta")->check(CLI::NonNegativeNumber);
    app.add_option("--xi-range", c.xi_range, "kernel-eval xi extent")->expected(2);
    app.add_option("--eta-range", c.eta_range, "kernel-eval eta extent")->expected(2);
    app.add_option("--grid-m", c.grid_m, "Half-line nodes for Tracy-Widom")->check(CLI::Range(20, 100000));
    app.add_option("--out", c.out, "Output path (stdout when omitted)");
    app.add_option("--format", c.format)->check(CLI::IsMember({"csv", "json", "bin"}));
    app.add_option("--threads", c.threads, "Worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    app.add_option("--only", c.only, "Checks to run for verify")->delimiter(',');
    app.add_option("--tol", c.tol, "Scale applied to verify thresholds");
    app.add_option("--alpha", c.alpha, "KS test level")->check(CLI::Range(1e-6, 0.5));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }
    if (c.threads == 0) c.threads = int(std::max(1u, std::thread::hardware_concurrency()));
    if (c.format == "bin" && c.command != "density-check") {
        std::cerr << "edgestat: --format bin applies to density-check only\n";
        return kConfig;
    }
    try {
        if (c.command == "kernel-eval") return cmd_kernel_eval(c);
        if (c.command == "curve") return cmd_curve(c);
        if (c.command == "mc-edge") return cmd_mc_edge(c);
        if (c.command == "density-check") return cmd_density_check(c);
        return cmd_verify(c);
    } catch (const std::exception& e) {
        std::cerr << "edgestat: " << e.what() << '\n';
        return kConfig;
    }
}
