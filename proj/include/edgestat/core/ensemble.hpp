#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "edgestat/core/common.hpp"
#include "edgestat/core/fredholm.hpp"
#include "edgestat/core/kernels_finite.hpp"

namespace edgestat::ensemble {

/// Too many replicas lost to eigensolver failures.
class DropRateError : public Error {
public:
    using Error::Error;
};

enum class MatrixKind { Hermitian, General };

struct MatrixSample {
    int n = 0;
    Eigen::MatrixXcd entries;
    MatrixKind kind = MatrixKind::General;
};

struct SeedInfo {
    std::uint64_t master_seed = 0;
    std::uint64_t replica = 0;
};

struct SpectrumSample {
    std::vector<Point2> eigenvalues;
    SeedInfo seed;
};

/// Independent stream per (master seed, replica).
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t replica);
    double normal(double sd);
    const SeedInfo& seed() const { return seed_; }

private:
    SeedInfo seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

/// Density proportional to exp(-(n/2) Tr H^2).
MatrixSample sample_gue(int n, RngStream& rng);

MatrixSample sample_ellipse(const EnsembleParams& p, RngStream& rng);

/// All eigenvalues. With validate set, every pair must satisfy the backward-error contract.
SpectrumSample spectrum(const MatrixSample& m, bool validate = false);

/// Largest ||A v - lambda v|| / (n eps ||A||_F) over the eigenpairs.
double spectrum_residual(const MatrixSample& m);

double max_real_rescaled(const SpectrumSample& s, const finite::ScalingParams& sp);

/// Rescaled points with xi > -window.
std::vector<Point2> edge_point_cloud(const SpectrumSample& s, const finite::ScalingParams& sp, double window);

struct EdfTable {
    std::vector<double> samples;
    std::size_t count = 0;

    /// Fraction of samples <= t.
    double operator()(double t) const;
};

EdfTable empirical_cdf(std::vector<double> samples);

/// sup |F_hat - F| over both one-sided limits at every jump.
double ks_distance(const EdfTable& edf, const std::function<double(double)>& F);

/// Against a tabulated curve (linear interpolation); the curve must cover the sample range.
double ks_distance(const EdfTable& edf, const fredholm::DistCurve& curve);

double ks_two_sample(const EdfTable& a, const EdfTable& b);

/// Asymptotic Kolmogorov critical distance for a one-sample test of size count.
double kolmogorov_band(std::size_t count, double alpha = 0.01);

/// Asymptotic Kolmogorov p-value of a two-sample statistic.
double ks_two_sample_pvalue(double d, std::size_t n1, std::size_t n2);

struct DensityReport {
    std::size_t points = 0;
    double inside_fraction = 0.0;
    int cells = 0;
    double chi2 = 0.0;
    double p_value = 0.0;
};

/// Equal-area ring/sector partition of the limiting ellipse.
DensityReport ellipse_density_check(const std::vector<SpectrumSample>& spectra, double tau, int rings = 4,
                                    int sectors = 5);

struct McResult {
    std::vector<double> values;  // replica order, dropped replicas omitted
    std::size_t requested = 0;
    std::size_t dropped = 0;
    std::vector<std::string> log;
};

/// Spectra of count ellipse samples; replicas are distributed over threads.
std::vector<SpectrumSample> sample_spectra(const EnsembleParams& p, std::size_t count, std::uint64_t seed,
                                           int threads, std::vector<std::string>* log = nullptr);

/// Rescaled max real part over samples replicas. Throws DropRateError above 0.1% drops.
McResult run_edge_mc(const EnsembleParams& p, const finite::ScalingParams& sp, std::size_t samples,
                     std::uint64_t seed, int threads);

}  // namespace edgestat::ensemble
