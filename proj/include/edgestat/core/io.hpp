#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "edgestat/core/ensemble.hpp"
#include "edgestat/core/fredholm.hpp"

namespace edgestat::io {

/// Ordered key/value pairs echoed as '#' header lines (CSV) or a "meta" object (JSON).
using Meta = std::vector<std::pair<std::string, std::string>>;

/// Shortest-round-trip-safe decimal form (%.17g).
std::string format_double(double x);

void write_curve_csv(std::ostream& out, const fredholm::DistCurve& c, const Meta& meta = {});
fredholm::DistCurve read_curve_csv(std::istream& in, Meta* meta = nullptr);

std::string curve_to_json(const fredholm::DistCurve& c, const Meta& meta = {});
fredholm::DistCurve curve_from_json(const std::string& text, Meta* meta = nullptr);

/// Columns replica, j, xi, eta.
void write_spectra_csv(std::ostream& out, const std::vector<ensemble::SpectrumSample>& spectra,
                       const Meta& meta = {});

/// Header: magic "ESPC", u32 version, u32 n, f64 tau, u64 count; then count * n (xi, eta) pairs.
/// Every field is little-endian.
void write_spectra_binary(std::ostream& out, const std::vector<ensemble::SpectrumSample>& spectra, int n, double tau);
std::vector<ensemble::SpectrumSample> read_spectra_binary(std::istream& in, int& n, double& tau);

/// Columns x, F at every order statistic.
void write_edf_csv(std::ostream& out, const ensemble::EdfTable& edf, const Meta& meta = {});

}  // namespace edgestat::io
