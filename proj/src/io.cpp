#include "edgestat/core/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace edgestat::io {

namespace {

constexpr char kMagic[4] = {'E', 'S', 'P', 'C'};
constexpr std::uint32_t kVersion = 1;

void write_meta(std::ostream& out, const Meta& meta)
{
    for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
}

bool parse_meta_line(const std::string& line, Meta* meta)
{
    if (line.empty() || line[0] != '#') return false;
    if (meta) {
        const std::string body = line.size() > 2 ? line.substr(2) : std::string();
        const auto colon = body.find(": ");
        if (colon == std::string::npos) meta->emplace_back(body, "");
        else meta->emplace_back(body.substr(0, colon), body.substr(colon + 2));
    }
    return true;
}

void put_le(std::ostream& out, std::uint64_t v, int bytes)
{
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = char((v >> (8 * i)) & 0xFF);
    out.write(buf, bytes);
}

std::uint64_t get_le(std::istream& in, int bytes)
{
    unsigned char buf[8] = {};
    in.read(reinterpret_cast<char*>(buf), bytes);
    if (!in) throw Error("truncated spectrum file");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t(buf[i]) << (8 * i);
    return v;
}

void put_double(std::ostream& out, double x)
{
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    put_le(out, bits, 8);
}

double get_double(std::istream& in)
{
    const std::uint64_t bits = get_le(in, 8);
    double x;
    std::memcpy(&x, &bits, sizeof x);
    return x;
}

}  // namespace

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_curve_csv(std::ostream& out, const fredholm::DistCurve& c, const Meta& meta)
{
    write_meta(out, meta);
    out << "t,F,tail_bound\n";
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        out << format_double(c.t[i]) << ',' << format_double(c.F[i]) << ',' << format_double(c.tail[i]) << '\n';
    }
}

fredholm::DistCurve read_curve_csv(std::istream& in, Meta* meta)
{
    fredholm::DistCurve c;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (parse_meta_line(line, meta)) continue;
        if (!header) {
            if (line != "t,F,tail_bound") throw Error("unexpected curve CSV header: " + line);
            header = true;
            continue;
        }
        if (line.empty()) continue;
        double v[3];
        std::istringstream row(line);
        std::string cell;
        for (double& x : v) {
            if (!std::getline(row, cell, ',')) throw Error("short curve CSV row: " + line);
            x = std::strtod(cell.c_str(), nullptr);
        }
        c.t.push_back(v[0]);
        c.F.push_back(v[1]);
        c.tail.push_back(v[2]);
    }
    if (!header) throw Error("curve CSV has no header");
    return c;
}

std::string curve_to_json(const fredholm::DistCurve& c, const Meta& meta)
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) m[k] = v;
    j["meta"] = m;
    j["t"] = c.t;
    j["F"] = c.F;
    j["tail_bound"] = c.tail;
    return j.dump(1);
}

fredholm::DistCurve curve_from_json(const std::string& text, Meta* meta)
{
    const auto j = nlohmann::ordered_json::parse(text);
    fredholm::DistCurve c;
    c.t = j.at("t").get<std::vector<double>>();
    c.F = j.at("F").get<std::vector<double>>();
    c.tail = j.at("tail_bound").get<std::vector<double>>();
    if (c.t.size() != c.F.size() || c.t.size() != c.tail.size()) throw Error("curve JSON columns differ in length");
    if (meta && j.contains("meta")) {
        for (const auto& [k, v] : j["meta"].items()) meta->emplace_back(k, v.get<std::string>());
    }
    return c;
}

void write_spectra_csv(std::ostream& out, const std::vector<ensemble::SpectrumSample>& spectra, const Meta& meta)
{
    write_meta(out, meta);
    out << "replica,j,xi,eta\n";
    for (const auto& s : spectra) {
        for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) {
            out << s.seed.replica << ',' << j << ',' << format_double(s.eigenvalues[j].xi) << ','
                << format_double(s.eigenvalues[j].eta) << '\n';
        }
    }
}

void write_spectra_binary(std::ostream& out, const std::vector<ensemble::SpectrumSample>& spectra, int n, double tau)
{
    require(n >= 1, "n must be positive");
    for (const auto& s : spectra) require(s.eigenvalues.size() == std::size_t(n), "spectrum length differs from n");
    out.write(kMagic, 4);
    put_le(out, kVersion, 4);
    put_le(out, std::uint32_t(n), 4);
    put_double(out, tau);
    put_le(out, spectra.size(), 8);
    for (const auto& s : spectra) {
        for (const Point2& z : s.eigenvalues) {
            put_double(out, z.xi);
            put_double(out, z.eta);
        }
    }
}

std::vector<ensemble::SpectrumSample> read_spectra_binary(std::istream& in, int& n, double& tau)
{
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) throw Error("not a spectrum file");
    const auto version = get_le(in, 4);
    if (version != kVersion) throw Error("unsupported spectrum file version " + std::to_string(version));
    n = int(get_le(in, 4));
    tau = get_double(in);
    const auto count = get_le(in, 8);
    std::vector<ensemble::SpectrumSample> out(count);
    for (std::uint64_t r = 0; r < count; ++r) {
        out[r].seed.replica = r;
        out[r].eigenvalues.resize(n);
        for (auto& z : out[r].eigenvalues) {
            z.xi = get_double(in);
            z.eta = get_double(in);
        }
    }
    return out;
}

void write_edf_csv(std::ostream& out, const ensemble::EdfTable& edf, const Meta& meta)
{
    write_meta(out, meta);
    out << "x,F\n";
    for (std::size_t i = 0; i < edf.count; ++i) {
        out << format_double(edf.samples[i]) << ',' << format_double(double(i + 1) / double(edf.count)) << '\n';
    }
}

}  // namespace edgestat::io
