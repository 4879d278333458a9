#include "otslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "otslab/rng.hpp"

namespace otslab {

namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write_text(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
    }
    fs::rename(tmp, path);
}

void write_field_csv(const fs::path& path, const Field& f) {
    std::ostringstream os;
    os << "x,value\n";
    for (int j = 0; j < f.grid.n; ++j)
        os << fmt17(f.grid.x(j)) << ',' << fmt17(f.samples[j]) << '\n';
    atomic_write_text(path, os.str());
}

namespace {

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

int grid_size_for_rows(std::size_t data_rows, const fs::path& path) {
    const int n = static_cast<int>(data_rows);
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument(path.string() + ": row count is not a valid grid size");
    return n;
}

} // namespace

Field read_field_csv(const fs::path& path) {
    auto rows = read_csv_rows(path);
    if (rows.empty() || rows[0].size() != 2 || rows[0][0] != "x")
        throw std::invalid_argument(path.string() + ": expected header 'x,value'");
    Grid grid(grid_size_for_rows(rows.size() - 1, path));
    Field f(grid);
    for (std::size_t i = 1; i < rows.size(); ++i) f.samples[i - 1] = std::stod(rows[i][1]);
    return f;
}

void write_spectrum_csv(const fs::path& path, const Spectrum& s) {
    std::ostringstream os;
    os << "k,re,im\n";
    const int n = s.grid.n;
    for (int k = -n / 2 + 1; k <= n / 2; ++k) {
        const auto c = s.at_mode(k);
        os << k << ',' << fmt17(c.real()) << ',' << fmt17(c.imag()) << '\n';
    }
    atomic_write_text(path, os.str());
}

Spectrum read_spectrum_csv(const fs::path& path) {
    auto rows = read_csv_rows(path);
    if (rows.empty() || rows[0].size() != 3 || rows[0][0] != "k")
        throw std::invalid_argument(path.string() + ": expected header 'k,re,im'");
    Grid grid(grid_size_for_rows(rows.size() - 1, path));
    Spectrum s(grid);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int k = std::stoi(rows[i][0]);
        s.at_mode(k) = {std::stod(rows[i][1]), std::stod(rows[i][2])};
    }
    if (s.hermitian_defect() > 1e-10)
        throw std::invalid_argument(path.string() + ": malformed spectrum "
                                    "(Hermitian symmetry violated beyond 1e-10)");
    return s;
}

void write_diagnostics_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& records) {
    std::ostringstream os;
    os << kDiagnosticsHeader << '\n';
    for (const auto& r : records) {
        os << fmt17(r.t) << ',' << fmt17(r.mass) << ',' << fmt17(r.q_mean) << ','
           << fmt17(r.u_min) << ',' << fmt17(r.u_max) << ',' << fmt17(r.l2_u) << ','
           << fmt17(r.l2_q) << ',' << fmt17(r.hs_u) << ',' << fmt17(r.entropy) << ','
           << fmt17(r.fisher) << ',' << fmt17(r.lyapunov) << ',' << fmt17(r.h3_energy) << ','
           << fmt17(r.dissipation_integral) << '\n';
    }
    atomic_write_text(path, os.str());
}

std::vector<std::vector<double>> read_csv_columns(const fs::path& path,
                                                  std::vector<std::string>& names) {
    auto rows = read_csv_rows(path);
    if (rows.empty()) throw std::invalid_argument(path.string() + ": empty CSV");
    names = rows[0];
    std::vector<std::vector<double>> cols(names.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != names.size())
            throw std::invalid_argument(path.string() + ": ragged CSV row");
        for (std::size_t c = 0; c < names.size(); ++c) cols[c].push_back(std::stod(rows[i][c]));
    }
    return cols;
}

void write_report_json(const fs::path& path, const InequalityReport& report) {
    nlohmann::ordered_json j;
    j["inequality_id"] = report.inequality_id;
    j["alpha"] = report.alpha;
    j["delta"] = report.delta;
    j["s_exp"] = report.s_exp;
    j["gamma"] = {{"label", report.gamma_label}, {"lower_c", report.gamma_lower_c}};
    j["seed"] = report.seed;
    j["sample_count"] = report.sample_count;
    j["sampler"] = {{"n", report.sampler.n},
                    {"modes", report.sampler.modes},
                    {"decay", report.sampler.decay},
                    {"floor", report.sampler.floor_value},
                    {"lattice_cutoff", report.sampler.lattice_cutoff}};
    j["max_ratio"] = report.max_ratio;
    j["violations"] = report.violations;
    j["witness"] = {{"index", report.witness.index}, {"sample_seed", report.witness.sample_seed}};
    j["ratios"] = report.ratios;
    atomic_write_text(path, j.dump(2) + "\n");
}

void write_report_ratios_csv(const fs::path& path, const InequalityReport& report) {
    std::ostringstream os;
    os << "index,sample_seed,ratio\n";
    for (std::size_t i = 0; i < report.ratios.size(); ++i) {
        const std::uint64_t s = derive_seed(report.seed, i);
        os << i << ',' << s << ',' << fmt17(report.ratios[i]) << '\n';
    }
    atomic_write_text(path, os.str());
}

void write_svg_chart(const fs::path& path, const std::string& title,
                     const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("svg chart: need equal, nonempty series");
    double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        if (std::isfinite(ys[i])) {
            ymin = std::min(ymin, ys[i]);
            ymax = std::max(ymax, ys[i]);
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double W = 720, H = 480, L = 80, R = 20, T = 40, B = 50;
    const double sx = (W - L - R) / (xmax - xmin);
    const double sy = (H - T - B) / (ymax - ymin);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "  <rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "  <text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
       << " font-size=\"16\">" << title << "</text>\n";
    // axes
    os << "  <line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
       << H - B << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << L << "\" y=\"" << H - B + 20
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << fmt17(xmin) << "</text>\n";
    os << "  <text x=\"" << W - R << "\" y=\"" << H - B + 20
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt17(xmax)
       << "</text>\n";
    os << "  <text x=\"" << L - 6 << "\" y=\"" << H - B
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt17(ymin)
       << "</text>\n";
    os << "  <text x=\"" << L - 6 << "\" y=\"" << T + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt17(ymax)
       << "</text>\n";
    // data polyline in data coordinates; the transform maps to the plot area
    os << "  <g transform=\"translate(" << L << ',' << H - B << ") scale(" << fmt17(sx) << ","
       << fmt17(-sy) << ") translate(" << fmt17(-xmin) << ',' << fmt17(-ymin) << ")\">\n";
    os << "    <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\""
       << " vector-effect=\"non-scaling-stroke\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ' ';
        os << fmt17(xs[i]) << ',' << fmt17(std::isfinite(ys[i]) ? ys[i] : ymin);
    }
    os << "\"/>\n  </g>\n</svg>\n";
    atomic_write_text(path, os.str());
}

} // namespace otslab
