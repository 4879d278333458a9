#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "otslab/field.hpp"
#include "otslab/ineqlab.hpp"
#include "otslab/solver.hpp"

namespace otslab {

/// 17-significant-digit formatting used by every CSV and SVG writer.
std::string fmt17(double v);

/// Write-then-rename so partially written files are never observed.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

/// CSV `x,value`, one row per grid point.
void write_field_csv(const std::filesystem::path& path, const Field& f);
Field read_field_csv(const std::filesystem::path& path);

/// CSV `k,re,im` over modes -n/2+1 ... n/2. The reader validates Hermitian
/// symmetry to 1e-10 and throws std::invalid_argument otherwise.
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);
Spectrum read_spectrum_csv(const std::filesystem::path& path);

inline constexpr const char* kDiagnosticsHeader =
    "t,mass,q_mean,u_min,u_max,l2_u,l2_q,hs_u,entropy,fisher,lyapunov,h3_energy,"
    "dissipation_integral";

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records);
/// Columns come back in header order; monitor-only state is not serialized.
std::vector<std::vector<double>> read_csv_columns(const std::filesystem::path& path,
                                                  std::vector<std::string>& names);

void write_report_json(const std::filesystem::path& path, const InequalityReport& report);
void write_report_ratios_csv(const std::filesystem::path& path, const InequalityReport& report);

/// Minimal deterministic SVG line chart. The polyline embeds the data values
/// verbatim (formatted with fmt17) and maps them to the plot area with a
/// single transform, so the file doubles as a record of the series.
void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace otslab
