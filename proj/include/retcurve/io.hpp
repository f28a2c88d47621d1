#ifndef RETCURVE_IO_HPP_
#define RETCURVE_IO_HPP_

#include <filesystem>
#include <string>

#include "retcurve/angular_dependence.hpp"
#include "retcurve/curves.hpp"
#include "retcurve/inference.hpp"
#include "retcurve/study.hpp"
#include "retcurve/types.hpp"

namespace retcurve {

/// Reads a two-column CSV with header `x,y`. Rows with missing or
/// non-numeric fields are hard errors reported with row and column.
BivariateSample read_csv_xy(const std::filesystem::path& path);

/// Writes a two-column CSV with header `x,y`, full double precision.
void write_csv_xy(const std::filesystem::path& path, const BivariateSample& sample);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

void write_curve_csv(const std::filesystem::path& path, const ReturnCurve& curve);
std::string curve_to_json(const ReturnCurve& curve);
ReturnCurve curve_from_json(const std::string& text);
void write_curve_json(const std::filesystem::path& path, const ReturnCurve& curve);
ReturnCurve read_curve_json(const std::filesystem::path& path);

/// Ray grid with the pointwise tail-rate estimates, `w,lambda` per row.
void write_adf_csv(const std::filesystem::path& path, const AdfEstimate& adf);

/// One row per angle: theta, norm quantiles/mean and the (x,y)
/// coordinates of the median/mean/lower/upper curves along that ray.
void write_summary_csv(const std::filesystem::path& path,
                       const BootstrapCurveSummary& summary);
std::string summary_to_json(const BootstrapCurveSummary& summary);
void write_summary_json(const std::filesystem::path& path,
                        const BootstrapCurveSummary& summary);

/// One row per angle: theta, corner point and the quantiles of the
/// empirical survival-region probabilities, with the nominal p.
void write_diagnostic_csv(const std::filesystem::path& path,
                          const DiagnosticReport& report);
std::string diagnostic_to_json(const DiagnosticReport& report);
void write_diagnostic_json(const std::filesystem::path& path,
                           const DiagnosticReport& report);

void write_bias_study_csv(const std::filesystem::path& path,
                          const std::vector<BiasStudyResult>& results);
void write_coverage_study_csv(const std::filesystem::path& path,
                              const std::vector<CoverageStudyResult>& results);

/// Minimal SVG polyline rendering of one or more curves (quantitative
/// output stays in CSV/JSON; this is a quick-look artifact only).
void write_curves_svg(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, std::vector<Point>>>& curves,
                      const BivariateSample* scatter = nullptr);

}  // namespace retcurve

#endif  // RETCURVE_IO_HPP_
