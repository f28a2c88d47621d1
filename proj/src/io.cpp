#include "retcurve/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace retcurve {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_field(const std::string& field, std::size_t row, int col) {
    const std::string t = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw data_error("CSV row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": not a number: '" + field + "'");
    }
    return value;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open for writing: " + path.string());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

BivariateSample read_csv_xy(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open input file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw data_error("empty CSV file: " + path.string());
    {
        std::string header = trim(line);
        header.erase(std::remove_if(header.begin(), header.end(),
                                    [](char c) { return c == ' ' || c == '\t'; }),
                     header.end());
        if (header != "x,y") {
            throw data_error("expected CSV header 'x,y', got '" + trim(line) + "'");
        }
    }
    BivariateSample sample;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos ||
            line.find(',', comma + 1) != std::string::npos) {
            throw data_error("CSV row " + std::to_string(row) +
                             ": expected exactly two columns");
        }
        sample.push_back(parse_field(line.substr(0, comma), row, 1),
                         parse_field(line.substr(comma + 1), row, 2));
    }
    if (sample.empty()) throw data_error("CSV has no data rows: " + path.string());
    return sample;
}

void write_csv_xy(const std::filesystem::path& path, const BivariateSample& sample) {
    std::ofstream out = open_out(path);
    out << "x,y\n";
    for (std::size_t i = 0; i < sample.size(); ++i) {
        out << format_double(sample.x[i]) << ',' << format_double(sample.y[i]) << '\n';
    }
}

void write_curve_csv(const std::filesystem::path& path, const ReturnCurve& curve) {
    std::ofstream out = open_out(path);
    out << "x,y\n";
    for (const Point& q : curve.points) {
        out << format_double(q.x) << ',' << format_double(q.y) << '\n';
    }
}

std::string curve_to_json(const ReturnCurve& curve) {
    nlohmann::json j;
    j["p"] = curve.p;
    j["margin"] = margin_name(curve.margin);
    j["enforced"] = curve.enforced;
    nlohmann::json pts = nlohmann::json::array();
    for (const Point& q : curve.points) {
        pts.push_back({q.x, q.y});
    }
    j["points"] = std::move(pts);
    return j.dump(2);
}

ReturnCurve curve_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("curve JSON parse error: ") + e.what());
    }
    ReturnCurve curve;
    try {
        curve.p = j.at("p").get<double>();
        curve.margin = margin_from_name(j.at("margin").get<std::string>());
        curve.enforced = j.at("enforced").get<bool>();
        for (const auto& pt : j.at("points")) {
            curve.points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("curve JSON missing field: ") + e.what());
    }
    return curve;
}

void write_curve_json(const std::filesystem::path& path, const ReturnCurve& curve) {
    std::ofstream out = open_out(path);
    out << curve_to_json(curve) << '\n';
}

ReturnCurve read_curve_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open curve JSON: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return curve_from_json(ss.str());
}

void write_adf_csv(const std::filesystem::path& path, const AdfEstimate& adf) {
    std::ofstream out = open_out(path);
    out << "w,lambda\n";
    for (std::size_t j = 1; j + 1 < adf.rays.size(); ++j) {
        out << format_double(adf.rays[j]) << ',' << format_double(adf.lambda_hat[j - 1])
            << '\n';
    }
}

namespace {

json points_json(const std::vector<Point>& pts) {
    json arr = json::array();
    for (const Point& q : pts) arr.push_back({q.x, q.y});
    return arr;
}

}  // namespace

std::string summary_to_json(const BootstrapCurveSummary& summary) {
    json j;
    j["level"] = summary.level;
    j["angles"] = summary.grid.angles;
    j["reference"] = {summary.grid.reference.x, summary.grid.reference.y};
    j["d_median"] = summary.d_median;
    j["d_mean"] = summary.d_mean;
    j["d_lower"] = summary.d_lower;
    j["d_upper"] = summary.d_upper;
    j["median_curve"] = points_json(summary.median_curve);
    j["mean_curve"] = points_json(summary.mean_curve);
    j["lower_curve"] = points_json(summary.lower_curve);
    j["upper_curve"] = points_json(summary.upper_curve);
    j["replicates_kept"] = summary.norms.size();
    j["failed_replicates"] = summary.failed_replicates;
    return j.dump(2);
}

void write_summary_json(const std::filesystem::path& path,
                        const BootstrapCurveSummary& summary) {
    std::ofstream out = open_out(path);
    out << summary_to_json(summary) << '\n';
}

std::string diagnostic_to_json(const DiagnosticReport& report) {
    json j;
    j["p"] = report.p;
    j["level"] = report.level;
    j["angles"] = report.grid.angles;
    j["reference"] = {report.grid.reference.x, report.grid.reference.y};
    j["curve_points"] = points_json(report.curve_points);
    j["phat_lower"] = report.phat_lower;
    j["phat_median"] = report.phat_median;
    j["phat_upper"] = report.phat_upper;
    return j.dump(2);
}

void write_diagnostic_json(const std::filesystem::path& path,
                           const DiagnosticReport& report) {
    std::ofstream out = open_out(path);
    out << diagnostic_to_json(report) << '\n';
}

void write_summary_csv(const std::filesystem::path& path,
                       const BootstrapCurveSummary& summary) {
    std::ofstream out = open_out(path);
    out << "theta,d_median,d_mean,d_lower,d_upper,"
           "x_median,y_median,x_mean,y_mean,x_lower,y_lower,x_upper,y_upper\n";
    for (std::size_t j = 0; j < summary.grid.angles.size(); ++j) {
        out << format_double(summary.grid.angles[j]) << ','
            << format_double(summary.d_median[j]) << ','
            << format_double(summary.d_mean[j]) << ','
            << format_double(summary.d_lower[j]) << ','
            << format_double(summary.d_upper[j]) << ','
            << format_double(summary.median_curve[j].x) << ','
            << format_double(summary.median_curve[j].y) << ','
            << format_double(summary.mean_curve[j].x) << ','
            << format_double(summary.mean_curve[j].y) << ','
            << format_double(summary.lower_curve[j].x) << ','
            << format_double(summary.lower_curve[j].y) << ','
            << format_double(summary.upper_curve[j].x) << ','
            << format_double(summary.upper_curve[j].y) << '\n';
    }
}

void write_diagnostic_csv(const std::filesystem::path& path,
                          const DiagnosticReport& report) {
    std::ofstream out = open_out(path);
    out << "theta,x,y,phat_lower,phat_median,phat_upper,p_nominal\n";
    for (std::size_t j = 0; j < report.grid.angles.size(); ++j) {
        out << format_double(report.grid.angles[j]) << ','
            << format_double(report.curve_points[j].x) << ','
            << format_double(report.curve_points[j].y) << ','
            << format_double(report.phat_lower[j]) << ','
            << format_double(report.phat_median[j]) << ','
            << format_double(report.phat_upper[j]) << ','
            << format_double(report.p) << '\n';
    }
}

void write_bias_study_csv(const std::filesystem::path& path,
                          const std::vector<BiasStudyResult>& results) {
    std::ofstream out = open_out(path);
    out << "copula,estimator,p,num_samples,sample_size,A,failed_datasets\n";
    for (const auto& r : results) {
        out << r.copula.name() << ',' << curve_method_name(r.method) << ','
            << format_double(r.p) << ',' << r.num_samples << ',' << r.sample_size << ','
            << format_double(r.A) << ',' << r.failed_datasets << '\n';
    }
}

void write_coverage_study_csv(const std::filesystem::path& path,
                              const std::vector<CoverageStudyResult>& results) {
    std::ofstream out = open_out(path);
    out << "copula,estimator,p,num_samples,sample_size,K,"
           "coverage1,coverage2,coverage3,coverage4,coverage5\n";
    for (const auto& r : results) {
        out << r.copula.name() << ',' << curve_method_name(r.method) << ','
            << format_double(r.p) << ',' << r.num_samples << ',' << r.sample_size << ','
            << r.K;
        for (std::size_t j = 0; j < 5; ++j) {
            out << ',';
            if (j < r.coverage.size()) {
                out << format_double(r.coverage[j]);
            } else {
                out << '*';  // mirrored angle, skipped for exchangeable copulas
            }
        }
        out << '\n';
    }
}

void write_curves_svg(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, std::vector<Point>>>& curves,
                      const BivariateSample* scatter) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    auto grow = [&](double x, double y) {
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
        } else {
            xmin = std::fmin(xmin, x);
            xmax = std::fmax(xmax, x);
            ymin = std::fmin(ymin, y);
            ymax = std::fmax(ymax, y);
        }
    };
    for (const auto& [name, pts] : curves) {
        for (const Point& q : pts) grow(q.x, q.y);
    }
    if (scatter != nullptr) {
        for (std::size_t i = 0; i < scatter->size(); ++i) {
            grow(scatter->x[i], scatter->y[i]);
        }
    }
    const double w = 640.0, h = 480.0, pad = 48.0;
    const double sx = (w - 2 * pad) / std::fmax(xmax - xmin, 1e-12);
    const double sy = (h - 2 * pad) / std::fmax(ymax - ymin, 1e-12);
    auto px = [&](double x) { return pad + (x - xmin) * sx; };
    auto py = [&](double y) { return h - pad - (y - ymin) * sy; };

    static const char* kColors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e"};
    std::ofstream out = open_out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<line x1='" << pad << "' y1='" << h - pad << "' x2='" << w - pad << "' y2='"
        << h - pad << "' stroke='black'/>\n";
    out << "<line x1='" << pad << "' y1='" << pad << "' x2='" << pad << "' y2='"
        << h - pad << "' stroke='black'/>\n";
    if (scatter != nullptr) {
        for (std::size_t i = 0; i < scatter->size(); ++i) {
            out << "<circle cx='" << px(scatter->x[i]) << "' cy='" << py(scatter->y[i])
                << "' r='1.2' fill='#99999966'/>\n";
        }
    }
    int color = 0;
    for (const auto& [name, pts] : curves) {
        out << "<polyline fill='none' stroke='" << kColors[color % 5]
            << "' stroke-width='1.5' points='";
        for (const Point& q : pts) {
            out << px(q.x) << ',' << py(q.y) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << w - pad - 150 << "' y='" << pad + 16 * (color + 1)
            << "' fill='" << kColors[color % 5] << "' font-size='12'>" << name
            << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
}

}  // namespace retcurve
