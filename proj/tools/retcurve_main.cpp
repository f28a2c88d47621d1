// Command-line front end: simulation, margin fitting, curve estimation,
// bootstrap uncertainty, the survival-region diagnostic and the two
// simulation studies, all reproducible from an emitted manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "retcurve/angular_dependence.hpp"
#include "retcurve/cond_extremes.hpp"
#include "retcurve/copulas.hpp"
#include "retcurve/curves.hpp"
#include "retcurve/estimators.hpp"
#include "retcurve/inference.hpp"
#include "retcurve/io.hpp"
#include "retcurve/margins.hpp"
#include "retcurve/stats.hpp"
#include "retcurve/study.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace retcurve;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CommonOpts {
    std::string output_dir;
    std::uint64_t seed = 0;
    int workers = 0;
    bool svg = false;
};

struct EstimatorOpts {
    std::string estimator = "wt";
    int num_rays = 151;
    double hill_threshold_prob = 0.95;
    double pstar = -1.0;  // <0: default to 1 - hill_threshold_prob
    int quantile_grid_size = 200;
    int sim_draws = 10000;
    double threshold_prob = 0.95;
};

struct SimulateOpts {
    CommonOpts common;
    std::string copula = "independence";
    std::size_t n = 10000;
    std::string margin = "exponential";
};

struct MarginsOpts {
    CommonOpts common;
    std::string input;
    double threshold_prob = 0.95;
};

struct CurveOpts {
    CommonOpts common;
    EstimatorOpts est;
    std::string input;
    std::string input_margin = "native";
    double p = 1e-3;
    double margin_threshold_prob = 0.95;
};

struct UncertaintyOpts {
    CommonOpts common;
    EstimatorOpts est;
    std::string input;
    std::string input_margin = "native";
    double p = 1e-3;
    double margin_threshold_prob = 0.95;
    int m = 150;
    int K = 250;
    int block_size = 0;  // 0: iid
    double level = 0.95;
};

struct DiagnoseOpts {
    CommonOpts common;
    std::string input;
    std::string curve_path;
    std::string input_margin = "native";
    int m = 150;
    int K = 1000;
    int block_size = 0;
    bool identity = false;
    double level = 0.95;
};

struct StudyOpts {
    CommonOpts common;
    EstimatorOpts est;
    std::string copula = "inverted_bev_logistic(0.5)";
    std::string estimators = "both";
    double p = 1e-3;
    int num_samples = 50;
    int sample_size = 10000;
    int K = 100;  // coverage only
};

EstimatorParams to_params(const EstimatorOpts& e) {
    EstimatorParams params;
    params.num_rays = e.num_rays;
    params.hill_threshold_prob = e.hill_threshold_prob;
    if (e.pstar > 0.0) params.pstar = e.pstar;
    params.quantile_grid_size = e.quantile_grid_size;
    params.sim_draws = e.sim_draws;
    params.threshold_prob = e.threshold_prob;
    return params;
}

json common_json(const CommonOpts& c) {
    return json{{"output_dir", c.output_dir},
                {"seed", c.seed},
                {"workers", c.workers},
                {"svg", c.svg}};
}

void common_from_json(const json& j, CommonOpts& c) {
    c.output_dir = j.at("output_dir").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.workers = j.at("workers").get<int>();
    c.svg = j.at("svg").get<bool>();
}

json estimator_json(const EstimatorOpts& e) {
    return json{{"estimator", e.estimator},
                {"num_rays", e.num_rays},
                {"hill_threshold_prob", e.hill_threshold_prob},
                {"pstar", e.pstar},
                {"quantile_grid_size", e.quantile_grid_size},
                {"sim_draws", e.sim_draws},
                {"threshold_prob", e.threshold_prob}};
}

void estimator_from_json(const json& j, EstimatorOpts& e) {
    e.estimator = j.at("estimator").get<std::string>();
    e.num_rays = j.at("num_rays").get<int>();
    e.hill_threshold_prob = j.at("hill_threshold_prob").get<double>();
    e.pstar = j.at("pstar").get<double>();
    e.quantile_grid_size = j.at("quantile_grid_size").get<int>();
    e.sim_draws = j.at("sim_draws").get<int>();
    e.threshold_prob = j.at("threshold_prob").get<double>();
}

fs::path prepare_output_dir(CommonOpts& common) {
    if (common.output_dir.empty()) {
        if (const char* env = std::getenv("RETCURVE_OUTPUT_DIR")) {
            common.output_dir = env;
        } else {
            common.output_dir = ".";
        }
    }
    fs::path dir(common.output_dir);
    fs::create_directories(dir);
    return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, json config) {
    json manifest{{"schema_version", kSchemaVersion},
                  {"command", command},
                  {"config", std::move(config)}};
    std::ofstream out(dir / "manifest.json");
    if (!out) throw data_error("cannot write manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
}

void require_small_p(double p) {
    if (!(p > 0.0 && p < 0.05)) {
        throw CLI::ValidationError(
            "-p", "return-curve probability must satisfy 0 < p < 0.05 (the fitted "
                  "tail models are valid only below the 0.95 threshold level)");
    }
}

Margin parse_data_margin(const std::string& name) {
    const Margin m = margin_from_name(name);
    if (m != Margin::native && m != Margin::exponential) {
        throw data_error("input margin must be 'native' or 'exponential'");
    }
    return m;
}

// ---------------------------------------------------------------------------

int run_simulate(SimulateOpts opts) {
    const fs::path dir = prepare_output_dir(opts.common);
    const CopulaSpec spec = CopulaSpec::parse(opts.copula);
    const Margin margin = margin_from_name(opts.margin);
    const BivariateSample sample = copula_sample(spec, opts.n, margin, opts.common.seed);
    write_csv_xy(dir / "sample.csv", sample);
    write_manifest(dir, "simulate",
                   json{{"common", common_json(opts.common)},
                        {"copula", opts.copula},
                        {"n", opts.n},
                        {"margin", opts.margin}});
    std::cout << "wrote " << (dir / "sample.csv").string() << " (" << sample.size()
              << " rows, " << spec.name() << ")\n";
    return 0;
}

json margins_report(const MarginalModel& model) {
    const GpdModel& g = model.gpd();
    return json{{"threshold_u", g.threshold_u},
                {"sigma", g.sigma},
                {"xi", g.xi},
                {"exceed_prob", g.exceed_prob},
                {"n", model.n()}};
}

int run_margins(MarginsOpts opts) {
    const fs::path dir = prepare_output_dir(opts.common);
    const BivariateSample data = read_csv_xy(opts.input);
    const MarginalModel mx = MarginalModel::fit(data.x, opts.threshold_prob);
    const MarginalModel my = MarginalModel::fit(data.y, opts.threshold_prob);
    {
        json j{{"x", margins_report(mx)}, {"y", margins_report(my)}};
        std::ofstream out(dir / "margins.json");
        out << j.dump(2) << '\n';
    }
    write_csv_xy(dir / "transformed.csv", to_exponential_margins(data, mx, my));
    write_manifest(dir, "margins",
                   json{{"common", common_json(opts.common)},
                        {"input", opts.input},
                        {"threshold_prob", opts.threshold_prob}});
    std::cout << "wrote " << (dir / "margins.json").string() << " and transformed.csv\n";
    return 0;
}

int run_curve(CurveOpts opts) {
    require_small_p(opts.p);
    const fs::path dir = prepare_output_dir(opts.common);
    const BivariateSample data = read_csv_xy(opts.input);
    if (data.size() < 500) {
        throw data_error("curve estimation needs at least 500 rows, got " +
                         std::to_string(data.size()));
    }
    const Margin input_margin = parse_data_margin(opts.input_margin);
    const CurveMethod method = curve_method_from_name(opts.est.estimator);
    const EstimatorParams params = to_params(opts.est);

    ReturnCurve curve;
    if (input_margin == Margin::native) {
        curve = make_native_estimator(method, opts.p, params,
                                      opts.margin_threshold_prob)(data, opts.common.seed);
    } else {
        curve = make_estimator(method, opts.p, params)(data, opts.common.seed);
    }

    if (method == CurveMethod::wt) {
        // the pointwise dependence-function estimate behind the curve
        const BivariateSample exp_data =
            input_margin == Margin::native
                ? to_exponential_margins(
                      data, MarginalModel::fit(data.x, opts.margin_threshold_prob),
                      MarginalModel::fit(data.y, opts.margin_threshold_prob))
                : data;
        write_adf_csv(dir / "adf.csv",
                      adf_estimate(exp_data, params.num_rays, params.hill_threshold_prob));
    }
    write_curve_csv(dir / "curve.csv", curve);
    write_curve_json(dir / "curve.json", curve);
    if (opts.common.svg) {
        write_curves_svg(dir / "curve.svg", {{opts.est.estimator, curve.points}}, &data);
    }
    write_manifest(dir, "curve",
                   json{{"common", common_json(opts.common)},
                        {"est", estimator_json(opts.est)},
                        {"input", opts.input},
                        {"input_margin", opts.input_margin},
                        {"p", opts.p},
                        {"margin_threshold_prob", opts.margin_threshold_prob}});
    std::cout << "wrote " << (dir / "curve.csv").string() << " ("
              << curve.points.size() << " points, " << margin_name(curve.margin)
              << " margins)\n";
    return 0;
}

Resampler make_resampler(int K, int block_size, bool identity, std::uint64_t seed) {
    Resampler r;
    r.K = K;
    r.seed = seed;
    if (identity) {
        r.mode = Resampler::Mode::identity;
    } else if (block_size > 1) {
        r.mode = Resampler::Mode::block;
        r.block_size = block_size;
    } else {
        r.mode = Resampler::Mode::iid;
    }
    return r;
}

int run_uncertainty(UncertaintyOpts opts) {
    require_small_p(opts.p);
    const fs::path dir = prepare_output_dir(opts.common);
    const BivariateSample data = read_csv_xy(opts.input);
    if (data.size() < 500) {
        throw data_error("uncertainty estimation needs at least 500 rows");
    }
    const Margin input_margin = parse_data_margin(opts.input_margin);
    const CurveMethod method = curve_method_from_name(opts.est.estimator);
    const EstimatorParams params = to_params(opts.est);

    const CurveEstimator estimator =
        input_margin == Margin::native
            ? make_native_estimator(method, opts.p, params, opts.margin_threshold_prob)
            : make_estimator(method, opts.p, params);
    const Point reference =
        input_margin == Margin::native ? reference_point(data) : Point{0.0, 0.0};
    const AngleGrid grid = angle_grid(opts.m, reference);
    const Resampler resampler =
        make_resampler(opts.K, opts.block_size, false, opts.common.seed);

    const BootstrapCurveSummary summary = bootstrap_curve_summary(
        data, estimator, grid, resampler, opts.level, opts.common.workers);

    write_summary_csv(dir / "summary.csv", summary);
    write_summary_json(dir / "summary.json", summary);
    if (opts.common.svg) {
        write_curves_svg(dir / "bands.svg",
                         {{"median", summary.median_curve},
                          {"mean", summary.mean_curve},
                          {"lower", summary.lower_curve},
                          {"upper", summary.upper_curve}},
                         &data);
    }
    write_manifest(dir, "uncertainty",
                   json{{"common", common_json(opts.common)},
                        {"est", estimator_json(opts.est)},
                        {"input", opts.input},
                        {"input_margin", opts.input_margin},
                        {"p", opts.p},
                        {"margin_threshold_prob", opts.margin_threshold_prob},
                        {"m", opts.m},
                        {"K", opts.K},
                        {"block_size", opts.block_size},
                        {"level", opts.level}});
    std::cout << "wrote " << (dir / "summary.csv").string() << " ("
              << summary.norms.size() << " replicates kept, "
              << summary.failed_replicates << " failed)\n";
    return 0;
}

int run_diagnose(DiagnoseOpts opts) {
    const fs::path dir = prepare_output_dir(opts.common);
    const BivariateSample data = read_csv_xy(opts.input);
    const ReturnCurve curve = read_curve_json(opts.curve_path);
    const Margin input_margin = parse_data_margin(opts.input_margin);
    if (curve.margin != input_margin) {
        throw data_error("curve margins (" + margin_name(curve.margin) +
                         ") disagree with --input-margin (" + opts.input_margin + ")");
    }
    if (!curve.enforced) throw data_error("diagnose requires an enforced curve");
    if (!opts.identity && opts.block_size < 1) {
        throw CLI::ValidationError("--block-size",
                                   "required (use 1 for iid, or --identity for the "
                                   "zero-width debug mode)");
    }

    const Point reference =
        input_margin == Margin::native ? reference_point(data) : Point{0.0, 0.0};
    const AngleGrid grid = angle_grid(opts.m, reference);
    const Resampler resampler = make_resampler(opts.identity ? 1 : opts.K,
                                               opts.block_size, opts.identity,
                                               opts.common.seed);
    const DiagnosticReport report =
        diagnostic(data, curve, grid, resampler, opts.level, opts.common.workers);
    write_diagnostic_csv(dir / "diagnostic.csv", report);
    write_diagnostic_json(dir / "diagnostic.json", report);

    // lag autocorrelations to assist block-size selection
    {
        const std::vector<double> ax = autocorrelations(data.x, 60);
        const std::vector<double> ay = autocorrelations(data.y, 60);
        std::ofstream out(dir / "acf.csv");
        out << "lag,acf_x,acf_y\n";
        for (std::size_t k = 0; k < ax.size() && k < ay.size(); ++k) {
            out << (k + 1) << ',' << format_double(ax[k]) << ',' << format_double(ay[k])
                << '\n';
        }
        std::cout << "lag-1 acf: x=" << (ax.empty() ? 0.0 : ax[0])
                  << " y=" << (ay.empty() ? 0.0 : ay[0]) << " (full table in acf.csv)\n";
    }
    if (opts.common.svg) {
        std::vector<Point> med(report.grid.angles.size()), lo(med.size()), hi(med.size());
        for (std::size_t j = 0; j < med.size(); ++j) {
            const double idx = static_cast<double>(j + 1);
            med[j] = {idx, report.phat_median[j]};
            lo[j] = {idx, report.phat_lower[j]};
            hi[j] = {idx, report.phat_upper[j]};
        }
        write_curves_svg(dir / "diagnostic.svg",
                         {{"median", med}, {"lower", lo}, {"upper", hi}});
    }
    write_manifest(dir, "diagnose",
                   json{{"common", common_json(opts.common)},
                        {"input", opts.input},
                        {"curve", opts.curve_path},
                        {"input_margin", opts.input_margin},
                        {"m", opts.m},
                        {"K", opts.K},
                        {"block_size", opts.block_size},
                        {"identity", opts.identity},
                        {"level", opts.level}});
    std::cout << "wrote " << (dir / "diagnostic.csv").string() << '\n';
    return 0;
}

std::vector<CurveMethod> parse_methods(const std::string& which) {
    if (which == "both") return {CurveMethod::ht, CurveMethod::wt};
    return {curve_method_from_name(which)};
}

int run_bias_study_cmd(StudyOpts opts) {
    require_small_p(opts.p);
    const fs::path dir = prepare_output_dir(opts.common);
    std::vector<BiasStudyResult> results;
    for (CurveMethod method : parse_methods(opts.estimators)) {
        BiasStudyConfig config;
        config.copula = CopulaSpec::parse(opts.copula);
        config.method = method;
        config.p = opts.p;
        config.num_samples = opts.num_samples;
        config.sample_size = opts.sample_size;
        config.seed = opts.common.seed;
        config.params = to_params(opts.est);
        config.workers = opts.common.workers;
        results.push_back(run_bias_study(config));
        std::cout << curve_method_name(method) << ": A = " << results.back().A << '\n';
    }
    write_bias_study_csv(dir / "bias_study.csv", results);
    write_manifest(dir, "bias-study",
                   json{{"common", common_json(opts.common)},
                        {"est", estimator_json(opts.est)},
                        {"copula", opts.copula},
                        {"estimators", opts.estimators},
                        {"p", opts.p},
                        {"num_samples", opts.num_samples},
                        {"sample_size", opts.sample_size}});
    std::cout << "wrote " << (dir / "bias_study.csv").string() << '\n';
    return 0;
}

int run_coverage_study_cmd(StudyOpts opts) {
    require_small_p(opts.p);
    const fs::path dir = prepare_output_dir(opts.common);
    std::vector<CoverageStudyResult> results;
    for (CurveMethod method : parse_methods(opts.estimators)) {
        CoverageStudyConfig config;
        config.copula = CopulaSpec::parse(opts.copula);
        config.method = method;
        config.p = opts.p;
        config.num_samples = opts.num_samples;
        config.sample_size = opts.sample_size;
        config.K = opts.K;
        config.seed = opts.common.seed;
        config.params = to_params(opts.est);
        config.workers = opts.common.workers;
        results.push_back(run_coverage_study(config));
        std::cout << curve_method_name(method) << ": coverage =";
        for (double c : results.back().coverage) std::cout << ' ' << c;
        std::cout << '\n';
    }
    write_coverage_study_csv(dir / "coverage_study.csv", results);
    write_manifest(dir, "coverage-study",
                   json{{"common", common_json(opts.common)},
                        {"est", estimator_json(opts.est)},
                        {"copula", opts.copula},
                        {"estimators", opts.estimators},
                        {"p", opts.p},
                        {"num_samples", opts.num_samples},
                        {"sample_size", opts.sample_size},
                        {"K", opts.K}});
    std::cout << "wrote " << (dir / "coverage_study.csv").string() << '\n';
    return 0;
}

int run_from_manifest(const std::string& manifest_path,
                      const std::string& output_override) {
    std::ifstream in(manifest_path);
    if (!in) throw data_error("cannot open manifest: " + manifest_path);
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const json::exception& e) {
        throw data_error(std::string("manifest parse error: ") + e.what());
    }
    if (manifest.at("schema_version").get<int>() != kSchemaVersion) {
        throw data_error("unsupported manifest schema version");
    }
    const std::string command = manifest.at("command").get<std::string>();
    const json& config = manifest.at("config");

    auto load_common = [&](CommonOpts& c) {
        common_from_json(config.at("common"), c);
        if (!output_override.empty()) c.output_dir = output_override;
    };

    if (command == "simulate") {
        SimulateOpts o;
        load_common(o.common);
        o.copula = config.at("copula").get<std::string>();
        o.n = config.at("n").get<std::size_t>();
        o.margin = config.at("margin").get<std::string>();
        return run_simulate(o);
    }
    if (command == "margins") {
        MarginsOpts o;
        load_common(o.common);
        o.input = config.at("input").get<std::string>();
        o.threshold_prob = config.at("threshold_prob").get<double>();
        return run_margins(o);
    }
    if (command == "curve") {
        CurveOpts o;
        load_common(o.common);
        estimator_from_json(config.at("est"), o.est);
        o.input = config.at("input").get<std::string>();
        o.input_margin = config.at("input_margin").get<std::string>();
        o.p = config.at("p").get<double>();
        o.margin_threshold_prob = config.at("margin_threshold_prob").get<double>();
        return run_curve(o);
    }
    if (command == "uncertainty") {
        UncertaintyOpts o;
        load_common(o.common);
        estimator_from_json(config.at("est"), o.est);
        o.input = config.at("input").get<std::string>();
        o.input_margin = config.at("input_margin").get<std::string>();
        o.p = config.at("p").get<double>();
        o.margin_threshold_prob = config.at("margin_threshold_prob").get<double>();
        o.m = config.at("m").get<int>();
        o.K = config.at("K").get<int>();
        o.block_size = config.at("block_size").get<int>();
        o.level = config.at("level").get<double>();
        return run_uncertainty(o);
    }
    if (command == "diagnose") {
        DiagnoseOpts o;
        load_common(o.common);
        o.input = config.at("input").get<std::string>();
        o.curve_path = config.at("curve").get<std::string>();
        o.input_margin = config.at("input_margin").get<std::string>();
        o.m = config.at("m").get<int>();
        o.K = config.at("K").get<int>();
        o.block_size = config.at("block_size").get<int>();
        o.identity = config.at("identity").get<bool>();
        o.level = config.at("level").get<double>();
        return run_diagnose(o);
    }
    if (command == "bias-study" || command == "coverage-study") {
        StudyOpts o;
        load_common(o.common);
        estimator_from_json(config.at("est"), o.est);
        o.copula = config.at("copula").get<std::string>();
        o.estimators = config.at("estimators").get<std::string>();
        o.p = config.at("p").get<double>();
        o.num_samples = config.at("num_samples").get<int>();
        o.sample_size = config.at("sample_size").get<int>();
        if (command == "coverage-study") {
            o.K = config.at("K").get<int>();
            return run_coverage_study_cmd(o);
        }
        return run_bias_study_cmd(o);
    }
    throw data_error("unknown command in manifest: " + command);
}

void add_common_flags(CLI::App* cmd, CommonOpts& common) {
    cmd->add_option("-o,--output-dir", common.output_dir,
                    "output directory (default: $RETCURVE_OUTPUT_DIR or '.')");
    cmd->add_option("--seed", common.seed, "master seed for all randomness");
    cmd->add_option("--workers", common.workers,
                    "worker threads (0 = hardware concurrency)");
    cmd->add_flag("--svg", common.svg, "also write a quick-look SVG rendering");
}

void add_estimator_flags(CLI::App* cmd, EstimatorOpts& est, bool with_choice = true) {
    if (with_choice) {
        cmd->add_option("--estimator", est.estimator, "curve estimator")
            ->check(CLI::IsMember({"ht", "wt"}));
    }
    cmd->add_option("--num-rays", est.num_rays, "ray grid size (wt)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--hill-threshold-prob", est.hill_threshold_prob,
                    "tail-rate threshold probability (wt)");
    cmd->add_option("--pstar", est.pstar,
                    "extrapolation base probability (wt; default 1 - hill threshold)");
    cmd->add_option("--grid-size", est.quantile_grid_size,
                    "conditioning quantile grid size per region (ht)");
    cmd->add_option("--sim-draws", est.sim_draws, "conditional simulation size (ht)");
    cmd->add_option("--threshold-prob", est.threshold_prob,
                    "conditioning threshold probability (ht)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bivariate extremal return-curve estimation toolkit"};
    app.require_subcommand(1);

    SimulateOpts sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "draw a copula sample to CSV");
    c_sim->add_option("--copula", sim.copula,
                      "family spec, e.g. bev_logistic(0.5), gaussian(0.9), t(0.8,2), "
                      "frank(-5), independence")
        ->required();
    c_sim->add_option("-n,--sample-size", sim.n, "number of draws")->required();
    c_sim->add_option("--margin", sim.margin, "uniform|exponential|laplace|frechet");
    add_common_flags(c_sim, sim.common);

    MarginsOpts marg;
    CLI::App* c_marg = app.add_subcommand("margins", "fit semi-parametric margins");
    c_marg->add_option("--input", marg.input, "two-column CSV with header x,y")
        ->required();
    c_marg->add_option("--threshold-prob", marg.threshold_prob,
                       "marginal GPD threshold probability");
    add_common_flags(c_marg, marg.common);

    CurveOpts curve;
    CLI::App* c_curve = app.add_subcommand("curve", "estimate a return curve");
    c_curve->add_option("--input", curve.input, "two-column CSV with header x,y")
        ->required();
    c_curve->add_option("-p,--probability", curve.p, "return-curve probability")
        ->required();
    c_curve->add_option("--input-margin", curve.input_margin, "native|exponential");
    c_curve->add_option("--margin-threshold-prob", curve.margin_threshold_prob,
                        "marginal GPD threshold probability (native input)");
    add_estimator_flags(c_curve, curve.est);
    add_common_flags(c_curve, curve.common);

    UncertaintyOpts unc;
    CLI::App* c_unc = app.add_subcommand(
        "uncertainty", "bootstrap median/mean curves and confidence bands");
    c_unc->add_option("--input", unc.input, "two-column CSV with header x,y")->required();
    c_unc->add_option("-p,--probability", unc.p, "return-curve probability")->required();
    c_unc->add_option("--input-margin", unc.input_margin, "native|exponential");
    c_unc->add_option("--margin-threshold-prob", unc.margin_threshold_prob,
                      "marginal GPD threshold probability (native input)");
    c_unc->add_option("-m,--angles", unc.m, "angle grid size");
    c_unc->add_option("-K,--replicates", unc.K, "bootstrap replicates");
    c_unc->add_option("--block-size", unc.block_size,
                      "block bootstrap block length (0 or 1 = iid)");
    c_unc->add_option("--level", unc.level, "confidence level");
    add_estimator_flags(c_unc, unc.est);
    add_common_flags(c_unc, unc.common);

    DiagnoseOpts diag;
    CLI::App* c_diag = app.add_subcommand(
        "diagnose", "survival-region probability diagnostic for a saved curve");
    c_diag->add_option("--input", diag.input, "two-column CSV with header x,y")
        ->required();
    c_diag->add_option("--curve", diag.curve_path, "curve.json from the curve command")
        ->required();
    c_diag->add_option("--input-margin", diag.input_margin, "native|exponential");
    c_diag->add_option("-m,--angles", diag.m, "angle grid size");
    c_diag->add_option("-K,--replicates", diag.K, "bootstrap replicates");
    c_diag->add_option("--block-size", diag.block_size,
                       "block bootstrap block length (required; 1 = iid)");
    c_diag->add_flag("--identity", diag.identity,
                     "debug: no resampling, zero-width bands");
    c_diag->add_option("--level", diag.level, "confidence level");
    add_common_flags(c_diag, diag.common);

    StudyOpts bias;
    CLI::App* c_bias = app.add_subcommand("bias-study",
                                          "median-curve bias study on one copula");
    c_bias->add_option("--copula", bias.copula, "family spec")->required();
    c_bias->add_option("--estimators", bias.estimators, "ht|wt|both");
    c_bias->add_option("-p,--probability", bias.p, "return-curve probability");
    c_bias->add_option("--num-samples", bias.num_samples, "simulated datasets");
    c_bias->add_option("--sample-size", bias.sample_size, "rows per dataset");
    add_estimator_flags(c_bias, bias.est, false);
    add_common_flags(c_bias, bias.common);

    StudyOpts cov;
    CLI::App* c_cov = app.add_subcommand("coverage-study",
                                         "confidence-region coverage study");
    c_cov->add_option("--copula", cov.copula, "family spec")->required();
    c_cov->add_option("--estimators", cov.estimators, "ht|wt|both");
    c_cov->add_option("-p,--probability", cov.p, "return-curve probability");
    c_cov->add_option("--num-samples", cov.num_samples, "simulated datasets");
    c_cov->add_option("--sample-size", cov.sample_size, "rows per dataset");
    c_cov->add_option("-K,--replicates", cov.K, "bootstrap replicates per dataset");
    add_estimator_flags(c_cov, cov.est, false);
    add_common_flags(c_cov, cov.common);

    std::string manifest_path, rerun_output;
    CLI::App* c_rerun = app.add_subcommand("rerun", "re-run a command from its manifest");
    c_rerun->add_option("manifest", manifest_path, "path to manifest.json")->required();
    c_rerun->add_option("-o,--output-dir", rerun_output,
                        "override the manifest output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_marg->parsed()) return run_margins(marg);
        if (c_curve->parsed()) return run_curve(curve);
        if (c_unc->parsed()) return run_uncertainty(unc);
        if (c_diag->parsed()) return run_diagnose(diag);
        if (c_bias->parsed()) return run_bias_study_cmd(bias);
        if (c_cov->parsed()) return run_coverage_study_cmd(cov);
        if (c_rerun->parsed()) return run_from_manifest(manifest_path, rerun_output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}
