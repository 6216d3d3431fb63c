#include "acleggett/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acleggett/format.hpp"
#include "acleggett/geometry.hpp"
#include "acleggett/inequalities.hpp"
#include "acleggett/layout_io.hpp"
#include "acleggett/measurement.hpp"
#include "acleggett/verify.hpp"

namespace acleggett {

using nlohmann::ordered_json;
using std::numbers::pi;

namespace {

constexpr const char* kRngName = "mt19937_64";

struct CommonOptions {
    std::string output;
    std::string format;
    double tolerance = 1e-10;
    std::uint64_t seed = kDefaultSeed;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, CommonOptions& opts, const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--output,-o", opts.output, "Write results to this file instead of stdout");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--tolerance", opts.tolerance, "Numerical tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Seed for the mt19937_64 generator")->capture_default_str();
}

/// Routes output to --output when given, otherwise to the caller's stream.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file " + path);
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_;
};

ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_significant(v);
}

void emit_json(std::ostream& out, const ordered_json& obj) { out << obj.dump() << '\n'; }

enum class Route { analytic, op, pipeline };

Correlation correlation_for(Route route, ProjectorConvention convention) {
    switch (route) {
        case Route::analytic:
            return analytic_correlation;
        case Route::op:
            return [](const Setting& a, const Setting& b) { return operator_correlation(a, b); };
        case Route::pipeline:
            return [convention](const Setting& a, const Setting& b) {
                return pipeline_correlation(a, b, convention);
            };
    }
    throw std::logic_error("unhandled route");
}

const std::map<std::string, Route> kRoutes{
    {"analytic", Route::analytic}, {"operator", Route::op}, {"pipeline", Route::pipeline}};
const std::map<std::string, ProjectorConvention> kConventions{
    {"equatorial", ProjectorConvention::equatorial}, {"polar", ProjectorConvention::polar}};

// ---------------------------------------------------------------------------

struct ScanOptions {
    CommonOptions common;
    double phi_min = 0.0;
    double phi_max = pi;
    int steps = 1000;
    Route route = Route::analytic;
    ProjectorConvention convention = ProjectorConvention::equatorial;
};

int cmd_leggett_scan(const ScanOptions& o, std::ostream& out) {
    if (!(o.phi_min <= o.phi_max)) throw ConfigError("--phi-min must not exceed --phi-max");
    const ScanRange range{o.phi_min, o.phi_max, o.steps};
    const auto rows = leggett_scan(range, correlation_for(o.route, o.convention));
    Sink sink(o.common.output, out);
    if (o.common.format == "csv") {
        sink.get() << "phi,lhs,bound,violation,violated_flag\n";
        for (const auto& r : rows) {
            sink.get() << format_number(r.phi) << ',' << format_number(r.lhs) << ','
                       << format_number(r.bound) << ',' << format_number(r.violation) << ','
                       << (r.violated ? "true" : "false") << '\n';
        }
        return kExitOk;
    }
    std::size_t violated = 0;
    ScanRow best{};
    best.violation = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (r.violated) ++violated;
        if (r.violation > best.violation) best = r;
    }
    ordered_json j;
    j["command"] = "leggett-scan";
    j["phi_min"] = num(o.phi_min);
    j["phi_max"] = num(o.phi_max);
    j["steps"] = o.steps;
    j["rows"] = rows.size();
    j["violated_rows"] = violated;
    j["max_violation"] = num(best.violation);
    j["phi_at_max"] = num(best.phi);
    if (o.phi_min < o.phi_max) {
        const Interval region = violation_region({o.phi_min, o.phi_max, std::max(o.steps, 100)}, o.common.tolerance);
        j["region_lo"] = region.empty() ? nullptr : num(region.lo);
        j["region_hi"] = region.empty() ? nullptr : num(region.hi);
    }
    emit_json(sink.get(), j);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ChshOptions {
    CommonOptions common;
    std::string settings_file;
    Route route = Route::analytic;
};

int cmd_chsh(const ChshOptions& o, std::ostream& out) {
    const ChshSettings settings = o.settings_file.empty() ? chsh_settings() : load_chsh_settings(o.settings_file);
    const double value = chsh_value(correlation_for(o.route, ProjectorConvention::equatorial), settings);
    const bool violated = value > kChshLocalBound + o.common.tolerance;
    Sink sink(o.common.output, out);
    if (o.common.format == "csv") {
        sink.get() << "value,bound,violated\n"
                   << format_number(value) << ',' << format_number(kChshLocalBound) << ','
                   << (violated ? "true" : "false") << '\n';
        return kExitOk;
    }
    ordered_json j;
    j["command"] = "chsh";
    j["value"] = num(value);
    j["bound"] = num(kChshLocalBound);
    j["violated"] = violated;
    emit_json(sink.get(), j);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CorrelateOptions {
    CommonOptions common;
    double theta_a = 0.0;
    double phi_a = 0.0;
    double theta_b = 0.0;
    double phi_b = 0.0;
    ProjectorConvention convention = ProjectorConvention::equatorial;
};

int cmd_correlate(const CorrelateOptions& o, std::ostream& out) {
    const Setting a(o.theta_a, o.phi_a);
    const Setting b(o.theta_b, o.phi_b);
    const double op = operator_correlation(a, b);
    const double analytic = analytic_correlation(a, b);

    const StateVector psi_f = evolve(initial_state(), PhaseSet(o.phi_a, o.phi_b, 0.0, 0.0));
    const JointProbabilities p = joint_probabilities(psi_f, projector_direction(o.theta_a, o.convention),
                                                     projector_direction(o.theta_b, o.convention));
    double pipeline = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;
    try {
        pipeline = normalized_correlation(p);
    } catch (const DegenerateNormalization&) {
        degenerate = true;
    }

    Sink sink(o.common.output, out);
    if (o.common.format == "csv") {
        sink.get() << "thetaA,phiA,thetaB,phiB,c_operator,c_analytic,c_pipeline,degenerate_flag,p00,p01,p10,p11\n"
                   << format_number(o.theta_a) << ',' << format_number(o.phi_a) << ','
                   << format_number(o.theta_b) << ',' << format_number(o.phi_b) << ','
                   << format_number(op) << ',' << format_number(analytic) << ','
                   << format_number(pipeline) << ',' << (degenerate ? "true" : "false");
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 2; ++k) sink.get() << ',' << format_number(p(i, k));
        }
        sink.get() << '\n';
        return kExitOk;
    }
    ordered_json j;
    j["command"] = "correlate";
    j["theta_a"] = num(o.theta_a);
    j["phi_a"] = num(o.phi_a);
    j["theta_b"] = num(o.theta_b);
    j["phi_b"] = num(o.phi_b);
    j["c_operator"] = num(op);
    j["c_analytic"] = num(analytic);
    j["c_pipeline"] = num(pipeline);
    j["degenerate"] = degenerate;
    j["p00"] = num(p(0, 0));
    j["p01"] = num(p(0, 1));
    j["p10"] = num(p(1, 0));
    j["p11"] = num(p(1, 1));
    emit_json(sink.get(), j);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct GeometryCmdOptions {
    CommonOptions common;
    std::string layout_file;
};

int cmd_geometry(const GeometryCmdOptions& o, std::ostream& out, std::ostream& err) {
    const Layout layout = load_layout(o.layout_file);
    bool clear = true;
    for (std::size_t j = 0; j < 4; ++j) {
        const double d = min_distance(layout.paths[j], layout.charge.position);
        if (d <= layout.options.exclusion_radius) {
            err << "l" << (j + 1) << ": path passes within " << format_number(d)
                << " of the line charge (exclusion radius " << format_number(layout.options.exclusion_radius)
                << ")\n";
            clear = false;
        }
    }
    if (!clear) return kExitConfigError;
    const LayoutPhases phases = layout_phases(layout);

    Sink sink(o.common.output, out);
    if (o.common.format == "csv") {
        write_phase_csv(sink.get(), layout, phases);
        err << "phiA=" << format_number(phases.phases.phi_a()) << " phiB=" << format_number(phases.phases.phi_b())
            << " gamma=" << format_number(phases.phases.gamma()) << " loop_winding=" << phases.loop_winding << '\n';
        return kExitOk;
    }
    double worst = 0.0;
    for (const auto& pp : phases.per_path) worst = std::max(worst, std::abs(pp.numeric - pp.analytic));
    ordered_json j;
    j["command"] = "geometry";
    for (int k = 1; k <= 4; ++k) j["phi" + std::to_string(k)] = num(phases.phases.phi(k));
    j["phiA"] = num(phases.phases.phi_a());
    j["phiB"] = num(phases.phases.phi_b());
    j["gamma"] = num(phases.phases.gamma());
    j["loop_winding"] = phases.loop_winding;
    j["max_abs_diff"] = num(worst);
    emit_json(sink.get(), j);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ReportOptions {
    CommonOptions common;
    std::size_t phase_sets = 20;
    std::size_t theta_pairs = 20;
    ProjectorConvention convention = ProjectorConvention::equatorial;
    std::string convention_name = "equatorial";
};

ordered_json summary_json(const ConventionReport& report, const ReportOptions& o) {
    const auto& s = report.summary;
    ordered_json j;
    j["command"] = "convention-report";
    j["convention"] = o.convention_name;
    j["rng"] = kRngName;
    j["seed"] = o.common.seed;
    j["rows"] = s.rows;
    j["degenerate_rows"] = s.degenerate_rows;
    j["max_abs_diff"] = num(s.max_abs_diff);
    j["mean_abs_diff"] = num(s.mean_abs_diff);
    j["rows_over_threshold"] = s.rows_over_threshold;
    j["max_abs_diff_heisenberg"] = num(s.max_abs_diff_heisenberg);
    j["mean_abs_diff_heisenberg"] = num(s.mean_abs_diff_heisenberg);
    j["rows_over_threshold_heisenberg"] = s.rows_over_threshold_heisenberg;
    j["threshold"] = num(s.threshold);
    return j;
}

int cmd_convention_report(const ReportOptions& o, std::ostream& out, std::ostream& err) {
    const auto [phase_sets, thetas] = sample_convention_inputs(o.phase_sets, o.theta_pairs, o.common.seed);
    ConventionOptions copts;
    copts.convention = o.convention;
    const ConventionReport report = convention_report(phase_sets, thetas, copts);
    Sink sink(o.common.output, out);
    if (o.common.format == "csv") {
        write_convention_csv(sink.get(), report);
        err << summary_json(report, o).dump() << '\n';
    } else {
        emit_json(sink.get(), summary_json(report, o));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
    CommonOptions common;
    std::string suite;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    const std::vector<CheckResult> results =
        o.suite.empty() ? run_all_suites(o.common.seed) : run_suite(o.suite, o.common.seed);
    bool ok = true;
    Sink sink(o.common.output, out);
    auto& s = sink.get();
    if (o.common.format == "csv") {
        s << "suite,check,value,threshold,status\n";
        for (const auto& r : results) {
            s << r.suite << ",\"" << r.name << "\"," << format_number(r.value) << ','
              << (r.informational ? std::string("") : format_number(r.threshold)) << ','
              << (r.informational ? "info" : (r.passed ? "pass" : "fail")) << '\n';
            ok = ok && r.passed;
        }
    } else {
        s << "# rng " << kRngName << " seed " << o.common.seed << '\n';
        for (const auto& r : results) {
            const char* status = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
            s << std::left << std::setw(5) << status << ' ' << std::setw(13) << r.suite << ' ' << r.name << ": "
              << format_number(r.value);
            if (!r.informational) s << " (< " << format_number(r.threshold) << ')';
            s << '\n';
            ok = ok && r.passed;
        }
        s << (ok ? "all invariant suites passed" : "invariant verification FAILED") << '\n';
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Aharonov-Casher Leggett/CHSH simulator and verification toolkit", "acleggett"};
    app.require_subcommand(1);

    ScanOptions scan;
    auto* scan_cmd = app.add_subcommand("leggett-scan", "Evaluate the Leggett inequality over a phi grid");
    add_common(scan_cmd, scan.common, "csv");
    scan_cmd->add_option("--phi-min", scan.phi_min)->capture_default_str();
    scan_cmd->add_option("--phi-max", scan.phi_max)->capture_default_str();
    scan_cmd->add_option("--steps", scan.steps, "Grid intervals")->check(CLI::PositiveNumber)->capture_default_str();
    scan_cmd->add_option("--route", scan.route, "Correlation route")
        ->transform(CLI::CheckedTransformer(kRoutes, CLI::ignore_case));
    scan_cmd->add_option("--convention", scan.convention, "Projector convention for the pipeline route")
        ->transform(CLI::CheckedTransformer(kConventions, CLI::ignore_case));

    ChshOptions chsh;
    auto* chsh_cmd = app.add_subcommand("chsh", "Evaluate the Bell-CHSH expression");
    add_common(chsh_cmd, chsh.common, "json");
    chsh_cmd->add_option("--settings", chsh.settings_file, "JSON file with a, a_prime, b, b_prime");
    chsh_cmd->add_option("--route", chsh.route, "Correlation route")
        ->transform(CLI::CheckedTransformer(kRoutes, CLI::ignore_case));

    CorrelateOptions corr;
    auto* corr_cmd = app.add_subcommand("correlate", "Compare the correlation routes for one setting pair");
    add_common(corr_cmd, corr.common, "json");
    corr_cmd->add_option("--theta-a", corr.theta_a)->capture_default_str();
    corr_cmd->add_option("--phi-a", corr.phi_a)->capture_default_str();
    corr_cmd->add_option("--theta-b", corr.theta_b)->capture_default_str();
    corr_cmd->add_option("--phi-b", corr.phi_b)->capture_default_str();
    corr_cmd->add_option("--convention", corr.convention, "Projector convention")
        ->transform(CLI::CheckedTransformer(kConventions, CLI::ignore_case));

    GeometryCmdOptions geo;
    auto* geo_cmd = app.add_subcommand("geometry", "AC phases for a layout file");
    add_common(geo_cmd, geo.common, "csv");
    geo_cmd->add_option("--layout", geo.layout_file, "Layout JSON")->required();

    ReportOptions rep;
    auto* rep_cmd = app.add_subcommand("convention-report", "Tabulate projector pipeline against -a.b");
    add_common(rep_cmd, rep.common, "csv");
    rep_cmd->add_option("--phase-sets", rep.phase_sets)->check(CLI::PositiveNumber)->capture_default_str();
    rep_cmd->add_option("--theta-pairs", rep.theta_pairs)->check(CLI::PositiveNumber)->capture_default_str();
    rep_cmd->add_option("--convention", rep.convention_name, "Projector convention")
        ->check(CLI::IsMember({"equatorial", "polar"}))
        ->capture_default_str();

    VerifyOptions ver;
    auto* ver_cmd = app.add_subcommand("verify", "Run the invariant suites");
    add_common(ver_cmd, ver.common, "json");
    ver_cmd->add_option("--suite", ver.suite, "Run only this suite")->check(CLI::IsMember(suite_names()));

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        if (*scan_cmd) return cmd_leggett_scan(scan, out);
        if (*chsh_cmd) return cmd_chsh(chsh, out);
        if (*corr_cmd) return cmd_correlate(corr, out);
        if (*geo_cmd) return cmd_geometry(geo, out, err);
        if (*rep_cmd) {
            rep.convention = kConventions.at(rep.convention_name);
            return cmd_convention_report(rep, out, err);
        }
        if (*ver_cmd) return cmd_verify(ver, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ExclusionZoneViolation& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitConfigError;
}

}  // namespace acleggett
