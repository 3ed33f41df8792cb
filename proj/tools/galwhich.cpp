// galwhich: run which-way interferometer experiments and the law suite.
// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 runtime error.

#include "galilei/config.hpp"
#include "galilei/error.hpp"
#include "galilei/io.hpp"
#include "galilei/models.hpp"
#include "galilei/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace galilei;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Common {
    std::string config_path;
    /// Empty means the working directory.
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

config::ExperimentConfig load(const Common& c) {
    auto cfg = c.config_path.empty() ? config::parse_config("") : config::load_config(c.config_path);
    if (c.seed) cfg.seed = *c.seed;
    return cfg;
}

std::string out_path(const Common& c, const std::string& name) {
    const fs::path dir = c.out_dir.empty() ? fs::path(".") : fs::path(c.out_dir);
    fs::create_directories(dir);
    return (dir / name).string();
}

class Stopwatch {
public:
    explicit Stopwatch(const char* what) : what_(what), start_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
        std::fprintf(stderr, "%s: %.3f s wall\n", what_, dt.count());
    }

private:
    const char* what_;
    std::chrono::steady_clock::time_point start_;
};

int simulate(const Common& common) {
    const auto cfg = load(common);
    Stopwatch timer("simulate");
    const auto run = models::run_experiment(cfg.experiment, cfg.model, cfg.eraser, config::to_params(cfg));
    for (const auto& p : run.profiles) io::write_file(out_path(common, "profile_" + p.name + ".csv"), io::profile_csv(p));
    io::write_file(out_path(common, "report.txt"), io::serialize_record({cfg, run.report, {}}));
    for (const auto& [pair, v] : run.report.visibilities) std::printf("V(%s) = %s\n", pair.c_str(), io::format_double(v).c_str());
    if (run.report.rival) {
        std::printf("rival %s: V = %s\n", models::to_string(run.report.rival->first),
                    io::format_double(run.report.rival->second).c_str());
    }
    return kOk;
}

int run_verify(const Common& common, bool flip_gamma_sign) {
    const auto cfg = load(common);
    Stopwatch timer("verify");
    auto options = config::to_verify_options(cfg);
    options.flip_gamma_sign = flip_gamma_sign;
    const auto laws = verify::run_all(options);
    bool ok = true;
    std::printf("%-20s %-24s %-8s %s\n", "law", "max_residual", "tol", "status");
    for (const auto& law : laws) {
        std::printf("%-20s %-24s %-8s %s\n", law.name.c_str(), io::format_double(law.max_residual).c_str(),
                    law.exact ? "exact" : io::format_double(law.tolerance).c_str(), law.passed() ? "ok" : "FAIL");
        if (!law.passed()) {
            ok = false;
            std::fprintf(stderr, "law violated: %s\n", law.name.c_str());
        }
    }
    if (!common.out_dir.empty()) {
        models::PredictionReport empty;
        empty.experiment = cfg.experiment;
        empty.model = cfg.model;
        empty.eraser = cfg.eraser;
        io::write_file(out_path(common, "verify.txt"), io::serialize_record({cfg, empty, laws}));
    }
    return ok ? kOk : kVerifyFailed;
}

/// Sweepable parameters share their config key names.
bool apply_sweep_value(config::ExperimentConfig& cfg, const std::string& param, double v) {
    if (param == "reflectivity") cfg.reflectivity = v;
    else if (param == "pulse_angle") cfg.pulse_angle = v;
    else if (param == "u_offset") cfg.u_offset = v;
    else if (param == "flight_time_s") cfg.flight_time_s = v;
    else return false;
    return true;
}

int sweep(const Common& common, const std::string& param, const std::vector<std::string>& values) {
    const auto base = load(common);
    config::ExperimentConfig probe = base;
    if (!apply_sweep_value(probe, param, 0.0)) {
        throw config::ConfigError(config::ConfigError::Kind::unknown_key, param,
                                  "UnknownParameter: sweepable parameters are reflectivity, pulse_angle, "
                                  "u_offset, flight_time_s");
    }
    std::vector<double> parsed;
    for (const auto& text : values) {
        const auto v = io::parse_double(text);
        if (!v) throw config::ConfigError(config::ConfigError::Kind::validation, "--values", "not a number: " + text);
        parsed.push_back(*v);
    }
    Stopwatch timer("sweep");
    std::vector<io::SweepRow> rows;
    for (double v : parsed) {
        auto cfg = base;
        apply_sweep_value(cfg, param, v);
        config::validate(cfg);
        const auto run = models::run_experiment(cfg.experiment, cfg.model, cfg.eraser, config::to_params(cfg));
        rows.push_back({v, run.report});
    }
    const std::string csv = io::sweep_csv(param, rows);
    io::write_file(out_path(common, "sweep_" + param + ".csv"), csv);
    std::fputs(csv.c_str(), stdout);
    return kOk;
}

int matrix(const Common& common) {
    const auto cfg = load(common);
    Stopwatch timer("matrix");
    const std::string csv = io::matrix_csv(models::prediction_matrix(config::to_params(cfg)));
    io::write_file(out_path(common, "matrix.csv"), csv);
    std::fputs(csv.c_str(), stdout);
    return kOk;
}

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--config", common.config_path, "Config file (sectioned YAML); defaults when omitted")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", common.out_dir, "Output directory (verify writes verify.txt only when given)");
    cmd->add_option("--seed", common.seed, "Seed for sampled checks; overrides the config");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Which-way interferometer predictions under three coherence models"};
    app.require_subcommand(1);

    Common common;
    bool flip = false;
    std::string param;
    std::vector<std::string> values;

    auto* sim = app.add_subcommand("simulate", "Run the configured experiment; write profiles and report.txt");
    add_common(sim, common);
    auto* ver = app.add_subcommand("verify", "Run the law suite; exit 1 if any law fails");
    add_common(ver, common);
    ver->add_flag("--flip-gamma-sign", flip)->group("");
    auto* swp = app.add_subcommand("sweep", "Rerun the experiment over a list of parameter values");
    add_common(swp, common);
    swp->add_option("--param", param, "reflectivity, pulse_angle, u_offset or flight_time_s")->required();
    swp->add_option("--values", values, "Comma-separated values")->required()->delimiter(',')->allow_extra_args(false);
    auto* mat = app.add_subcommand("matrix", "Tabulate visibilities for every experiment and model");
    add_common(mat, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*sim) return simulate(common);
        if (*ver) return run_verify(common, flip);
        if (*swp) return sweep(common, param, values);
        if (*mat) return matrix(common);
    } catch (const config::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const galilei::Error& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return kRuntimeError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return kRuntimeError;
    }
    return kRuntimeError;
}
