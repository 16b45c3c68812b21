// Copyright 2026 The pulsefid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pulsefid/cli.h"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "pulsefid/analytics.h"
#include "pulsefid/bangbang.h"
#include "pulsefid/montecarlo.h"

namespace pulsefid {

namespace {

using json = nlohmann::ordered_json;

/// Output of one subcommand: the data payload (CSV or JSON text) and an
/// optional summary that is written separately.
struct CommandResult {
    std::string data;
    json summary;
};

struct Common {
    uint64_t seed = kDefaultMasterSeed;
    unsigned workers = 0;
    std::string out = "-";
    std::string summary;
    std::string manifest;
};

void add_common(CLI::App *sub, Common &common, bool seeded) {
    if (seeded) {
        sub->add_option("--seed", common.seed, "Master seed")->capture_default_str();
        sub->add_option("--workers", common.workers, "Worker threads (0 = one per hardware thread)");
    }
    sub->add_option("--out", common.out, "Data output path ('-' for stdout)");
    sub->add_option("--summary", common.summary, "Summary JSON path (default stderr)");
    sub->add_option("--manifest", common.manifest, "Write a run manifest to this path");
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

void write_text(const std::string &path, const std::string &text, std::ostream &fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        fallback.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << text;
}

/// Shared noise and initial-state flags of the sequence subcommands.
struct SequenceFlags {
    uint64_t n = 400;
    double delta = 0.0;
    std::string model = "amplitude";
    std::string initial = "uniform";
    double theta = 0.0;
    double phi = 0.0;

    void add(CLI::App *sub) {
        sub->add_option("--n", n, "Number of cycles N (two pulses each)")->capture_default_str();
        sub->add_option("--delta", delta, "Per-pulse error standard deviation (radians)")->required();
        sub->add_option("--model", model, "Noise model")
            ->check(CLI::IsMember({"amplitude", "phase"}))
            ->capture_default_str();
        sub->add_option("--initial", initial, "Initial state: uniform, worst or fixed")
            ->check(CLI::IsMember({"uniform", "worst", "fixed"}))
            ->capture_default_str();
        sub->add_option("--theta", theta, "Colatitude for --initial fixed");
        sub->add_option("--phi", phi, "Azimuth for --initial fixed");
    }

    SequenceConfig config(uint64_t seed) const {
        SequenceConfig c;
        c.n_cycles = n;
        c.model = NoiseModel{parse_noise_kind(model), delta};
        if (initial == "uniform") {
            c.initial_state = InitialState::uniform();
        } else if (initial == "worst") {
            c.initial_state = InitialState::worst_case();
        } else {
            c.initial_state = InitialState::fixed(theta, phi);
        }
        c.master_seed = seed;
        c.validate();
        return c;
    }

    void to_json(json &j) const {
        j["n"] = n;
        j["delta"] = delta;
        j["model"] = model;
        j["initial"] = initial;
        j["theta"] = theta;
        j["phi"] = phi;
    }
};

/// Closed-form target for an ensemble, when one exists.
json closed_form_mean(const SequenceConfig &c) {
    switch (c.initial_state.kind) {
        case InitialState::Kind::UniformRandom:
            return mean_fidelity(c.n_cycles, c.model);
        case InitialState::Kind::WorstCase:
            return worst_case_mean_fidelity(c.n_cycles, c.model);
        case InitialState::Kind::FixedBloch:
            break;
    }
    return nullptr;
}

json stats_json(const EnsembleStats &s, const json &target) {
    json j;
    j["mean"] = s.mean;
    j["std_error"] = s.std_error;
    j["n_samples"] = s.n_samples;
    j["closed_form_mean"] = target;
    if (target.is_number() && s.std_error > 0.0) {
        j["z_score"] = (s.mean - target.get<double>()) / s.std_error;
    }
    return j;
}

void require_positive(double v, const char *name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument(std::string(name) + " must be finite and positive");
    }
}

/// One registered subcommand.
struct Command {
    CLI::App *app = nullptr;
    Common common;
    std::function<CommandResult()> run;
    std::function<json()> parameters;
    bool seeded = true;
};

struct MeanFidelityCmd {
    uint64_t n = 1;
    double delta = 0.0;
    std::string model = "amplitude";

    void add(CLI::App *sub) {
        sub->add_option("--n", n, "Number of cycles N")->required();
        sub->add_option("--delta", delta, "Per-pulse error standard deviation (radians)")->required();
        sub->add_option("--model", model, "Noise model")
            ->check(CLI::IsMember({"amplitude", "phase"}))
            ->capture_default_str();
    }
    json parameters() const {
        return json{{"n", n}, {"delta", delta}, {"model", model}};
    }
    CommandResult run() const {
        NoiseModel m{parse_noise_kind(model), delta};
        if (n == 0) {
            throw std::invalid_argument("--n must be at least 1");
        }
        json j;
        j["n_cycles"] = n;
        j["delta"] = delta;
        j["model"] = model;
        j["effective_n_delta_sq"] = effective_n_delta_sq(n, m);
        j["mean_fidelity"] = mean_fidelity(n, m);
        j["worst_case_mean_fidelity"] = worst_case_mean_fidelity(n, m);
        return {dump(j), nullptr};
    }
};

struct PdfCmd {
    double n_delta_sq = 1.0;
    size_t grid_size = 201;
    QuadratureSpec spec;
    double endpoint_delta = 1e-6;
    bool check_normalization = false;
    bool mc_check = false;
    uint64_t samples = 1000000;
    size_t bins = 100;
    uint64_t mc_cycles = 25;
    const Common *common = nullptr;

    void add(CLI::App *sub) {
        sub->add_option("--n-delta-sq", n_delta_sq, "N Delta^2")->required();
        sub->add_option("--grid-size", grid_size, "Number of fidelity grid points")->capture_default_str();
        sub->add_option("--points", spec.n_points, "Gauss-Legendre nodes per image term")->capture_default_str();
        sub->add_option("--term-cap", spec.n_term_cap, "Largest |n| in the image sum")->capture_default_str();
        sub->add_option("--term-tol", spec.term_tol, "Drop image terms below this")->capture_default_str();
        sub->add_option("--endpoint-delta", endpoint_delta, "Grid spans (d, 1 - d)")->capture_default_str();
        sub->add_flag("--check-normalization", check_normalization, "Report integral and first moment");
        sub->add_flag("--mc-check", mc_check, "Compare bin masses with a Monte Carlo histogram");
        sub->add_option("--samples", samples, "Monte Carlo samples for --mc-check")->capture_default_str();
        sub->add_option("--bins", bins, "Histogram bins for --mc-check")->capture_default_str();
        sub->add_option("--mc-cycles", mc_cycles, "Cycles per Monte Carlo trajectory")->capture_default_str();
    }
    json parameters() const {
        return json{{"n-delta-sq", n_delta_sq},
                    {"grid-size", grid_size},
                    {"points", spec.n_points},
                    {"term-cap", spec.n_term_cap},
                    {"term-tol", spec.term_tol},
                    {"endpoint-delta", endpoint_delta},
                    {"check-normalization", check_normalization},
                    {"mc-check", mc_check},
                    {"samples", samples},
                    {"bins", bins},
                    {"mc-cycles", mc_cycles},
                    {"seed", common->seed}};
    }
    CommandResult run() const {
        require_positive(n_delta_sq, "--n-delta-sq");
        spec.validate();
        PdfGrid grid = fidelity_pdf_grid(n_delta_sq, grid_size, spec, endpoint_delta);
        std::string csv = "fidelity,density\n";
        for (size_t i = 0; i < grid.fidelity_points.size(); i++) {
            csv += format_double(grid.fidelity_points[i]) + "," + format_double(grid.densities[i]) + "\n";
        }
        json summary;
        summary["n_delta_sq"] = n_delta_sq;
        summary["grid_points"] = grid.fidelity_points.size();
        if (check_normalization) {
            PdfIntegral mass = integrate_pdf(n_delta_sq, 0, spec, endpoint_delta);
            PdfIntegral first = integrate_pdf(n_delta_sq, 1, spec, endpoint_delta);
            double target = mean_fidelity_at(n_delta_sq);
            summary["normalization"] = {{"total", mass.total()},
                                        {"interior", mass.interior},
                                        {"lower_tail", mass.lower_tail},
                                        {"upper_tail", mass.upper_tail},
                                        {"grid_trapezoid", grid.integrate(0)},
                                        {"within_2e-3", std::abs(mass.total() - 1.0) <= 2e-3}};
            summary["first_moment"] = {{"total", first.total()},
                                       {"closed_form_mean", target},
                                       {"grid_trapezoid", grid.integrate(1)},
                                       {"within_2e-3", std::abs(first.total() - target) <= 2e-3}};
        }
        if (mc_check) {
            if (mc_cycles == 0) {
                throw std::invalid_argument("--mc-cycles must be at least 1");
            }
            SequenceConfig config;
            config.n_cycles = mc_cycles;
            config.model = NoiseModel{NoiseKind::Amplitude, std::sqrt(n_delta_sq / static_cast<double>(mc_cycles))};
            config.initial_state = InitialState::uniform();
            config.master_seed = common->seed;
            FidelityHistogram hist = ensemble_histogram(config, samples, bins, common->workers);
            double n = static_cast<double>(hist.n_samples);
            double worst_z = 0.0;
            size_t outside = 0;
            for (size_t b = 0; b < bins; b++) {
                double p = pdf_bin_probability(hist.bin_edges[b], hist.bin_edges[b + 1], n_delta_sq, spec);
                double se = std::sqrt(n * p * (1.0 - p));
                double z = (static_cast<double>(hist.counts[b]) - n * p) / se;
                worst_z = std::max(worst_z, std::abs(z));
                outside += std::abs(z) > 4.0 ? 1 : 0;
            }
            summary["mc_check"] = {{"samples", hist.n_samples},
                                   {"bins", bins},
                                   {"max_abs_z", worst_z},
                                   {"bins_beyond_4_se", outside},
                                   {"mc_mean", hist.summary.mean},
                                   {"mc_std_error", hist.summary.std_error}};
        }
        return {csv, summary};
    }
};

struct EnsembleCmd {
    SequenceFlags flags;
    uint64_t samples = 100000;
    size_t bins = 100;
    const Common *common = nullptr;

    void add(CLI::App *sub) {
        flags.add(sub);
        sub->add_option("--samples", samples, "Number of trajectories")->capture_default_str();
        sub->add_option("--bins", bins, "Histogram bins")->capture_default_str();
    }
    json parameters() const {
        json j;
        flags.to_json(j);
        j["samples"] = samples;
        j["bins"] = bins;
        j["seed"] = common->seed;
        return j;
    }
    CommandResult run() const {
        SequenceConfig config = flags.config(common->seed);
        FidelityHistogram hist = ensemble_histogram(config, samples, bins, common->workers);
        std::string csv = "bin_lo,bin_hi,count\n";
        for (size_t b = 0; b < hist.counts.size(); b++) {
            csv += format_double(hist.bin_edges[b]) + "," + format_double(hist.bin_edges[b + 1]) + "," +
                   std::to_string(hist.counts[b]) + "\n";
        }
        return {csv, stats_json(hist.summary, closed_form_mean(config))};
    }
};

struct TrajectoryCmd {
    SequenceFlags flags;
    uint64_t trajectories = 3;
    uint64_t samples = 0;
    const Common *common = nullptr;

    void add(CLI::App *sub) {
        flags.add(sub);
        sub->add_option("--trajectories", trajectories, "Number of traces to emit")->capture_default_str();
        sub->add_option("--samples", samples, "Also report the final-cycle ensemble mean over this many samples");
    }
    json parameters() const {
        json j;
        flags.to_json(j);
        j["trajectories"] = trajectories;
        j["samples"] = samples;
        j["seed"] = common->seed;
        return j;
    }
    CommandResult run() const {
        if (trajectories == 0) {
            throw std::invalid_argument("--trajectories must be at least 1");
        }
        SequenceConfig config = flags.config(common->seed);
        std::vector<FidelityTrace> traces;
        json initial = json::array();
        for (uint64_t t = 0; t < trajectories; t++) {
            traces.push_back(simulate_trajectory(config, t));
            initial.push_back({{"theta", traces.back().initial_theta}, {"phi", traces.back().initial_phi}});
        }
        std::string csv = "cycle";
        for (uint64_t t = 0; t < trajectories; t++) {
            csv += ",fidelity_" + std::to_string(t);
        }
        csv += "\n";
        for (uint64_t k = 0; k < config.n_cycles; k++) {
            csv += std::to_string(k + 1);
            for (const auto &trace : traces) {
                csv += "," + format_double(trace.per_cycle_fidelity[k]);
            }
            csv += "\n";
        }
        json summary;
        summary["initial_states"] = initial;
        summary["effective_n_delta_sq"] = effective_n_delta_sq(config.n_cycles, config.model);
        if (samples > 0) {
            summary["final_cycle_ensemble"] =
                stats_json(ensemble_mean(config, samples, common->workers), closed_form_mean(config));
        }
        return {csv, summary};
    }
};

struct BangBangCmd {
    double omega = 1.0;
    double dt = 0.0;
    uint64_t n = 400;
    double delta = 0.0;
    std::string model = "amplitude";
    double theta = std::numbers::pi / 2;
    double phi = std::numbers::pi / 2;
    uint64_t samples = 0;
    uint64_t sample_index = 0;
    const Common *common = nullptr;

    void add(CLI::App *sub) {
        sub->add_option("--omega", omega, "Self-Hamiltonian frequency (hbar = 1)")->capture_default_str();
        sub->add_option("--dt", dt, "Free evolution between pulses (default 0.005 pi / omega)");
        sub->add_option("--n", n, "Number of cycles")->capture_default_str();
        sub->add_option("--delta", delta, "Per-pulse error standard deviation (radians)")->capture_default_str();
        sub->add_option("--model", model, "Noise model")
            ->check(CLI::IsMember({"amplitude", "phase"}))
            ->capture_default_str();
        sub->add_option("--theta", theta, "Initial colatitude (default: sigma_y eigenstate)");
        sub->add_option("--phi", phi, "Initial azimuth");
        sub->add_option("--samples", samples, "Also report the final-cycle ensemble mean over this many seeds");
        sub->add_option("--sample-index", sample_index, "Which seeded trajectory to emit")->capture_default_str();
    }
    void resolve() {
        if (dt == 0.0) {
            dt = 0.005 * std::numbers::pi / (omega != 0.0 ? std::abs(omega) : 1.0);
        }
    }
    json parameters() const {
        return json{{"omega", omega},   {"dt", dt},           {"n", n},
                    {"delta", delta},   {"model", model},     {"theta", theta},
                    {"phi", phi},       {"samples", samples}, {"sample-index", sample_index},
                    {"seed", common->seed}};
    }
    CommandResult run() const {
        BangBangConfig config;
        config.omega = omega;
        config.dt = dt;
        config.n_cycles = n;
        config.model = NoiseModel{parse_noise_kind(model), delta};
        config.initial_state = {theta, phi};
        config.master_seed = common->seed;
        config.validate();
        FidelityTrace controlled = bangbang_fidelity_trace(config, sample_index);
        FidelityTrace free = free_fidelity_trace(omega, 2.0 * dt, n, config.initial_state);
        std::string csv = "pulse_count,omega_t,free_fidelity,controlled_fidelity\n";
        for (uint64_t k = 0; k < n; k++) {
            double t = 2.0 * static_cast<double>(k + 1) * dt;
            csv += std::to_string(2 * (k + 1)) + "," + format_double(omega * t) + "," +
                   format_double(free.per_cycle_fidelity[k]) + "," + format_double(controlled.per_cycle_fidelity[k]) +
                   "\n";
        }
        json summary;
        summary["omega_dt"] = omega * dt;
        summary["effective_n_delta_sq"] = effective_n_delta_sq(n, config.model);
        if (samples > 0) {
            summary["final_cycle_ensemble"] = stats_json(bangbang_ensemble_mean(config, samples, common->workers),
                                                         worst_case_mean_fidelity(n, config.model));
        }
        return {csv, summary};
    }
};

struct BoundsCmd {
    double delta = 0.0;
    double tau_c = 1.0;

    void add(CLI::App *sub) {
        sub->add_option("--delta", delta, "Per-pulse error standard deviation (radians)")->required();
        sub->add_option("--tau-c", tau_c, "Environment correlation time")->capture_default_str();
    }
    json parameters() const {
        return json{{"delta", delta}, {"tau-c", tau_c}};
    }
    CommandResult run() const {
        json j;
        j["delta"] = delta;
        j["tau_c"] = tau_c;
        j["n_max"] = max_cycles(delta);
        j["t_max"] = max_protection_time(tau_c, delta);
        j["t_max_over_tau_c"] = max_protection_time(tau_c, delta) / tau_c;
        return {dump(j), nullptr};
    }
};

std::vector<std::string> manifest_to_args(const json &manifest) {
    std::vector<std::string> args{manifest.at("subcommand").get<std::string>()};
    for (const auto &[key, value] : manifest.at("parameters").items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                args.push_back("--" + key);
            }
            continue;
        }
        args.push_back("--" + key);
        if (value.is_number_float()) {
            args.push_back(format_double(value.get<double>()));
        } else if (value.is_string()) {
            args.push_back(value.get<std::string>());
        } else {
            args.push_back(value.dump());
        }
    }
    return args;
}

int run_parsed(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Two-level system driven by imperfect pi pulses: fidelity statistics and simulations", "pulsefid"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    MeanFidelityCmd mean_cmd;
    PdfCmd pdf_cmd;
    EnsembleCmd ensemble_cmd;
    TrajectoryCmd trajectory_cmd;
    BangBangCmd bangbang_cmd;
    BoundsCmd bounds_cmd;
    std::vector<Command> commands(6);

    auto bind = [&](size_t slot, const char *name, const char *help, auto &cmd, bool seeded) {
        Command &c = commands[slot];
        c.app = app.add_subcommand(name, help);
        c.seeded = seeded;
        cmd.add(c.app);
        add_common(c.app, c.common, seeded);
        if constexpr (requires { cmd.common; }) {
            cmd.common = &c.common;
        }
        c.run = [&cmd] { return cmd.run(); };
        c.parameters = [&cmd] { return cmd.parameters(); };
    };
    bind(0, "mean-fidelity", "Closed-form mean and worst-case mean fidelity", mean_cmd, false);
    bind(1, "pdf", "Fidelity probability density on a grid (CSV fidelity,density)", pdf_cmd, true);
    bind(2, "ensemble", "Monte Carlo histogram of final fidelities (CSV bin_lo,bin_hi,count)", ensemble_cmd, true);
    bind(3, "trajectory", "Per-cycle fidelity traces (CSV cycle,fidelity_0,...)", trajectory_cmd, true);
    bind(4, "bangbang", "Free versus bang-bang controlled evolution under H0 = omega sigma_z", bangbang_cmd, true);
    bind(5, "bounds", "Maximum cycle count and protection time", bounds_cmd, false);

    std::string replay_path;
    std::string replay_out;
    std::string replay_summary;
    CLI::App *replay = app.add_subcommand("replay", "Re-run a manifest written by --manifest");
    replay->add_option("manifest", replay_path, "Manifest JSON path")->required();
    replay->add_option("--out", replay_out, "Override the data output path");
    replay->add_option("--summary", replay_summary, "Override the summary output path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    if (replay->parsed()) {
        std::ifstream f(replay_path);
        if (!f) {
            err << "error: cannot read manifest '" << replay_path << "'\n";
            return kExitUsage;
        }
        json manifest = json::parse(f, nullptr, false);
        if (manifest.is_discarded() || !manifest.contains("subcommand") || !manifest.contains("parameters")) {
            err << "error: '" << replay_path << "' is not a pulsefid manifest\n";
            return kExitUsage;
        }
        std::vector<std::string> rerun = manifest_to_args(manifest);
        const json &outputs = manifest.value("outputs", json::object());
        std::string data_path = replay_out.empty() ? outputs.value("data", std::string("-")) : replay_out;
        std::string summary_path = replay_summary.empty() ? outputs.value("summary", std::string()) : replay_summary;
        rerun.insert(rerun.end(), {"--out", data_path});
        if (!summary_path.empty()) {
            rerun.insert(rerun.end(), {"--summary", summary_path});
        }
        return run_parsed(rerun, out, err);
    }

    for (auto &c : commands) {
        if (!c.app->parsed()) {
            continue;
        }
        if (c.app == commands[4].app) {
            bangbang_cmd.resolve();
        }
        CommandResult result = c.run();
        write_text(c.common.out, result.data, out);
        if (!result.summary.is_null()) {
            write_text(c.common.summary, dump(result.summary), err);
        }
        if (!c.common.manifest.empty()) {
            json manifest;
            manifest["tool"] = "pulsefid";
            manifest["version"] = kVersion;
            manifest["subcommand"] = c.app->get_name();
            manifest["parameters"] = c.parameters();
            if (c.seeded) {
                manifest["master_seed"] = c.common.seed;
                manifest["workers"] = c.common.workers;
            }
            manifest["outputs"] = {{"data", c.common.out}, {"summary", c.common.summary}};
            write_text(c.common.manifest, dump(manifest), err);
        }
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, end);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    try {
        return run_parsed(args, out, err);
    } catch (const ConvergenceError &e) {
        err << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace pulsefid
