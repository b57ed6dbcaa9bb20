#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dfrc/experiments.hpp"

using namespace dfrc;
using namespace dfrc::experiments;

namespace {

enum Exit { kOk = 0, kInfeasible = 2, kSolverFailure = 3, kConfigError = 4 };

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> v;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad value '" + item + "' in --values");
        }
    }
    return v;
}

int status_exit(const sdp::SdpSolution& sol, bool feasible) {
    if (feasible) return kOk;
    if (sol.status == sdp::SolveStatus::Optimal || sol.status == sdp::SolveStatus::Infeasible) return kInfeasible;
    return kSolverFailure;
}

int cmd_solve(const std::string& config, const std::string& out, const std::optional<std::uint64_t>& seed) {
    ScenarioConfig cfg = load_config(config);
    if (seed) cfg.seed = *seed;
    const ScenarioResult r = run_scenario(cfg);
    nlohmann::json j{{"config_hash", config_hash_hex(cfg)},
                     {"solution", to_json(r.solution)},
                     {"report", to_json(r.report)}};
    if (r.closed_form) j["closed_form"] = to_json(*r.closed_form);
    if (r.closed_form_delta) j["closed_form_delta"] = *r.closed_form_delta;
    open_out(out) << j.dump(2) << '\n';
    std::cerr << "status " << sdp::to_string(r.solution.status) << ", feasible " << r.report.feasible << "\n";
    return status_exit(r.solution, r.report.feasible);
}

int cmd_sweep(const std::string& config, const std::string& param, const std::string& values, int trials,
              const std::vector<std::string>& outputs, bool serial, const std::string& out) {
    const ScenarioConfig cfg = load_config(config);
    SweepSpec spec;
    spec.parameter = parse_sweep_param(param);
    spec.values = parse_values(values);
    spec.trials_per_point = trials;
    if (!outputs.empty()) spec.outputs = outputs;
    const SweepResult res = serial ? run_sweep_serial(cfg, spec) : run_sweep(cfg, spec);
    auto os = open_out(out);
    write_sweep_csv(os, cfg, res);
    return kOk;
}

int cmd_beampattern(const std::string& config, double step, const std::string& out) {
    const ScenarioConfig cfg = load_config(config);
    const ScenarioResult r = run_trial(cfg, 0, 0);
    if (!r.report.feasible) {
        std::cerr << "no feasible beamformer (status " << sdp::to_string(r.solution.status) << ")\n";
        return status_exit(r.solution, false);
    }
    auto os = open_out(out);
    write_beampattern_csv(os, cfg, beampattern(cfg.array, r.solution.beams, step));
    return kOk;
}

int cmd_validate_outage(const std::string& config, int mc_trials, const std::string& out) {
    const ScenarioConfig cfg = load_config(config);
    const ScenarioResult r = run_trial(cfg, 0, 0);
    if (!r.report.feasible) {
        std::cerr << "no feasible beamformer (status " << sdp::to_string(r.solution.status) << ")\n";
        return status_exit(r.solution, false);
    }
    const auto rows = validate_outage(r.scenario, r.solution, mc_trials, cfg.seed);
    auto os = open_out(out);
    write_outage_csv(os, cfg, rows);
    for (const auto& row : rows)
        if (!row.pass) std::cerr << "user " << row.user << " outage " << row.empirical_outage << " above bound\n";
    return kOk;
}

int cmd_closed_form(const std::string& config, double epsilon, const std::string& out) {
    const ScenarioConfig cfg = load_config(config);
    if (cfg.users.size() != 1) throw ConfigError("closed-form requires exactly one user");
    if (!(epsilon >= 0.0)) throw ConfigError("--epsilon must be >= 0");
    Rng rng = Rng::stream(cfg.seed, 0);
    const sdp::Scenario sc = make_scenario(cfg, rng);
    const auto& u = cfg.users.front();
    const CVector a_conj = steering_vector(cfg.array, cfg.theta0).conjugate();
    SuSolution s = su_solve(sc.channels.nominal.front(), a_conj, u.gamma, cfg.noise_var / cfg.power_budget,
                            u.sigma_delta, epsilon);
    s.w *= std::sqrt(cfg.power_budget);
    s.objective *= cfg.power_budget;
    nlohmann::json j{{"config_hash", config_hash_hex(cfg)}, {"epsilon", epsilon}, {"closed_form", to_json(s)}};
    open_out(out) << j.dump(2) << '\n';
    return s.feasible ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage-constrained DFRC beamforming"};
    app.require_subcommand(1);
    std::string config, out;

    auto* solve = app.add_subcommand("solve", "Solve one scenario, write solution and metrics as JSON");
    std::optional<std::uint64_t> seed;
    solve->add_option("--config", config)->required();
    solve->add_option("--out", out)->required();
    solve->add_option("--seed", seed, "Override the config seed");

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter, write mean/SE per point as CSV");
    std::string param, values;
    int trials = kDefaultTrialsPerPoint;
    bool full = false, serial = false;
    std::vector<std::string> outputs;
    sweep->add_option("--config", config)->required();
    sweep->add_option("--param", param, "gamma_db|outage_p|n_antennas|n_users|theta0_deg")->required();
    sweep->add_option("--values", values, "Comma-separated list")->required();
    sweep->add_option("--trials", trials, "Trials per point")->check(CLI::PositiveNumber);
    sweep->add_flag("--full", full, "1000 trials per point");
    sweep->add_option("--outputs", outputs, "Metric columns")->delimiter(',');
    sweep->add_flag("--serial", serial, "Run the single-threaded reference path");
    sweep->add_option("--out", out)->required();

    auto* beam = app.add_subcommand("beampattern", "Beampattern of the solved scenario as CSV");
    double step = 0.1;
    beam->add_option("--config", config)->required();
    beam->add_option("--grid-step-deg", step)->check(CLI::PositiveNumber);
    beam->add_option("--out", out)->required();

    auto* outage = app.add_subcommand("validate-outage", "Monte Carlo outage of the solved scenario as CSV");
    int mc = 10000;
    outage->add_option("--config", config)->required();
    outage->add_option("--mc-trials", mc)->check(CLI::PositiveNumber);
    outage->add_option("--out", out)->required();

    auto* cf = app.add_subcommand("closed-form", "Single-user closed-form solution as JSON");
    double epsilon = 0.0;
    cf->add_option("--config", config)->required();
    cf->add_option("--epsilon", epsilon)->required();
    cf->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*solve) return cmd_solve(config, out, seed);
        if (*sweep) return cmd_sweep(config, param, values, full ? 1000 : trials, outputs, serial, out);
        if (*beam) return cmd_beampattern(config, step, out);
        if (*outage) return cmd_validate_outage(config, mc, out);
        if (*cf) return cmd_closed_form(config, epsilon, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverFailure;
    }
    return kConfigError;
}
