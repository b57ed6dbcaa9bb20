#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfrc/closed_form.hpp"
#include "dfrc/metrics.hpp"
#include "dfrc/sdp/p7.hpp"

namespace dfrc::experiments {

/// Malformed or out-of-range configuration.
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

inline constexpr int kSchemaVersion = 1;

/// Internal units: radians and linear SINR. Files use degrees and dB.
struct ScenarioConfig {
    UlaConfig array;
    double theta0 = 0.0;
    std::vector<UserSpec> users;
    double noise_var = 1.0;
    double power_budget = 1.0;
    sdp::P7Options p7{};
    MetricOptions metrics{};
    std::uint64_t seed = 1;
    int mc_trials = 1000;

    void validate() const;  ///< throws ConfigError
};

ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_config(const std::string& path);

/// FNV-1a 64 of the canonical JSON dump.
std::uint64_t config_hash(const ScenarioConfig& cfg);
std::string config_hash_hex(const ScenarioConfig& cfg);

/// Scenario with nominal channels drawn from `rng`.
sdp::Scenario make_scenario(const ScenarioConfig& cfg, Rng& rng);

struct ScenarioResult {
    sdp::Scenario scenario;
    sdp::SdpSolution solution;
    MetricReport report;
    /// K = 1 only: closed-form solution and (sdp - closed form) / closed form.
    std::optional<SuSolution> closed_form;
    std::optional<double> closed_form_delta;
};

/// One independent trial: channels and Monte Carlo draws come from
/// Rng::stream(cfg.seed, trial). Outage is estimated only when
/// mc_trials > 0.
ScenarioResult run_trial(const ScenarioConfig& cfg, std::uint64_t trial, int mc_trials);

/// run_trial(cfg, 0, cfg.mc_trials).
ScenarioResult run_scenario(const ScenarioConfig& cfg);

enum class SweepParam { GammaDb, OutageP, NAntennas, NUsers, Theta0Deg };

SweepParam parse_sweep_param(const std::string& name);  ///< throws ConfigError
std::string to_string(SweepParam p);

/// Copy of `cfg` with the swept quantity set to `value` (every user for
/// per-user quantities; n_users replicates the first user).
ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepParam p, double value);

inline constexpr int kDefaultTrialsPerPoint = 200;

struct SweepSpec {
    SweepParam parameter = SweepParam::GammaDb;
    std::vector<double> values;
    int trials_per_point = kDefaultTrialsPerPoint;
    /// Any of: sum_rate, avg_rate_per_user, min_user_rate, ismr_inv_db,
    /// p_detect, max_outage, objective, max_rank_defect.
    std::vector<std::string> outputs{"sum_rate"};

    void validate() const;  ///< throws ConfigError
};

struct MetricStat {
    double mean = 0.0;
    double std_error = 0.0;  ///< NaN for fewer than two samples
    int count = 0;
};

struct SweepRow {
    double value = 0.0;
    int trials = 0;
    int feasible = 0;
    int solver_failures = 0;  ///< statuses other than Optimal / Infeasible
    double feasibility_rate = 0.0;
    double feasibility_se = 0.0;
    std::vector<MetricStat> metrics;  ///< in SweepSpec::outputs order, over feasible trials
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
};

/// Trial t of every point uses Rng::stream(cfg.seed, t). Trials run under
/// OpenMP; results are merged by index.
SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec);

/// Single-threaded reference; bit-identical to run_sweep.
SweepResult run_sweep_serial(const ScenarioConfig& cfg, const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const ScenarioConfig& cfg, const SweepResult& result);

struct BeampatternPoint {
    double theta_deg = 0.0;
    double power_db = 0.0;
};

/// Bartlett power of sum_k w_k w_k^H on [-90, 90] deg, normalized to a
/// 0 dB peak.
std::vector<BeampatternPoint> beampattern(const UlaConfig& array, const std::vector<CVector>& beams,
                                          double step_deg = 0.1);

void write_beampattern_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<BeampatternPoint>& pts);

struct OutageRow {
    int user = 0;
    double gamma_db = 0.0;
    double outage_p = 0.0;
    double empirical_outage = 0.0;
    double bound = 0.0;  ///< p + 3 sqrt(p (1 - p) / trials)
    bool pass = false;
};

/// Per-user Monte Carlo outage of a solved scenario.
std::vector<OutageRow> validate_outage(const sdp::Scenario& scenario, const sdp::SdpSolution& solution,
                                       int mc_trials, std::uint64_t seed);

void write_outage_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<OutageRow>& rows);

nlohmann::json to_json(const sdp::SdpSolution& s);
nlohmann::json to_json(const MetricReport& r);
nlohmann::json to_json(const SuSolution& s);

}  // namespace dfrc::experiments
