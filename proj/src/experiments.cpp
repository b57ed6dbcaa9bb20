#include "dfrc/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>

#include "dfrc/chance_constraint.hpp"

namespace dfrc::experiments {

using nlohmann::json;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
}

const json& require(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing key '" + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key, const char* where) {
    const json& v = require(j, key, where);
    if (!v.is_number()) throw ConfigError(std::string(where) + ": '" + key + "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const char* where) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

int integer(const json& v, const char* what) {
    if (!v.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
    return v.get<int>();
}

UserSpec user_from_json(const json& u) {
    if (!u.is_object()) throw ConfigError("users: entries must be objects");
    reject_unknown_keys(u, {"gamma_db", "outage_p", "sigma_delta", "count"}, "users");
    UserSpec s;
    s.gamma = db_to_linear(number(u, "gamma_db", "users"));
    s.outage_p = number_or(u, "outage_p", 0.1, "users");
    s.sigma_delta = number_or(u, "sigma_delta", 0.1, "users");
    return s;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string norm_form_name(sdp::NormBoundForm f) { return f == sdp::NormBoundForm::SchurLmi ? "schur" : "soc"; }

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

const std::vector<std::string>& known_outputs() {
    static const std::vector<std::string> names{"sum_rate",     "avg_rate_per_user", "min_user_rate",
                                                "ismr_inv_db",  "p_detect",          "max_outage",
                                                "objective",    "max_rank_defect"};
    return names;
}

double metric_value(const std::string& name, const ScenarioResult& r) {
    const auto& rep = r.report;
    if (name == "sum_rate") return rep.sum_rate;
    if (name == "avg_rate_per_user") return rep.avg_rate_per_user;
    if (name == "min_user_rate")
        return rep.per_user_rate.empty() ? kNaN : *std::min_element(rep.per_user_rate.begin(), rep.per_user_rate.end());
    if (name == "ismr_inv_db") return rep.ismr_inv_db;
    if (name == "p_detect") return rep.p_detect;
    if (name == "max_outage")
        return rep.empirical_outage.empty()
                   ? kNaN
                   : *std::max_element(rep.empirical_outage.begin(), rep.empirical_outage.end());
    if (name == "objective") return r.solution.objective;
    if (name == "max_rank_defect")
        return r.solution.rank_defects.empty()
                   ? kNaN
                   : *std::max_element(r.solution.rank_defects.begin(), r.solution.rank_defects.end());
    throw ConfigError("unknown output metric '" + name + "'");
}

struct TrialOutcome {
    bool feasible = false;
    bool solver_failure = false;
    std::vector<double> values;
};

TrialOutcome evaluate_trial(const ScenarioConfig& cfg, const SweepSpec& spec, std::uint64_t trial, int mc) {
    TrialOutcome out;
    try {
        const ScenarioResult r = run_trial(cfg, trial, mc);
        const auto st = r.solution.status;
        out.solver_failure = st != sdp::SolveStatus::Optimal && st != sdp::SolveStatus::Infeasible;
        out.feasible = r.report.feasible;
        if (out.feasible)
            for (const auto& name : spec.outputs) out.values.push_back(metric_value(name, r));
    } catch (const std::exception&) {
        out.solver_failure = true;
        out.feasible = false;
    }
    return out;
}

SweepResult aggregate(const SweepSpec& spec, const std::vector<TrialOutcome>& outcomes) {
    SweepResult res;
    res.spec = spec;
    const int n = spec.trials_per_point;
    for (std::size_t p = 0; p < spec.values.size(); ++p) {
        SweepRow row;
        row.value = spec.values[p];
        row.trials = n;
        std::vector<std::vector<double>> samples(spec.outputs.size());
        for (int t = 0; t < n; ++t) {
            const auto& o = outcomes[p * n + t];
            row.solver_failures += o.solver_failure ? 1 : 0;
            if (!o.feasible) continue;
            ++row.feasible;
            for (std::size_t m = 0; m < o.values.size(); ++m)
                if (std::isfinite(o.values[m])) samples[m].push_back(o.values[m]);
        }
        row.feasibility_rate = static_cast<double>(row.feasible) / n;
        row.feasibility_se = std::sqrt(row.feasibility_rate * (1.0 - row.feasibility_rate) / n);
        for (const auto& s : samples) {
            MetricStat st;
            st.count = static_cast<int>(s.size());
            if (s.empty()) {
                st.mean = st.std_error = kNaN;
            } else {
                double sum = 0.0;
                for (double v : s) sum += v;
                st.mean = sum / st.count;
                if (st.count < 2) {
                    st.std_error = kNaN;
                } else {
                    double ss = 0.0;
                    for (double v : s) ss += (v - st.mean) * (v - st.mean);
                    st.std_error = std::sqrt(ss / (st.count - 1) / st.count);
                }
            }
            row.metrics.push_back(st);
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

int sweep_mc_trials(const ScenarioConfig& cfg, const SweepSpec& spec) {
    return std::count(spec.outputs.begin(), spec.outputs.end(), "max_outage") ? cfg.mc_trials : 0;
}

}  // namespace

void ScenarioConfig::validate() const {
    try {
        array.validate();
        if (!(theta0 >= -kPi / 2 && theta0 <= kPi / 2)) throw ConfigError("theta0 must lie in [-90, 90] deg");
        if (users.empty()) throw ConfigError("at least one user is required");
        for (const auto& u : users) u.validate();
        if (!(noise_var > 0.0) || !std::isfinite(noise_var)) throw ConfigError("noise_var must be > 0");
        if (!(power_budget > 0.0) || !std::isfinite(power_budget)) throw ConfigError("power_budget must be > 0");
        if (mc_trials < 1) throw ConfigError("mc_trials must be >= 1");
        if (!(p7.solver.tol_gap > 0.0) || !(p7.solver.tol_feas > 0.0) || p7.solver.max_iter < 1)
            throw ConfigError("solver tolerances must be positive");
        if (!(metrics.p_fa > 0.0 && metrics.p_fa < 1.0)) throw ConfigError("p_fa must lie in (0, 1)");
        if (!(metrics.snr_r_linear > 0.0)) throw ConfigError("snr_r must be positive");
        if (!(metrics.mainlobe_width > 0.0 && metrics.mainlobe_width < kPi))
            throw ConfigError("mainlobe width must lie in (0, 180) deg");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

ScenarioConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(j,
                        {"schema_version", "array", "theta0_deg", "users", "noise_var", "power_budget", "solver",
                         "metrics", "seed", "mc_trials"},
                        "config");
    try {
        if (integer(require(j, "schema_version", "config"), "schema_version") != kSchemaVersion)
            throw ConfigError("config: unsupported schema_version");
        ScenarioConfig c;

        const json& arr = require(j, "array", "config");
        if (!arr.is_object()) throw ConfigError("array must be an object");
        reject_unknown_keys(arr, {"n_antennas", "spacing_wavelengths"}, "array");
        c.array.n_antennas = integer(require(arr, "n_antennas", "array"), "array.n_antennas");
        c.array.spacing = number_or(arr, "spacing_wavelengths", 0.5, "array");

        c.theta0 = deg_to_rad(number(j, "theta0_deg", "config"));

        const json& users = require(j, "users", "config");
        if (users.is_array()) {
            for (const auto& u : users) {
                if (u.contains("count")) throw ConfigError("users: 'count' only allowed in the uniform form");
                c.users.push_back(user_from_json(u));
            }
        } else if (users.is_object()) {
            const int count = integer(require(users, "count", "users"), "users.count");
            if (count < 1) throw ConfigError("users.count must be >= 1");
            c.users.assign(count, user_from_json(users));
        } else {
            throw ConfigError("users must be a list or a {count, ...} object");
        }

        c.noise_var = number_or(j, "noise_var", 1.0, "config");
        c.power_budget = number_or(j, "power_budget", 1.0, "config");

        if (j.contains("solver")) {
            const json& s = j.at("solver");
            if (!s.is_object()) throw ConfigError("solver must be an object");
            reject_unknown_keys(s, {"tol_gap", "tol_abs_gap", "tol_feas", "max_iter", "norm_form"}, "solver");
            auto& ss = c.p7.solver;
            ss.tol_gap = number_or(s, "tol_gap", ss.tol_gap, "solver");
            ss.tol_abs_gap = number_or(s, "tol_abs_gap", ss.tol_abs_gap, "solver");
            ss.tol_feas = number_or(s, "tol_feas", ss.tol_feas, "solver");
            if (s.contains("max_iter")) ss.max_iter = integer(s.at("max_iter"), "solver.max_iter");
            if (s.contains("norm_form")) {
                const auto f = s.at("norm_form").get<std::string>();
                if (f == "soc") c.p7.norm_form = sdp::NormBoundForm::SecondOrderCone;
                else if (f == "schur") c.p7.norm_form = sdp::NormBoundForm::SchurLmi;
                else throw ConfigError("solver.norm_form must be 'soc' or 'schur'");
            }
        }
        if (j.contains("metrics")) {
            const json& m = j.at("metrics");
            if (!m.is_object()) throw ConfigError("metrics must be an object");
            reject_unknown_keys(m, {"mainlobe_width_deg", "snr_r_db", "p_fa"}, "metrics");
            c.metrics.mainlobe_width =
                deg_to_rad(number_or(m, "mainlobe_width_deg", rad_to_deg(c.metrics.mainlobe_width), "metrics"));
            c.metrics.snr_r_linear =
                db_to_linear(number_or(m, "snr_r_db", linear_to_db(c.metrics.snr_r_linear), "metrics"));
            c.metrics.p_fa = number_or(m, "p_fa", c.metrics.p_fa, "metrics");
        }
        if (j.contains("seed")) {
            const json& s = j.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
                throw ConfigError("seed must be a nonnegative integer");
            c.seed = s.get<std::uint64_t>();
        }
        if (j.contains("mc_trials")) c.mc_trials = integer(j.at("mc_trials"), "mc_trials");
        c.validate();
        return c;
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

json config_to_json(const ScenarioConfig& c) {
    json users = json::array();
    for (const auto& u : c.users)
        users.push_back({{"gamma_db", linear_to_db(u.gamma)}, {"outage_p", u.outage_p}, {"sigma_delta", u.sigma_delta}});
    const auto& s = c.p7.solver;
    return json{{"schema_version", kSchemaVersion},
                {"array", {{"n_antennas", c.array.n_antennas}, {"spacing_wavelengths", c.array.spacing}}},
                {"theta0_deg", rad_to_deg(c.theta0)},
                {"users", users},
                {"noise_var", c.noise_var},
                {"power_budget", c.power_budget},
                {"solver",
                 {{"tol_gap", s.tol_gap},
                  {"tol_abs_gap", s.tol_abs_gap},
                  {"tol_feas", s.tol_feas},
                  {"max_iter", s.max_iter},
                  {"norm_form", norm_form_name(c.p7.norm_form)}}},
                {"metrics",
                 {{"mainlobe_width_deg", rad_to_deg(c.metrics.mainlobe_width)},
                  {"snr_r_db", linear_to_db(c.metrics.snr_r_linear)},
                  {"p_fa", c.metrics.p_fa}}},
                {"seed", c.seed},
                {"mc_trials", c.mc_trials}};
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

std::uint64_t config_hash(const ScenarioConfig& cfg) { return fnv1a(config_to_json(cfg).dump()); }

std::string config_hash_hex(const ScenarioConfig& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, config_hash(cfg));
    return buf;
}

sdp::Scenario make_scenario(const ScenarioConfig& cfg, Rng& rng) {
    sdp::Scenario s;
    s.array = cfg.array;
    s.theta0 = cfg.theta0;
    s.power_budget = cfg.power_budget;
    s.channels.users = cfg.users;
    s.channels.noise_var = cfg.noise_var;
    s.channels.nominal = sample_nominal_channels(rng, static_cast<int>(cfg.users.size()), cfg.array.n_antennas);
    return s;
}

ScenarioResult run_trial(const ScenarioConfig& cfg, std::uint64_t trial, int mc_trials) {
    cfg.validate();
    Rng rng = Rng::stream(cfg.seed, trial);
    ScenarioResult r;
    r.scenario = make_scenario(cfg, rng);
    r.solution = sdp::solve_p7(r.scenario, cfg.p7);
    r.report = report(r.scenario, r.solution, rng, mc_trials, cfg.metrics);

    if (cfg.users.size() == 1) {
        // Unit-power form: budget P is the same as noise sigma^2 / P, objective x P.
        const auto& u = cfg.users.front();
        const CVector a_conj = steering_vector(cfg.array, cfg.theta0).conjugate();
        SuSolution cf = su_solve(r.scenario.channels.nominal.front(), a_conj, u.gamma,
                                 cfg.noise_var / cfg.power_budget, u.sigma_delta, -std::log(u.outage_p));
        cf.w *= std::sqrt(cfg.power_budget);
        cf.objective *= cfg.power_budget;
        if (cf.feasible && r.solution.optimal())
            r.closed_form_delta = (r.solution.objective - cf.objective) / cf.objective;
        r.closed_form = std::move(cf);
    }
    return r;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) { return run_trial(cfg, 0, cfg.mc_trials); }

SweepParam parse_sweep_param(const std::string& name) {
    if (name == "gamma_db") return SweepParam::GammaDb;
    if (name == "outage_p") return SweepParam::OutageP;
    if (name == "n_antennas") return SweepParam::NAntennas;
    if (name == "n_users") return SweepParam::NUsers;
    if (name == "theta0_deg") return SweepParam::Theta0Deg;
    throw ConfigError("unknown sweep parameter '" + name + "'");
}

std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::GammaDb: return "gamma_db";
        case SweepParam::OutageP: return "outage_p";
        case SweepParam::NAntennas: return "n_antennas";
        case SweepParam::NUsers: return "n_users";
        case SweepParam::Theta0Deg: return "theta0_deg";
    }
    return "?";
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepParam p, double value) {
    ScenarioConfig c = cfg;
    auto as_count = [&](const char* what) {
        if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
            throw ConfigError(std::string(what) + " values must be positive integers");
        return static_cast<int>(value);
    };
    switch (p) {
        case SweepParam::GammaDb:
            for (auto& u : c.users) u.gamma = db_to_linear(value);
            break;
        case SweepParam::OutageP:
            if (!(value > 0.0 && value < 1.0)) throw ConfigError("outage_p values must lie in (0, 1)");
            for (auto& u : c.users) u.outage_p = value;
            break;
        case SweepParam::NAntennas: c.array.n_antennas = as_count("n_antennas"); break;
        case SweepParam::NUsers: c.users.assign(as_count("n_users"), cfg.users.front()); break;
        case SweepParam::Theta0Deg:
            if (!(value >= -90.0 && value <= 90.0)) throw ConfigError("theta0_deg values must lie in [-90, 90]");
            c.theta0 = deg_to_rad(value);
            break;
    }
    c.validate();
    return c;
}

void SweepSpec::validate() const {
    if (values.empty()) throw ConfigError("sweep: no values");
    if (trials_per_point < 1) throw ConfigError("sweep: trials_per_point must be >= 1");
    if (outputs.empty()) throw ConfigError("sweep: no outputs");
    for (const auto& o : outputs)
        if (std::find(known_outputs().begin(), known_outputs().end(), o) == known_outputs().end())
            throw ConfigError("sweep: unknown output metric '" + o + "'");
    for (double v : values)
        if (!std::isfinite(v)) throw ConfigError("sweep: non-finite value");
}

SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec) {
    spec.validate();
    std::vector<ScenarioConfig> points;
    for (double v : spec.values) points.push_back(apply_sweep_value(cfg, spec.parameter, v));
    const int mc = sweep_mc_trials(cfg, spec);
    const long n = spec.trials_per_point;
    const long total = static_cast<long>(points.size()) * n;
    std::vector<TrialOutcome> outcomes(total);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i)
        outcomes[i] = evaluate_trial(points[i / n], spec, static_cast<std::uint64_t>(i % n), mc);
    return aggregate(spec, outcomes);
}

SweepResult run_sweep_serial(const ScenarioConfig& cfg, const SweepSpec& spec) {
    spec.validate();
    std::vector<ScenarioConfig> points;
    for (double v : spec.values) points.push_back(apply_sweep_value(cfg, spec.parameter, v));
    const int mc = sweep_mc_trials(cfg, spec);
    const long n = spec.trials_per_point;
    const long total = static_cast<long>(points.size()) * n;
    std::vector<TrialOutcome> outcomes(total);
    for (long i = 0; i < total; ++i)
        outcomes[i] = evaluate_trial(points[i / n], spec, static_cast<std::uint64_t>(i % n), mc);
    return aggregate(spec, outcomes);
}

void write_sweep_csv(std::ostream& os, const ScenarioConfig& cfg, const SweepResult& result) {
    const auto& spec = result.spec;
    os << "# dfrc sweep\n";
    os << "# config_hash=" << config_hash_hex(cfg) << "\n";
    os << "# param=" << to_string(spec.parameter) << " trials_per_point=" << spec.trials_per_point
       << " seed=" << cfg.seed << "\n";
    os << to_string(spec.parameter) << ",trials,feasible,solver_failures,feasibility_rate,feasibility_rate_se";
    for (const auto& m : spec.outputs) os << ',' << m << "_mean," << m << "_se";
    os << '\n';
    for (const auto& row : result.rows) {
        os << fmt(row.value) << ',' << row.trials << ',' << row.feasible << ',' << row.solver_failures << ','
           << fmt(row.feasibility_rate) << ',' << fmt(row.feasibility_se);
        for (const auto& st : row.metrics) os << ',' << fmt(st.mean) << ',' << fmt(st.std_error);
        os << '\n';
    }
}

std::vector<BeampatternPoint> beampattern(const UlaConfig& array, const std::vector<CVector>& beams,
                                          double step_deg) {
    if (!(step_deg > 0.0) || step_deg > 180.0) throw ValidationError("beampattern: step must lie in (0, 180] deg");
    if (beams.empty()) throw ValidationError("beampattern: no beams");
    CMatrix r = CMatrix::Zero(array.n_antennas, array.n_antennas);
    for (const auto& w : beams) {
        if (w.size() != array.n_antennas) throw ValidationError("beampattern: beam size does not match the array");
        r += w * w.adjoint();
    }
    const long n = std::lround(180.0 / step_deg) + 1;
    std::vector<BeampatternPoint> pts(n);
    double peak = 0.0;
    for (long i = 0; i < n; ++i) {
        pts[i].theta_deg = std::min(90.0, -90.0 + static_cast<double>(i) * step_deg);
        pts[i].power_db = std::max(0.0, bartlett_power(array, r, deg_to_rad(pts[i].theta_deg)));
        peak = std::max(peak, pts[i].power_db);
    }
    for (auto& p : pts) p.power_db = peak > 0.0 ? 10.0 * std::log10(std::max(p.power_db / peak, 1e-30)) : -300.0;
    return pts;
}

void write_beampattern_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<BeampatternPoint>& pts) {
    os << "# dfrc beampattern\n# config_hash=" << config_hash_hex(cfg) << "\n";
    os << "theta_deg,power_db\n";
    for (const auto& p : pts) os << fmt(p.theta_deg) << ',' << fmt(p.power_db) << '\n';
}

std::vector<OutageRow> validate_outage(const sdp::Scenario& scenario, const sdp::SdpSolution& solution,
                                       int mc_trials, std::uint64_t seed) {
    if (mc_trials < 1) throw ValidationError("validate_outage: mc_trials must be >= 1");
    if (solution.beams.size() != static_cast<std::size_t>(scenario.n_users()))
        throw ValidationError("validate_outage: solution has no beams for every user");
    std::vector<CMatrix> w_set;
    for (const auto& w : solution.beams) w_set.push_back(w * w.adjoint());
    std::vector<OutageRow> rows;
    for (int k = 0; k < scenario.n_users(); ++k) {
        const auto& u = scenario.channels.users[k];
        OutageRow r;
        r.user = k;
        r.gamma_db = linear_to_db(u.gamma);
        r.outage_p = u.outage_p;
        const std::uint64_t s = Rng::stream(seed, static_cast<std::uint64_t>(k)).next_u64();
        r.empirical_outage = monte_carlo_outage(std::span<const CMatrix>(w_set), k, scenario.channels.nominal[k], u,
                                                scenario.channels.noise_var, mc_trials, s);
        r.bound = u.outage_p + 3.0 * std::sqrt(u.outage_p * (1.0 - u.outage_p) / mc_trials);
        r.pass = r.empirical_outage <= r.bound;
        rows.push_back(r);
    }
    return rows;
}

void write_outage_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<OutageRow>& rows) {
    os << "# dfrc validate-outage\n# config_hash=" << config_hash_hex(cfg) << "\n";
    os << "user,gamma_db,outage_p,empirical_outage,bound,pass\n";
    for (const auto& r : rows)
        os << r.user << ',' << fmt(r.gamma_db) << ',' << fmt(r.outage_p) << ',' << fmt(r.empirical_outage) << ','
           << fmt(r.bound) << ',' << (r.pass ? 1 : 0) << '\n';
}

namespace {

json interleaved(const CVector& w) {
    json a = json::array();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        a.push_back(w(i).real());
        a.push_back(w(i).imag());
    }
    return a;
}

// NaN is not valid JSON.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

}  // namespace

json to_json(const sdp::SdpSolution& s) {
    json beams = json::array();
    for (const auto& w : s.beams) beams.push_back(interleaved(w));
    return json{{"status", std::string(sdp::to_string(s.status))},
                {"objective", num(s.objective)},
                {"duality_gap", num(s.duality_gap)},
                {"iterations", s.iterations},
                {"nu", nums(s.nu)},
                {"mu", nums(s.mu)},
                {"rank_defects", nums(s.rank_defects)},
                {"w", beams}};
}

json to_json(const MetricReport& r) {
    return json{{"feasible", r.feasible},
                {"per_user_rate", nums(r.per_user_rate)},
                {"sum_rate", num(r.sum_rate)},
                {"avg_rate_per_user", num(r.avg_rate_per_user)},
                {"empirical_outage", nums(r.empirical_outage)},
                {"ismr", num(r.ismr)},
                {"ismr_inv_db", num(r.ismr_inv_db)},
                {"p_detect", num(r.p_detect)}};
}

json to_json(const SuSolution& s) {
    return json{{"feasible", s.feasible},
                {"branch", s.branch == SuBranch::Bartlett ? "bartlett" : "mixture"},
                {"rho", num(s.rho)},
                {"lambda_threshold", num(s.lambda_threshold)},
                {"objective", num(s.objective)},
                {"root_anomaly", s.root_anomaly},
                {"w", interleaved(s.w)}};
}

}  // namespace dfrc::experiments
