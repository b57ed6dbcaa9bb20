#include "dfrc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dfrc/chance_constraint.hpp"
#include "dfrc/channel_model.hpp"

namespace dfrc {

namespace {

CMatrix sum_covariance(std::span<const CMatrix> w_set) {
    if (w_set.empty()) throw ValidationError("metrics: empty beamformer set");
    CMatrix r = w_set.front();
    for (std::size_t k = 1; k < w_set.size(); ++k) {
        if (w_set[k].rows() != r.rows()) throw ValidationError("metrics: beamformer size mismatch");
        r += w_set[k];
    }
    return r;
}

std::vector<CMatrix> outer_products(std::span<const CVector> beams) {
    std::vector<CMatrix> out;
    out.reserve(beams.size());
    for (const auto& w : beams) out.push_back(w * w.adjoint());
    return out;
}

// Tr(R conj(M)) for Hermitian R, M: power integrals use a*(theta) a^T(theta).
double trace_conj(const CMatrix& r, const CMatrix& m) { return (r.cwiseProduct(m)).sum().real(); }

}  // namespace

double ismr(std::span<const CMatrix> w_set, const UlaConfig& cfg, double theta0, double mainlobe_width) {
    const CMatrix r = sum_covariance(w_set);
    if (r.rows() != cfg.n_antennas) throw ValidationError("ismr: beamformer size does not match the array");
    const double main = trace_conj(r, lobe_matrix(cfg, AngularRegion::mainlobe(theta0, mainlobe_width)));
    if (!(main > 0.0)) throw DomainError("ismr: mainlobe power is not positive");
    const AngularRegion side = AngularRegion::sidelobes(theta0, mainlobe_width);
    const double sl = side.empty() ? 0.0 : trace_conj(r, lobe_matrix(cfg, side));
    return sl / main;
}

double ismr(std::span<const CVector> beams, const UlaConfig& cfg, double theta0, double mainlobe_width) {
    const auto w = outer_products(beams);
    return ismr(std::span<const CMatrix>(w), cfg, theta0, mainlobe_width);
}

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("marcum_q1: arguments must be finite and nonnegative");
    if (b == 0.0) return 1.0;
    const double mu = 0.5 * a * a;  // Poisson mean of the mixture index
    const double nu = 0.5 * b * b;
    if (mu == 0.0) return std::exp(-nu);

    // Q_1 = sum_j Pois(j; mu) P(Pois(nu) <= j). Weights are summed well past
    // the Poisson tail (< 1e-30 remaining).
    const double spread = std::sqrt(mu) + 1.0;
    const auto j_hi = static_cast<long>(mu + 40.0 * spread + 50.0);
    const double log_mu = std::log(mu);
    const double log_nu = std::log(nu);
    double inner = 0.0;  // P(Pois(nu) <= j)
    double q = 0.0;
    double total = 0.0;  // sum of the weights, 1 up to rounding
    for (long j = 0; j <= j_hi; ++j) {
        const double jj = static_cast<double>(j);
        inner += std::exp(-nu + jj * log_nu - std::lgamma(jj + 1.0));
        const double lw = -mu + jj * log_mu - std::lgamma(jj + 1.0);
        if (lw > -745.0) {
            const double wgt = std::exp(lw);
            q += wgt * std::min(inner, 1.0);
            total += wgt;
        }
    }
    return std::clamp(q / total, 0.0, 1.0);
}

double noncentral_chi2_2_cdf(double x, double noncentrality) {
    if (!(noncentrality >= 0.0)) throw DomainError("noncentral_chi2_2_cdf: negative noncentrality");
    if (x <= 0.0) return 0.0;
    return 1.0 - marcum_q1(std::sqrt(noncentrality), std::sqrt(x));
}

double detection_probability(double noncentrality, double p_fa) {
    if (!(p_fa > 0.0 && p_fa <= 1.0)) throw DomainError("detection_probability: p_fa must lie in (0, 1]");
    if (!(noncentrality >= 0.0) || !std::isfinite(noncentrality))
        throw DomainError("detection_probability: noncentrality must be finite and nonnegative");
    if (p_fa == 1.0) return 1.0;
    if (noncentrality == 0.0) return p_fa;
    const double t = -2.0 * std::log(p_fa);
    return marcum_q1(std::sqrt(noncentrality), std::sqrt(t));
}

double detection_noncentrality(std::span<const CMatrix> w_set, const UlaConfig& cfg, double theta0,
                               double snr_r_linear) {
    if (!(snr_r_linear > 0.0)) throw DomainError("detection_noncentrality: snr_r must be > 0");
    const CMatrix r = sum_covariance(w_set);
    const double p = bartlett_power(cfg, r, theta0);
    return snr_r_linear * p * p;
}

double detection_probability(std::span<const CMatrix> w_set, const UlaConfig& cfg, double theta0,
                             double snr_r_linear, double p_fa) {
    return detection_probability(detection_noncentrality(w_set, cfg, theta0, snr_r_linear), p_fa);
}

double feasibility_rate(std::span<const bool> outcomes) {
    if (outcomes.empty()) throw ValidationError("feasibility_rate: empty outcome list");
    const auto n = std::count(outcomes.begin(), outcomes.end(), true);
    return static_cast<double>(n) / static_cast<double>(outcomes.size());
}

double feasibility_rate(const std::vector<bool>& outcomes) {
    if (outcomes.empty()) throw ValidationError("feasibility_rate: empty outcome list");
    const auto n = std::count(outcomes.begin(), outcomes.end(), true);
    return static_cast<double>(n) / static_cast<double>(outcomes.size());
}

MetricReport report(const sdp::Scenario& scenario, const sdp::SdpSolution& solution, Rng& rng, int mc_trials,
                    const MetricOptions& options) {
    if (mc_trials < 0) throw ValidationError("report: mc_trials must be >= 0");
    MetricReport rep;
    rep.feasible = sdp::solution_feasible(scenario, solution);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!rep.feasible) {
        rep.sum_rate = rep.avg_rate_per_user = rep.ismr = rep.ismr_inv_db = rep.p_detect = nan;
        return rep;
    }
    const int k_users = scenario.n_users();
    const auto& ch = scenario.channels;
    const std::span<const CVector> beams(solution.beams);
    const auto w_set = outer_products(beams);

    rep.per_user_rate.resize(k_users);
    rep.sum_rate = 0.0;
    for (int k = 0; k < k_users; ++k) {
        rep.per_user_rate[k] = achievable_rate(realized_sinr(beams, ch.nominal[k], k, ch.noise_var));
        rep.sum_rate += rep.per_user_rate[k];
    }
    rep.avg_rate_per_user = rep.sum_rate / k_users;

    if (mc_trials > 0) {
        rep.empirical_outage.resize(k_users);
        for (int k = 0; k < k_users; ++k)
            rep.empirical_outage[k] = monte_carlo_outage(std::span<const CMatrix>(w_set), k, ch.nominal[k],
                                                         ch.users[k], ch.noise_var, mc_trials, rng);
    }

    const std::span<const CMatrix> ws(w_set);
    rep.ismr = ismr(ws, scenario.array, scenario.theta0, options.mainlobe_width);
    rep.ismr_inv_db = -linear_to_db(rep.ismr);
    rep.p_detect = detection_probability(ws, scenario.array, scenario.theta0, options.snr_r_linear, options.p_fa);
    return rep;
}

}  // namespace dfrc
