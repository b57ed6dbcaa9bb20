#pragma once

#include <span>
#include <vector>

#include "dfrc/array_model.hpp"
#include "dfrc/common.hpp"
#include "dfrc/rng.hpp"
#include "dfrc/sdp/p7.hpp"

namespace dfrc {

/// Integrated sidelobe to mainlobe ratio of R = sum_k W_k. The mainlobe is
/// theta0 +- width/2 clipped to the visible region; sidelobes are the rest.
/// Throws DomainError when the mainlobe power is not positive.
double ismr(std::span<const CMatrix> w_set, const UlaConfig& cfg, double theta0,
            double mainlobe_width = deg_to_rad(20.0));

double ismr(std::span<const CVector> beams, const UlaConfig& cfg, double theta0,
            double mainlobe_width = deg_to_rad(20.0));

/// First-order Marcum Q function Q_1(a, b), a, b >= 0.
double marcum_q1(double a, double b);

/// CDF of the noncentral chi-square law with 2 degrees of freedom.
double noncentral_chi2_2_cdf(double x, double noncentrality);

/// P_D for a square-law detector with threshold set by p_fa, given the
/// noncentrality of the target-present statistic. p_fa in (0, 1].
double detection_probability(double noncentrality, double p_fa);

/// Noncentrality snr_r * (a^T(theta0) R a*(theta0))^2 with R = sum_k W_k.
double detection_noncentrality(std::span<const CMatrix> w_set, const UlaConfig& cfg, double theta0,
                               double snr_r_linear);

double detection_probability(std::span<const CMatrix> w_set, const UlaConfig& cfg, double theta0,
                             double snr_r_linear, double p_fa);

/// Fraction of true entries. Throws ValidationError on an empty list.
double feasibility_rate(std::span<const bool> outcomes);
double feasibility_rate(const std::vector<bool>& outcomes);

struct MetricOptions {
    double mainlobe_width = deg_to_rad(20.0);
    double snr_r_linear = db_to_linear(1.0);
    double p_fa = 1e-4;
};

/// Fields are NaN (vectors empty) when feasible is false.
struct MetricReport {
    std::vector<double> per_user_rate;
    double sum_rate = 0.0;
    double avg_rate_per_user = 0.0;
    std::vector<double> empirical_outage;
    double ismr = 0.0;
    double ismr_inv_db = 0.0;
    double p_detect = 0.0;
    bool feasible = false;
};

/// Rates use the nominal channels; outage is estimated with mc_trials CSI
/// error draws per user (skipped when mc_trials == 0).
MetricReport report(const sdp::Scenario& scenario, const sdp::SdpSolution& solution, Rng& rng, int mc_trials,
                    const MetricOptions& options = {});

}  // namespace dfrc
