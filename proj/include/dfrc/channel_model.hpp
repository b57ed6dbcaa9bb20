#pragma once

#include <span>
#include <vector>

#include "dfrc/common.hpp"
#include "dfrc/rng.hpp"

namespace dfrc {

/// Per-user quality-of-service requirement and CSI uncertainty.
struct UserSpec {
    double gamma = 1.0;        ///< linear SINR threshold
    double outage_p = 0.1;     ///< tolerated outage probability, in (0, 1)
    double sigma_delta = 0.1;  ///< CSI error std. dev. (total complex variance sigma^2)

    void validate() const;
};

/// Nominal (estimated) channels h_k, one per user, plus receiver noise.
struct ChannelSet {
    std::vector<CVector> nominal;
    std::vector<UserSpec> users;
    double noise_var = 1.0;

    int n_users() const { return static_cast<int>(nominal.size()); }
    int n_antennas() const { return nominal.empty() ? 0 : static_cast<int>(nominal.front().size()); }
    void validate() const;
};

/// K channels with i.i.d. CN(0, 1) entries.
std::vector<CVector> sample_nominal_channels(Rng& rng, int n_users, int n_antennas);

/// CSI error with covariance sigma_delta^2 I.
CVector sample_csi_error(Rng& rng, double sigma_delta, int n_antennas);

/// h^T W_k h* / (sum_{l != k} h^T W_l h* + noise_var) for covariance inputs.
double realized_sinr(std::span<const CMatrix> w_set, const CVector& h_tilde, int k, double noise_var);

/// Same with beamforming vectors, W_l = w_l w_l^H.
double realized_sinr(std::span<const CVector> beams, const CVector& h_tilde, int k, double noise_var);

/// log2(1 + sinr).
double achievable_rate(double sinr);

}  // namespace dfrc
