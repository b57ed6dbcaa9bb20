#include "dfrc/channel_model.hpp"

#include <cmath>

namespace dfrc {

void UserSpec::validate() const {
    if (!(gamma > 0.0)) throw ValidationError("UserSpec: gamma must be > 0");
    if (!(outage_p > 0.0 && outage_p < 1.0)) throw ValidationError("UserSpec: outage_p must lie in (0, 1)");
    if (!(sigma_delta >= 0.0)) throw ValidationError("UserSpec: sigma_delta must be >= 0");
}

void ChannelSet::validate() const {
    if (nominal.empty()) throw ValidationError("ChannelSet: need at least one user");
    if (users.size() != nominal.size()) throw ValidationError("ChannelSet: one UserSpec per channel required");
    const Eigen::Index n = nominal.front().size();
    if (n < 1) throw ValidationError("ChannelSet: empty channel vector");
    for (const auto& h : nominal)
        if (h.size() != n) throw ValidationError("ChannelSet: channel lengths differ");
    for (const auto& u : users) u.validate();
    if (!(noise_var > 0.0)) throw ValidationError("ChannelSet: noise_var must be > 0");
}

std::vector<CVector> sample_nominal_channels(Rng& rng, int n_users, int n_antennas) {
    if (n_users < 1 || n_antennas < 1)
        throw ValidationError("sample_nominal_channels: K and N must be >= 1");
    std::vector<CVector> h(static_cast<std::size_t>(n_users), CVector(n_antennas));
    for (auto& hk : h)
        for (int n = 0; n < n_antennas; ++n) hk(n) = rng.complex_normal(1.0);
    return h;
}

CVector sample_csi_error(Rng& rng, double sigma_delta, int n_antennas) {
    if (!(sigma_delta >= 0.0)) throw ValidationError("sample_csi_error: sigma_delta must be >= 0");
    CVector e(n_antennas);
    const double var = sigma_delta * sigma_delta;
    for (int n = 0; n < n_antennas; ++n) e(n) = rng.complex_normal(var);
    return e;
}

namespace {

double quad_form(const CMatrix& w, const CVector& h) {
    const cdouble v = h.transpose() * w * h.conjugate();
    return v.real();
}

void check_sinr_args(std::size_t count, const CVector& h, int k, double noise_var) {
    if (k < 0 || static_cast<std::size_t>(k) >= count) throw ValidationError("realized_sinr: user index out of range");
    if (!(noise_var > 0.0)) throw ValidationError("realized_sinr: noise_var must be > 0");
    if (h.size() == 0) throw ValidationError("realized_sinr: empty channel");
}

}  // namespace

double realized_sinr(std::span<const CMatrix> w_set, const CVector& h_tilde, int k, double noise_var) {
    check_sinr_args(w_set.size(), h_tilde, k, noise_var);
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t l = 0; l < w_set.size(); ++l) {
        if (w_set[l].rows() != h_tilde.size() || w_set[l].cols() != h_tilde.size())
            throw ValidationError("realized_sinr: dimension mismatch");
        const double p = quad_form(w_set[l], h_tilde);
        if (static_cast<int>(l) == k)
            signal = p;
        else
            interference += p;
    }
    return std::max(0.0, signal) / (std::max(0.0, interference) + noise_var);
}

double realized_sinr(std::span<const CVector> beams, const CVector& h_tilde, int k, double noise_var) {
    check_sinr_args(beams.size(), h_tilde, k, noise_var);
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t l = 0; l < beams.size(); ++l) {
        if (beams[l].size() != h_tilde.size()) throw ValidationError("realized_sinr: dimension mismatch");
        // h^T w w^H h* = |h^T w|^2
        const double p = std::norm(h_tilde.cwiseProduct(beams[l]).sum());
        if (static_cast<int>(l) == k)
            signal = p;
        else
            interference += p;
    }
    return signal / (interference + noise_var);
}

double achievable_rate(double sinr) {
    if (!(sinr >= 0.0)) throw DomainError("achievable_rate: SINR must be >= 0");
    return std::log2(1.0 + sinr);
}

}  // namespace dfrc
