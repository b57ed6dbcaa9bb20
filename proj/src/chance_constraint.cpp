#include "dfrc/chance_constraint.hpp"

#include <cmath>

#include "dfrc/hermitian.hpp"

namespace dfrc {

CMatrix build_wbar(std::span<const CMatrix> w_set, int k, double gamma_k) {
    if (k < 0 || static_cast<std::size_t>(k) >= w_set.size()) throw ValidationError("build_wbar: index out of range");
    if (!(gamma_k > 0.0)) throw ValidationError("build_wbar: gamma must be > 0");
    CMatrix wbar = w_set[static_cast<std::size_t>(k)] / gamma_k;
    for (std::size_t l = 0; l < w_set.size(); ++l) {
        if (w_set[l].rows() != wbar.rows() || w_set[l].cols() != wbar.cols())
            throw ValidationError("build_wbar: dimension mismatch");
        if (static_cast<int>(l) != k) wbar -= w_set[l];
    }
    return wbar;
}

void finalize_bernstein(BernsteinData& bd) {
    const CMatrix neg = -0.5 * (bd.a_mat + bd.a_mat.adjoint());
    bd.lambda_minus = neg.size() == 0 ? 0.0 : std::max(hermitian_eigenvalues(neg).maxCoeff(), 0.0);
    bd.c_norm = std::sqrt(bd.a_mat.squaredNorm() + 2.0 * bd.b_vec.squaredNorm());
    const double trace = bd.a_mat.trace().real();
    bd.u_bound = trace - std::sqrt(2.0 * bd.epsilon) * bd.c_norm - bd.epsilon * bd.lambda_minus;
}

BernsteinData build_bernstein(std::span<const CMatrix> w_set, int k, const UserSpec& user,
                              const CVector& h_k, double noise_var) {
    user.validate();
    BernsteinData bd;
    bd.wbar = build_wbar(w_set, k, user.gamma);
    if (h_k.size() != bd.wbar.rows()) throw ValidationError("build_bernstein: channel length mismatch");
    const double s = user.sigma_delta;
    bd.a_mat = s * s * bd.wbar;
    bd.b_vec = s * (bd.wbar * h_k.conjugate());
    const cdouble hwh = h_k.transpose() * bd.wbar * h_k.conjugate();
    bd.sigma_k2 = noise_var - hwh.real();
    bd.epsilon = -std::log(user.outage_p);
    finalize_bernstein(bd);
    return bd;
}

bool surrogate_satisfied(const BernsteinData& bd, double tol) { return bd.sigma_k2 <= bd.u_bound + tol; }

namespace {

constexpr int kChunk = 256;

struct OutageKernel {
    std::span<const CMatrix> w_set;
    int k;
    const CVector& h;
    const UserSpec& user;
    double noise_var;

    // Outage count over the draws of one chunk.
    long count_chunk(std::uint64_t seed, int chunk, int draws) const {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(chunk));
        long failures = 0;
        const int n = static_cast<int>(h.size());
        for (int t = 0; t < draws; ++t) {
            const CVector h_tilde = h + sample_csi_error(rng, user.sigma_delta, n);
            if (realized_sinr(w_set, h_tilde, k, noise_var) <= user.gamma) ++failures;
        }
        return failures;
    }
};

void check_outage_args(std::span<const CMatrix> w_set, int k, const CVector& h, const UserSpec& user, int trials) {
    user.validate();
    if (trials < 1) throw ValidationError("monte_carlo_outage: trials must be >= 1");
    if (k < 0 || static_cast<std::size_t>(k) >= w_set.size())
        throw ValidationError("monte_carlo_outage: index out of range");
    if (h.size() != w_set[static_cast<std::size_t>(k)].rows())
        throw ValidationError("monte_carlo_outage: channel length mismatch");
}

}  // namespace

double monte_carlo_outage_serial(std::span<const CMatrix> w_set, int k, const CVector& h_k, const UserSpec& user,
                                 double noise_var, int trials, std::uint64_t seed) {
    check_outage_args(w_set, k, h_k, user, trials);
    const OutageKernel kernel{w_set, k, h_k, user, noise_var};
    const int chunks = (trials + kChunk - 1) / kChunk;
    long failures = 0;
    for (int c = 0; c < chunks; ++c) failures += kernel.count_chunk(seed, c, std::min(kChunk, trials - c * kChunk));
    return static_cast<double>(failures) / trials;
}

double monte_carlo_outage(std::span<const CMatrix> w_set, int k, const CVector& h_k, const UserSpec& user,
                          double noise_var, int trials, std::uint64_t seed) {
    check_outage_args(w_set, k, h_k, user, trials);
    const OutageKernel kernel{w_set, k, h_k, user, noise_var};
    const int chunks = (trials + kChunk - 1) / kChunk;
    long failures = 0;
#pragma omp parallel for reduction(+ : failures) schedule(static)
    for (int c = 0; c < chunks; ++c) failures += kernel.count_chunk(seed, c, std::min(kChunk, trials - c * kChunk));
    return static_cast<double>(failures) / trials;
}

double monte_carlo_outage(std::span<const CMatrix> w_set, int k, const CVector& h_k, const UserSpec& user,
                          double noise_var, int trials, Rng& rng) {
    return monte_carlo_outage(w_set, k, h_k, user, noise_var, trials, rng.next_u64());
}

}  // namespace dfrc
