#pragma once

#include <span>

#include "dfrc/channel_model.hpp"
#include "dfrc/common.hpp"
#include "dfrc/rng.hpp"

namespace dfrc {

/// Deterministic (Bernstein-type) surrogate of one user's outage constraint.
///
/// With z ~ CN(0, I) the standardized CSI error, the SINR outage event is
///   z^H A z + 2 Re(z^H b) <= sigma_k2,
/// and for any epsilon >= 0 the lower tail obeys
///   Pr(z^H A z + 2 Re(z^H b) <= u_bound) <= exp(-epsilon),
///   u_bound = Tr(A) - sqrt(2 epsilon) c_norm - epsilon lambda_minus.
/// Choosing epsilon = -ln(p) makes sigma_k2 <= u_bound sufficient for
/// Pr(SINR <= gamma) <= p.
struct BernsteinData {
    CMatrix wbar;           ///< W_k / gamma_k - sum_{l != k} W_l
    CMatrix a_mat;          ///< sigma_delta^2 * wbar
    CVector b_vec;          ///< sigma_delta * wbar * conj(h_k)
    double sigma_k2 = 0.0;  ///< noise_var - h_k^T wbar conj(h_k)
    double epsilon = 0.0;   ///< -ln(outage_p)
    double lambda_minus = 0.0;
    double c_norm = 0.0;
    double u_bound = 0.0;
};

CMatrix build_wbar(std::span<const CMatrix> w_set, int k, double gamma_k);

/// Fills the derived fields (lambda_minus, c_norm, u_bound) from a_mat,
/// b_vec and epsilon.
void finalize_bernstein(BernsteinData& bd);

BernsteinData build_bernstein(std::span<const CMatrix> w_set, int k, const UserSpec& user,
                              const CVector& h_k, double noise_var);

/// sigma_k2 <= u_bound + tol.
bool surrogate_satisfied(const BernsteinData& bd, double tol = 0.0);

/// Fraction of draws h = h_k + dh with realized SINR <= gamma (ties count as
/// outage). Draws are split into fixed chunks, each with its own RNG stream
/// derived from `seed`, so the result does not depend on the thread count.
double monte_carlo_outage(std::span<const CMatrix> w_set, int k, const CVector& h_k, const UserSpec& user,
                          double noise_var, int trials, std::uint64_t seed);

/// Single-threaded reference for the function above; bit-identical output.
double monte_carlo_outage_serial(std::span<const CMatrix> w_set, int k, const CVector& h_k,
                                 const UserSpec& user, double noise_var, int trials, std::uint64_t seed);

/// Convenience overload drawing the stream seed from `rng`.
double monte_carlo_outage(std::span<const CMatrix> w_set, int k, const CVector& h_k, const UserSpec& user,
                          double noise_var, int trials, Rng& rng);

}  // namespace dfrc
