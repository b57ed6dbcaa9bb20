#pragma once

#include "dfrc/common.hpp"

namespace dfrc {

/// Orthonormal pair spanning {reference, other}.
struct GramSchmidtPair {
    CVector e_par;
    CVector e_perp;     ///< zero when degenerate
    bool degenerate = false;  ///< other lies in span(reference) within 1e-12
};

GramSchmidtPair gram_schmidt_pair(const CVector& reference, const CVector& other);

enum class SuBranch { Bartlett, Mixture };

/// Single-user optimum of the outage-constrained radar beamforming problem.
struct SuSolution {
    CVector w;  ///< zero when infeasible
    SuBranch branch = SuBranch::Bartlett;
    double rho = 0.0;  ///< |<h_par, w>|^2, the power fraction along h*
    double lambda_threshold = 0.0;
    bool feasible = false;
    double objective = 0.0;  ///< |a^T(theta0) w|^2
    /// g(0) >= 0 on the mixture branch: g may have two roots in [0, 1]; the
    /// better of the two candidates is returned.
    bool root_anomaly = false;
};

/// g(x) = x^2 ||h||^2 - (gamma s_c^2 - s_d^2) - s_d sqrt(2 eps) sqrt(s_d^2 + 2 x^2 ||h||^2).
/// The saturating root is the power fraction along h* at the optimum.
double su_g(double x, double h_norm2, double gamma, double noise_var, double sigma_delta, double epsilon);

/// Lambda = N (gamma s_c^2 - s_d^2 + s_d sqrt(2 eps) sqrt(s_d^2 + 2 |h^T a*|^2 / N)).
double su_lambda(const CVector& h, const CVector& a_conj, double gamma, double noise_var, double sigma_delta,
                 double epsilon);

/// Deterministic (eps = 0) case. `a_conj` is a*(theta0).
SuSolution su_solve_eps_zero(const CVector& h, const CVector& a_conj, double gamma, double noise_var,
                             double sigma_delta);

SuSolution su_solve(const CVector& h, const CVector& a_conj, double gamma, double noise_var, double sigma_delta,
                    double epsilon);

}  // namespace dfrc
