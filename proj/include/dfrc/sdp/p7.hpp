#pragma once

#include <vector>

#include "dfrc/array_model.hpp"
#include "dfrc/channel_model.hpp"
#include "dfrc/sdp/problem.hpp"
#include "dfrc/sdp/solver.hpp"

namespace dfrc::sdp {

/// One problem instance: array, look direction, users and their channels.
struct Scenario {
    UlaConfig array;
    double theta0 = 0.0;  ///< radians
    ChannelSet channels;
    double power_budget = 1.0;

    int n_users() const { return channels.n_users(); }
    int n_antennas() const { return array.n_antennas; }
    void validate() const;
};

/// How the bound  mu_k >= sqrt(||vec A_k||^2 + 2 ||b_k||^2)  is imposed.
enum class NormBoundForm {
    SecondOrderCone,  ///< one SOC of dimension 1 + N^2 + 2N
    SchurLmi,         ///< arrow LMI of complex dimension 1 + N + N^2
};

struct P7Options {
    NormBoundForm norm_form = NormBoundForm::SecondOrderCone;
    SolverSettings solver{};
};

/// Positions of the unknowns of each user inside the assembled problem.
struct P7Layout {
    int n_antennas = 0;
    int n_users = 0;
    std::vector<int> w_offset;  ///< first of N^2 Hermitian coordinates of W_k
    std::vector<int> nu;
    std::vector<int> mu;
};

struct P7Problem {
    SdpProblem problem;
    P7Layout layout;
};

/// Lowers the outage-constrained beamforming program to a real conic
/// program: for every user the linear Bernstein constraint, nu_k I + A_k PSD,
/// the norm bound on (A_k, b_k), W_k PSD and nu_k >= 0; a shared power
/// budget; objective sum_k a^T(theta0) W_k a*(theta0).
P7Problem assemble_p7(const Scenario& scenario, NormBoundForm form = NormBoundForm::SecondOrderCone);

/// Packs (W_k, nu_k, mu_k) into a solver vector following `layout`.
RVector pack_p7_point(const P7Layout& layout, const std::vector<CMatrix>& w, const std::vector<double>& nu,
                      const std::vector<double>& mu);

struct BeamExtraction {
    CVector w;
    double defect = 0.0;  ///< lambda_2 / lambda_1
    bool zero_power = false;
    bool rank_one = true;  ///< defect <= tolerance
};

/// Leading eigenpair sqrt(lambda_1) u_1, phase fixed so the first entry of
/// magnitude above 1e-9 ||w|| is real and nonnegative.
BeamExtraction extract_beamformer(const CMatrix& w, double tol_rank = 1e-6);

struct SdpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    double objective = 0.0;
    std::vector<CMatrix> w_matrices;
    std::vector<double> nu;
    std::vector<double> mu;
    double duality_gap = 0.0;
    int iterations = 0;
    std::vector<CVector> beams;  ///< rank-one extractions of w_matrices
    std::vector<double> rank_defects;

    bool optimal() const { return status == SolveStatus::Optimal; }
};

SdpSolution solve_p7(const Scenario& scenario, const P7Options& options = {});

/// Tolerance used when re-checking the extracted rank-one beamformers
/// against the deterministic constraints.
inline constexpr double kFeasibilityCheckTol = 1e-6;

/// True iff the rank-one beamformers of an Optimal solve meet the power
/// budget and every Bernstein surrogate within kFeasibilityCheckTol
/// (relative to max(1, noise_var)).
bool solution_feasible(const Scenario& scenario, const SdpSolution& solution);

/// Solve then check; solver failures count as infeasible.
bool feasibility_probe(const Scenario& scenario, const P7Options& options = {});

}  // namespace dfrc::sdp
