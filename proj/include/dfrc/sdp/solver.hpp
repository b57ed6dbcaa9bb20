#pragma once

#include <string_view>
#include <vector>

#include "dfrc/sdp/problem.hpp"

namespace dfrc::sdp {

struct SolverSettings {
    double tol_gap = 1e-7;       ///< relative duality gap
    double tol_abs_gap = 1e-10;  ///< absolute duality gap, alternative to tol_gap
    double tol_feas = 1e-8;      ///< scaled primal/dual residuals and certificate residuals
    int max_iter = 200;
    double divergence = 1e12;    ///< |iterate| / tau beyond this is treated as divergence
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIterations, NumericalFailure };

std::string_view to_string(SolveStatus s);

struct IterationRecord {
    int iteration = 0;
    double primal_objective = 0.0;  ///< maximization sense
    double dual_objective = 0.0;    ///< maximization sense (upper bound at optimum)
    double gap = 0.0;               ///< s^T z / tau^2, never negative
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double step = 0.0;
};

struct SolverResult {
    SolveStatus status = SolveStatus::NumericalFailure;
    RVector x;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double duality_gap = 0.0;     ///< absolute, s^T z
    double relative_gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    std::vector<IterationRecord> history;

    // Dual multipliers, in the order the blocks were declared.
    RVector linear_duals;  ///< inequality rows first (declaration order), then x_i >= 0 rows
    RVector equality_duals;
    std::vector<RVector> soc_duals;
    std::vector<RMatrix> lmi_duals;
};

/// Homogeneous self-dual primal-dual interior-point method with
/// Nesterov-Todd scaling and Mehrotra predictor-corrector steps, over the
/// product of the nonnegative orthant, second-order cones and real
/// symmetric PSD cones. Dense normal equations; PSD blocks use sparse
/// coefficient matrices when forming the Schur complement.
SolverResult solve(const SdpProblem& problem, const SolverSettings& settings = {});

}  // namespace dfrc::sdp
