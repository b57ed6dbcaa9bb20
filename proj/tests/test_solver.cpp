#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "dfrc/rng.hpp"
#include "dfrc/sdp/solver.hpp"

using namespace dfrc;
using namespace dfrc::sdp;

namespace {

// maximize Tr(C X) s.t. Tr X <= 1, X PSD, with X parametrized by its upper
// triangle.
SdpProblem lambda_max_problem(const RMatrix& c, Sense trace_sense = Sense::LessEqual) {
    const int n = static_cast<int>(c.rows());
    SdpProblem p;
    LinearForm obj;
    LinearForm trace;
    std::vector<std::pair<int, int>> pos;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) {
            const int v = p.add_variable("x" + std::to_string(i) + std::to_string(j));
            pos.emplace_back(i, j);
            obj.push_back({v, i == j ? c(i, i) : 2.0 * c(i, j)});
            if (i == j) trace.push_back({v, 1.0});
        }
    p.set_objective(obj);
    p.add_constraint({"trace", trace, trace_sense, 1.0});
    auto& blk = p.add_lmi("X", n);
    for (int v = 0; v < static_cast<int>(pos.size()); ++v)
        blk.coefficients.push_back({v, {{pos[v].first, pos[v].second, 1.0}}});
    return p;
}

RMatrix random_symmetric(Rng& rng, int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    return 0.5 * (m + m.transpose());
}

}  // namespace

TEST_CASE("lambda_max SDP matches the eigensolver") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 11;
        const RMatrix c = random_symmetric(rng, n);
        const double lmax = Eigen::SelfAdjointEigenSolver<RMatrix>(c).eigenvalues().maxCoeff();
        const SolverResult eq = solve(lambda_max_problem(c, Sense::Equal));
        REQUIRE(eq.status == SolveStatus::Optimal);
        CHECK(eq.primal_objective == doctest::Approx(lmax).epsilon(1e-7));
        // With Tr X <= 1 the zero matrix is admissible.
        const SolverResult le = solve(lambda_max_problem(c));
        REQUIRE(le.status == SolveStatus::Optimal);
        CHECK(le.primal_objective == doctest::Approx(std::max(lmax, 0.0)).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("embedded scalar LP") {
    SdpProblem p;
    const int x = p.add_variable("x");
    p.set_objective({{x, 1.0}});
    auto& up = p.add_lmi("three_minus_x", 1);
    up.constant(0, 0) = 3.0;
    up.coefficients.push_back({x, {{0, 0, -1.0}}});
    auto& lo = p.add_lmi("x", 1);
    lo.coefficients.push_back({x, {{0, 0, 1.0}}});
    const SolverResult r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.primal_objective == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(r.x(0) == doctest::Approx(3.0).epsilon(1e-7));
}

TEST_CASE("LP with nonnegative variables, equality and SOC") {
    // maximize x + y s.t. x + 2y = 2, x, y >= 0, (2, x, y) in SOC
    SdpProblem p;
    const int x = p.add_variable("x", true);
    const int y = p.add_variable("y", true);
    p.set_objective({{x, 1.0}, {y, 1.0}});
    p.add_constraint({"eq", {{x, 1.0}, {y, 2.0}}, Sense::Equal, 2.0});
    auto& q = p.add_soc("ball", 3);
    q.constant(0) = 2.0;
    q.entries = {{1, x, 1.0}, {2, y, 1.0}};
    const SolverResult r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    // optimum on x + 2y = 2 with x^2 + y^2 <= 4: x = 2, y = 0.
    CHECK(r.primal_objective == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(r.primal_objective <= r.dual_objective + 1e-7);
}

TEST_CASE("infeasible and unbounded problems are classified") {
    SUBCASE("infeasible") {
        SdpProblem p;
        const int x = p.add_variable("x", true);
        p.set_objective({{x, 1.0}});
        p.add_constraint({"neg", {{x, 1.0}}, Sense::LessEqual, -1.0});
        CHECK(solve(p).status == SolveStatus::Infeasible);
    }
    SUBCASE("infeasible LMI") {
        // [[x, 1], [1, -x]] PSD is impossible.
        SdpProblem p;
        const int x = p.add_variable("x");
        p.set_objective({{x, 1.0}});
        auto& b = p.add_lmi("m", 2);
        b.constant(0, 1) = b.constant(1, 0) = 1.0;
        b.coefficients.push_back({x, {{0, 0, 1.0}, {1, 1, -1.0}}});
        CHECK(solve(p).status == SolveStatus::Infeasible);
    }
    SUBCASE("unbounded") {
        SdpProblem p;
        const int x = p.add_variable("x", true);
        p.set_objective({{x, 1.0}});
        CHECK(solve(p).status == SolveStatus::Unbounded);
    }
}

TEST_CASE("weak duality at the optimum and nonnegative gaps in the history") {
    Rng rng(5);
    const SolverResult r = solve(lambda_max_problem(random_symmetric(rng, 6)));
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.primal_objective <= r.dual_objective + 1e-7 * std::max(1.0, std::abs(r.dual_objective)));
    for (const auto& h : r.history) CHECK(h.gap >= 0.0);
}
