#include <doctest.h>

#include <cmath>
#include <vector>

#include "dfrc/array_model.hpp"
#include "dfrc/chance_constraint.hpp"
#include "dfrc/closed_form.hpp"
#include "dfrc/rng.hpp"
#include "dfrc/sdp/p7.hpp"

using namespace dfrc;

namespace {

struct Case {
    CVector h;
    CVector a_conj;
    double gamma;
};

Case random_case(Rng& rng, int n, double gamma_db) {
    UlaConfig cfg;
    cfg.n_antennas = n;
    Case c;
    c.h = sample_nominal_channels(rng, 1, n).front();
    c.a_conj = steering_vector(cfg, deg_to_rad(-60.0 + 120.0 * rng.uniform())).conjugate();
    c.gamma = db_to_linear(gamma_db);
    return c;
}

// Brute-force best rank-one value over unit vectors in span{h*, a*}
// meeting the surrogate, by a dense grid over the h*-fraction.
double grid_oracle(const Case& c, double noise_var, double sd, double eps) {
    const CVector hp = c.h.conjugate().normalized();
    CVector rest = c.a_conj - hp.dot(c.a_conj) * hp;
    const bool flat = rest.norm() < 1e-12;
    if (!flat) rest.normalize();
    const double h2 = c.h.squaredNorm();
    const double ap = std::abs(c.a_conj.dot(hp));
    const double ar = flat ? 0.0 : std::abs(c.a_conj.dot(rest));
    double best = -1.0;
    const int steps = 2000000;
    for (int i = 0; i <= steps; ++i) {
        const double x = static_cast<double>(i) / steps;
        const double u = x * x * h2;
        const double s2 = sd * sd;
        const double slack = u - (c.gamma * noise_var - s2) - sd * std::sqrt(2.0 * eps) * std::sqrt(s2 + 2.0 * u);
        if (slack < 0.0) continue;
        const double v = x * ap + std::sqrt(1.0 - x * x) * ar;
        best = std::max(best, v * v);
    }
    return best;
}

}  // namespace

TEST_CASE("gram_schmidt_pair returns an orthonormal pair") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        CVector r(6), o(6);
        for (int i = 0; i < 6; ++i) {
            r(i) = rng.complex_normal();
            o(i) = rng.complex_normal();
        }
        const auto g = gram_schmidt_pair(r, o);
        CHECK_FALSE(g.degenerate);
        CHECK(g.e_par.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(g.e_perp.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(g.e_par.dot(g.e_perp)) < 1e-14);
        // other lies in the span
        const CVector back = g.e_par.dot(o) * g.e_par + g.e_perp.dot(o) * g.e_perp;
        CHECK((back - o).norm() < 1e-12 * o.norm());
    }
}

TEST_CASE("gram_schmidt_pair flags parallel input and rejects a zero reference") {
    CVector r(3);
    r << cdouble(1, 1), cdouble(0, 2), cdouble(-1, 0);
    const auto g = gram_schmidt_pair(r, cdouble(0.5, -2.0) * r);
    CHECK(g.degenerate);
    CHECK(g.e_perp.norm() == 0.0);
    CHECK_THROWS_AS(gram_schmidt_pair(CVector::Zero(3), r), DomainError);
}

TEST_CASE("eps = 0: Bartlett branch when the channel already sees enough of a*") {
    const int n = 4;
    UlaConfig cfg;
    cfg.n_antennas = n;
    const CVector a_conj = steering_vector(cfg, deg_to_rad(20.0)).conjugate();
    const CVector h = a_conj.conjugate();  // h^T a* = N
    const auto s = su_solve_eps_zero(h, a_conj, 1.0, 1.0, 0.1);
    CHECK(s.feasible);
    CHECK(s.branch == SuBranch::Bartlett);
    CHECK((s.w - a_conj / std::sqrt(4.0)).norm() < 1e-14);
    CHECK(s.objective == doctest::Approx(n).epsilon(1e-12));
    CHECK(s.lambda_threshold == doctest::Approx(n * (1.0 - 0.01)).epsilon(1e-14));
}

TEST_CASE("eps = 0: orthogonal channel, rho = 1/2 gives half the Bartlett gain") {
    const int n = 4;
    UlaConfig cfg;
    cfg.n_antennas = n;
    const CVector a_conj = steering_vector(cfg, 0.0).conjugate();  // all ones
    CVector h(n);
    h << 1.0, -1.0, 1.0, -1.0;  // h^T a* = 0, ||h||^2 = 4
    const double sd = 0.1;
    const double gamma = (0.5 * 4.0 + sd * sd) / 1.0;
    const auto s = su_solve_eps_zero(h, a_conj, gamma, 1.0, sd);
    REQUIRE(s.feasible);
    CHECK(s.branch == SuBranch::Mixture);
    CHECK(s.rho == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.objective == doctest::Approx(0.5 * n).epsilon(1e-12));
    CHECK(s.w.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::norm(h.conjugate().dot(s.w)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("eps = 0: sigma_delta = 0 gives rho = gamma noise / ||h||^2") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        auto c = random_case(rng, 6, 3.0);
        const auto s = su_solve_eps_zero(c.h, c.a_conj, c.gamma, 1.0, 0.0);
        if (s.branch != SuBranch::Mixture || !s.feasible) continue;
        CHECK(s.rho == doctest::Approx(c.gamma / c.h.squaredNorm()).epsilon(1e-14));
    }
}

TEST_CASE("eps = 0: feasibility boundary") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        auto c = random_case(rng, 8, 0.0);
        const double sd = 0.1;
        const double bound = (c.h.squaredNorm() + sd * sd) / 1.0;
        CHECK(su_solve_eps_zero(c.h, c.a_conj, 0.95 * bound, 1.0, sd).feasible);
        const auto bad = su_solve_eps_zero(c.h, c.a_conj, 1.05 * bound, 1.0, sd);
        CHECK_FALSE(bad.feasible);
        CHECK(bad.w.norm() == 0.0);
    }
}

TEST_CASE("su_solve with eps = 0 reduces to the deterministic solution") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        auto c = random_case(rng, 4 + t % 5, -3.0 + 0.5 * t);
        const auto a = su_solve_eps_zero(c.h, c.a_conj, c.gamma, 1.0, 0.1);
        const auto b = su_solve(c.h, c.a_conj, c.gamma, 1.0, 0.1, 0.0);
        CHECK(a.feasible == b.feasible);
        CHECK((a.w - b.w).norm() < 1e-14);
    }
}

TEST_CASE("mixture root solves g and makes the surrogate tight") {
    Rng rng(13);
    const double sd = 0.1;
    const double eps = -std::log(0.1);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 30; ++t) {
        auto c = random_case(rng, 4 + 4 * (t % 2), -2.0 + 8.0 * rng.uniform());
        const auto s = su_solve(c.h, c.a_conj, c.gamma, 1.0, sd, eps);
        if (!s.feasible || s.branch != SuBranch::Mixture) continue;
        ++checked;
        CHECK(std::abs(su_g(std::sqrt(s.rho), c.h.squaredNorm(), c.gamma, 1.0, sd, eps)) < 1e-10);
        CHECK(s.w.norm() == doctest::Approx(1.0).epsilon(1e-13));
        const std::vector<CMatrix> w_set{s.w * s.w.adjoint()};
        const auto bd = build_bernstein(w_set, 0, UserSpec{c.gamma, 0.1, sd}, c.h, 1.0);
        CHECK(std::abs(bd.sigma_k2 - bd.u_bound) < 1e-8);
        CHECK(s.objective <= c.a_conj.squaredNorm() + 1e-12);
    }
    CHECK(checked >= 10);
}

TEST_CASE("closed form matches a brute-force search over the two-dimensional span") {
    Rng rng(17);
    for (double eps : {0.0, -std::log(0.1), -std::log(0.01)}) {
        for (int t = 0; t < 8; ++t) {
            auto c = random_case(rng, 4 + 4 * (t % 2), -4.0 + 10.0 * rng.uniform());
            const auto s = su_solve(c.h, c.a_conj, c.gamma, 1.0, 0.1, eps);
            const double brute = grid_oracle(c, 1.0, 0.1, eps);
            if (!s.feasible) {
                CHECK(brute < 0.0);
                continue;
            }
            CHECK(s.objective >= brute - 1e-9);
            CHECK(s.objective == doctest::Approx(brute).epsilon(1e-5));
        }
    }
}

TEST_CASE("threshold grows with eps and gamma") {
    Rng rng(19);
    auto c = random_case(rng, 8, 0.0);
    double prev = -1e300;
    for (double eps : {0.0, 0.01, 0.1, 1.0, 3.0}) {
        const double l = su_lambda(c.h, c.a_conj, 1.0, 1.0, 0.1, eps);
        CHECK(l > prev);
        prev = l;
    }
    prev = -1e300;
    for (double g : {0.1, 0.5, 1.0, 2.0, 8.0}) {
        const double l = su_lambda(c.h, c.a_conj, g, 1.0, 0.1, 0.5);
        CHECK(l > prev);
        prev = l;
    }
}

TEST_CASE("Bartlett objective bounds every mixture objective") {
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        auto c = random_case(rng, 4 + t % 7, -5.0 + 0.3 * t);
        const auto s = su_solve(c.h, c.a_conj, c.gamma, 1.0, 0.1, 0.7);
        if (!s.feasible) continue;
        CHECK(s.objective <= static_cast<double>(c.h.size()) + 1e-12);
    }
}

TEST_CASE("input validation") {
    CVector h = CVector::Ones(4);
    CVector a = CVector::Ones(4);
    CHECK_THROWS_AS(su_solve(h, CVector::Ones(3), 1.0, 1.0, 0.1, 0.1), ValidationError);
    CHECK_THROWS_AS(su_solve(h, a, -1.0, 1.0, 0.1, 0.1), ValidationError);
    CHECK_THROWS_AS(su_solve(h, a, 1.0, 0.0, 0.1, 0.1), ValidationError);
    CHECK_THROWS_AS(su_solve(h, a, 1.0, 1.0, 0.1, -0.1), ValidationError);
    CHECK_THROWS_AS(su_solve(CVector::Zero(4), a, 1.0, 1.0, 0.1, 0.1), DomainError);
}

TEST_CASE("closed form agrees with the SDP where the relaxation is tight") {
    Rng rng(29);
    int compared = 0;
    for (int t = 0; t < 12; ++t) {
        const int n = 4 + 4 * (t % 2);
        sdp::Scenario sc;
        sc.array.n_antennas = n;
        sc.theta0 = deg_to_rad(-50.0 + 100.0 * rng.uniform());
        sc.channels.nominal = sample_nominal_channels(rng, 1, n);
        sc.channels.noise_var = 1.0;
        const double gamma = db_to_linear(-6.0 + 12.0 * rng.uniform());
        const CVector a_conj = steering_vector(sc.array, sc.theta0).conjugate();
        for (double p : {std::exp(-1e-12), 0.1}) {
            sc.channels.users = {UserSpec{gamma, p, 0.1}};
            const auto cf = su_solve(sc.channels.nominal[0], a_conj, gamma, 1.0, 0.1, -std::log(p));
            const auto sol = sdp::solve_p7(sc);
            if (!cf.feasible) {
                CHECK(sol.status == sdp::SolveStatus::Infeasible);
                continue;
            }
            REQUIRE(sol.optimal());
            // The rank-one closed form can only lose against the relaxation.
            CHECK(cf.objective <= sol.objective * (1.0 + 1e-6));
            if (sol.rank_defects[0] > 1e-6) continue;
            ++compared;
            CHECK(sol.objective == doctest::Approx(cf.objective).epsilon(1e-6));
        }
    }
    CHECK(compared >= 16);
}
