#include "dfrc/sdp/p7.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dfrc/chance_constraint.hpp"
#include "dfrc/hermitian.hpp"

namespace dfrc::sdp {

void Scenario::validate() const {
    array.validate();
    channels.validate();
    if (!(std::abs(theta0) <= kPi / 2)) throw ValidationError("scenario: theta0 outside [-90, 90] degrees");
    if (!(power_budget > 0.0)) throw ValidationError("scenario: power budget must be positive");
    if (channels.n_antennas() != array.n_antennas)
        throw ValidationError("scenario: channel length differs from the number of antennas");
}

namespace {

// Upper-triangle entry of a Hermitian coefficient matrix.
struct CEntry {
    int row;
    int col;
    cdouble value;
};

// Entries of the real embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix
// of dimension d given by its upper triangle.
std::vector<SymEntry> embed(int d, const std::vector<CEntry>& entries) {
    std::vector<SymEntry> out;
    out.reserve(entries.size() * 4);
    for (const auto& e : entries) {
        const double re = e.value.real();
        const double im = e.value.imag();
        if (e.row == e.col) {
            if (re != 0.0) {
                out.push_back({e.row, e.col, re});
                out.push_back({e.row + d, e.col + d, re});
            }
            continue;
        }
        if (re != 0.0) {
            out.push_back({e.row, e.col, re});
            out.push_back({e.row + d, e.col + d, re});
        }
        if (im != 0.0) {
            out.push_back({e.row, e.col + d, -im});
            out.push_back({e.col, e.row + d, im});
        }
    }
    return out;
}

std::vector<CEntry> basis_entries(const HermitianBasis& basis, int i, double scale, int offset = 0) {
    const auto& el = basis.element(i);
    switch (el.kind) {
        case HermitianBasis::Kind::Diagonal:
            return {{el.p + offset, el.p + offset, scale}};
        case HermitianBasis::Kind::Real:
            return {{el.p + offset, el.q + offset, scale}};
        case HermitianBasis::Kind::Imag:
            return {{el.p + offset, el.q + offset, cdouble(0.0, scale)}};
    }
    return {};
}

// E_i conj(h)
CVector basis_times_conj(const HermitianBasis& basis, int i, const CVector& h) {
    const auto& el = basis.element(i);
    CVector v = CVector::Zero(h.size());
    const cdouble j(0.0, 1.0);
    switch (el.kind) {
        case HermitianBasis::Kind::Diagonal:
            v(el.p) = std::conj(h(el.p));
            break;
        case HermitianBasis::Kind::Real:
            v(el.p) = std::conj(h(el.q));
            v(el.q) = std::conj(h(el.p));
            break;
        case HermitianBasis::Kind::Imag:
            v(el.p) = j * std::conj(h(el.q));
            v(el.q) = -j * std::conj(h(el.p));
            break;
    }
    return v;
}

}  // namespace

P7Problem assemble_p7(const Scenario& scenario, NormBoundForm form) {
    try {
        scenario.validate();
    } catch (const ValidationError& e) {
        throw AssemblyError(std::string("assemble_p7: ") + e.what());
    }
    const int n = scenario.n_antennas();
    const int k_users = scenario.n_users();
    const HermitianBasis basis(n);
    const int nb = basis.size();

    P7Problem out;
    SdpProblem& p = out.problem;
    P7Layout& lay = out.layout;
    lay.n_antennas = n;
    lay.n_users = k_users;

    for (int k = 0; k < k_users; ++k) {
        lay.w_offset.push_back(p.n_variables());
        for (int i = 0; i < nb; ++i) p.add_variable("W" + std::to_string(k) + "_" + std::to_string(i));
    }
    for (int k = 0; k < k_users; ++k) {
        lay.nu.push_back(p.add_variable("nu" + std::to_string(k), true));
        lay.mu.push_back(p.add_variable("mu" + std::to_string(k)));
    }

    const CVector a = steering_vector(scenario.array, scenario.theta0);
    LinearForm objective;
    LinearForm power;
    for (int k = 0; k < k_users; ++k)
        for (int i = 0; i < nb; ++i) {
            const int var = lay.w_offset[static_cast<std::size_t>(k)] + i;
            objective.push_back({var, basis.quadratic_coefficient(a, i)});
            if (basis.element(i).kind == HermitianBasis::Kind::Diagonal) power.push_back({var, 1.0});
        }
    p.set_objective(std::move(objective));
    p.add_constraint({"power", std::move(power), Sense::LessEqual, scenario.power_budget});

    const double noise = scenario.channels.noise_var;
    for (int k = 0; k < k_users; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        const UserSpec& user = scenario.channels.users[ks];
        const CVector& h = scenario.channels.nominal[ks];
        const double sd = user.sigma_delta;
        const double s2 = sd * sd;
        const double eps = -std::log(user.outage_p);
        const std::string tag = std::to_string(k);
        // Weight of W_l inside Wbar_k.
        auto alpha = [&](int l) { return l == k ? 1.0 / user.gamma : -1.0; };

        // -h^T Wbar h* - Tr(A) + sqrt(2 eps) mu + eps nu <= -noise
        LinearForm lhs;
        for (int l = 0; l < k_users; ++l)
            for (int i = 0; i < nb; ++i) {
                double c = -basis.quadratic_coefficient(h, i);
                if (basis.element(i).kind == HermitianBasis::Kind::Diagonal) c -= s2;
                lhs.push_back({lay.w_offset[static_cast<std::size_t>(l)] + i, alpha(l) * c});
            }
        lhs.push_back({lay.mu[ks], std::sqrt(2.0 * eps)});
        lhs.push_back({lay.nu[ks], eps});
        p.add_constraint({"bernstein" + tag, std::move(lhs), Sense::LessEqual, -noise});

        {
            LmiBlock& w_blk = p.add_lmi("W" + tag, 2 * n);
            for (int i = 0; i < nb; ++i)
                w_blk.coefficients.push_back({lay.w_offset[ks] + i, embed(n, basis_entries(basis, i, 1.0))});
        }
        {
            LmiBlock& nu_blk = p.add_lmi("nuA" + tag, 2 * n);
            std::vector<CEntry> ident;
            for (int r = 0; r < n; ++r) ident.push_back({r, r, 1.0});
            nu_blk.coefficients.push_back({lay.nu[ks], embed(n, ident)});
            if (s2 > 0.0)
                for (int l = 0; l < k_users; ++l)
                    for (int i = 0; i < nb; ++i)
                        nu_blk.coefficients.push_back({lay.w_offset[static_cast<std::size_t>(l)] + i,
                                                       embed(n, basis_entries(basis, i, alpha(l) * s2))});
        }

        if (form == NormBoundForm::SecondOrderCone) {
            // [mu; A_nn; sqrt2 Re A_pq, sqrt2 Im A_pq; sqrt2 Re b; sqrt2 Im b]
            SocBlock& q = p.add_soc("norm" + tag, 1 + nb + 2 * n);
            q.entries.push_back({0, lay.mu[ks], 1.0});
            if (sd > 0.0)
                for (int l = 0; l < k_users; ++l)
                    for (int i = 0; i < nb; ++i) {
                        const int var = lay.w_offset[static_cast<std::size_t>(l)] + i;
                        const double al = alpha(l);
                        const bool diag = basis.element(i).kind == HermitianBasis::Kind::Diagonal;
                        q.entries.push_back({1 + i, var, al * s2 * (diag ? 1.0 : std::sqrt(2.0))});
                        const CVector bv = (al * sd * std::sqrt(2.0)) * basis_times_conj(basis, i, h);
                        for (int r = 0; r < n; ++r) {
                            if (bv(r).real() != 0.0) q.entries.push_back({1 + nb + r, var, bv(r).real()});
                            if (bv(r).imag() != 0.0) q.entries.push_back({1 + nb + n + r, var, bv(r).imag()});
                        }
                    }
        } else {
            // Q = [[mu, sqrt2 b^H, vec(A)^H], [sqrt2 b, mu I, 0], [vec(A), 0, mu I]]
            const int d = 1 + n + nb;
            LmiBlock& q = p.add_lmi("Q" + tag, 2 * d);
            std::vector<CEntry> ident;
            for (int r = 0; r < d; ++r) ident.push_back({r, r, 1.0});
            q.coefficients.push_back({lay.mu[ks], embed(d, ident)});
            if (sd > 0.0)
                for (int l = 0; l < k_users; ++l)
                    for (int i = 0; i < nb; ++i) {
                        const double al = alpha(l);
                        std::vector<CEntry> entries;
                        const CVector bv = (al * sd * std::sqrt(2.0)) * basis_times_conj(basis, i, h);
                        for (int r = 0; r < n; ++r)
                            if (bv(r) != cdouble(0.0)) entries.push_back({0, 1 + r, std::conj(bv(r))});
                        const CMatrix e = (al * s2) * basis.matrix(i);
                        for (int col = 0; col < n; ++col)
                            for (int row = 0; row < n; ++row)
                                if (e(row, col) != cdouble(0.0))
                                    entries.push_back({0, 1 + n + row + n * col, std::conj(e(row, col))});
                        q.coefficients.push_back({lay.w_offset[static_cast<std::size_t>(l)] + i, embed(d, entries)});
                    }
        }
    }
    p.validate();
    return out;
}

RVector pack_p7_point(const P7Layout& layout, const std::vector<CMatrix>& w, const std::vector<double>& nu,
                      const std::vector<double>& mu) {
    const HermitianBasis basis(layout.n_antennas);
    const auto k_users = static_cast<std::size_t>(layout.n_users);
    if (w.size() != k_users || nu.size() != k_users || mu.size() != k_users)
        throw ValidationError("pack_p7_point: wrong number of users");
    RVector x = RVector::Zero(layout.w_offset.empty() ? 0 : 2 * layout.n_users + layout.n_users * basis.size());
    for (std::size_t k = 0; k < k_users; ++k) {
        x.segment(layout.w_offset[k], basis.size()) = basis.coordinates(w[k]);
        x(layout.nu[k]) = nu[k];
        x(layout.mu[k]) = mu[k];
    }
    return x;
}

BeamExtraction extract_beamformer(const CMatrix& w, double tol_rank) {
    require_hermitian(w, 1e-8, "extract_beamformer");
    BeamExtraction out;
    const Eigen::Index n = w.rows();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (w + w.adjoint()));
    const RVector& ev = es.eigenvalues();
    const double l1 = ev(n - 1);
    if (!(l1 > 1e-12)) {
        out.w = CVector::Zero(n);
        out.zero_power = true;
        out.defect = 0.0;
        return out;
    }
    const double l2 = n > 1 ? std::max(ev(n - 2), 0.0) : 0.0;
    out.defect = l2 / l1;
    out.rank_one = out.defect <= tol_rank;
    out.w = std::sqrt(l1) * es.eigenvectors().col(n - 1);
    const double thresh = 1e-9 * out.w.norm();
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(out.w(i)) > thresh) {
            out.w *= std::conj(out.w(i)) / std::abs(out.w(i));
            out.w(i) = std::abs(out.w(i));
            break;
        }
    return out;
}

SdpSolution solve_p7(const Scenario& scenario, const P7Options& options) {
    const P7Problem assembled = assemble_p7(scenario, options.norm_form);
    const SolverResult r = solve(assembled.problem, options.solver);
    const P7Layout& lay = assembled.layout;
    const HermitianBasis basis(lay.n_antennas);

    SdpSolution sol;
    sol.status = r.status;
    sol.iterations = r.iterations;
    sol.duality_gap = r.duality_gap;
    if (r.status != SolveStatus::Optimal) return sol;
    sol.objective = r.primal_objective;
    for (int k = 0; k < lay.n_users; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        const RVector coords = r.x.segment(lay.w_offset[ks], basis.size());
        sol.w_matrices.push_back(basis.assemble({coords.data(), static_cast<std::size_t>(coords.size())}));
        sol.nu.push_back(r.x(lay.nu[ks]));
        sol.mu.push_back(r.x(lay.mu[ks]));
        const BeamExtraction be = extract_beamformer(sol.w_matrices.back());
        sol.beams.push_back(be.w);
        sol.rank_defects.push_back(be.defect);
    }
    return sol;
}

bool solution_feasible(const Scenario& scenario, const SdpSolution& solution) {
    if (!solution.optimal()) return false;
    const auto k_users = static_cast<std::size_t>(scenario.n_users());
    if (solution.beams.size() != k_users) return false;
    std::vector<CMatrix> w_set;
    double power = 0.0;
    for (const auto& w : solution.beams) {
        w_set.push_back(w * w.adjoint());
        power += w.squaredNorm();
    }
    if (power > scenario.power_budget * (1.0 + kFeasibilityCheckTol)) return false;
    const double tol = kFeasibilityCheckTol * std::max(1.0, scenario.channels.noise_var);
    for (std::size_t k = 0; k < k_users; ++k) {
        const BernsteinData bd = build_bernstein(w_set, static_cast<int>(k), scenario.channels.users[k],
                                                 scenario.channels.nominal[k], scenario.channels.noise_var);
        if (!surrogate_satisfied(bd, tol)) return false;
    }
    return true;
}

bool feasibility_probe(const Scenario& scenario, const P7Options& options) {
    try {
        return solution_feasible(scenario, solve_p7(scenario, options));
    } catch (const AssemblyError&) {
        return false;
    }
}

}  // namespace dfrc::sdp
