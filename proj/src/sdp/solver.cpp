#include "dfrc/sdp/solver.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/Sparse>

#include "cones.hpp"

namespace dfrc::sdp {

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        case SolveStatus::MaxIterations: return "MaxIterations";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

namespace {

using detail::ConeDims;
using detail::ConeVec;
using detail::Scaling;
using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Full-storage (both triangles) entry of an LMI coefficient.
struct FullEntry {
    int row;
    int col;
    double value;
};

struct PsdCoef {
    int var;
    std::vector<FullEntry> entries;
};

// Standard form:
//   minimize c^T x  s.t.  G x + s = h,  A x = b,  s in K.
// For an LMI  F0 + sum x_i F_i  >= 0  the slack is S = F0 + sum x_i F_i, so
// h = F0 and G_i = -F_i.
struct StandardForm {
    int n = 0;
    RVector c;
    SparseRows gl;
    RVector hl;
    SparseRows a;
    RVector b;
    std::vector<RMatrix> gq;  // dense G blocks for SOC
    std::vector<RVector> hq;
    std::vector<std::vector<PsdCoef>> fs;  // F_i per PSD block
    std::vector<RMatrix> hs;
    ConeDims dims;
    int n_ineq_rows = 0;
};

StandardForm standardize(const SdpProblem& p) {
    StandardForm sf;
    sf.n = p.n_variables();
    sf.c = RVector::Zero(sf.n);
    for (const auto& t : p.objective()) sf.c(t.var) -= t.coef;

    std::vector<Eigen::Triplet<double>> lt;
    std::vector<Eigen::Triplet<double>> at;
    std::vector<double> hl;
    std::vector<double> bv;
    for (const auto& con : p.constraints()) {
        if (con.sense == Sense::LessEqual) {
            const int row = static_cast<int>(hl.size());
            for (const auto& t : con.lhs) lt.emplace_back(row, t.var, t.coef);
            hl.push_back(con.rhs);
        } else {
            const int row = static_cast<int>(bv.size());
            for (const auto& t : con.lhs) at.emplace_back(row, t.var, t.coef);
            bv.push_back(con.rhs);
        }
    }
    sf.n_ineq_rows = static_cast<int>(hl.size());
    for (int i = 0; i < sf.n; ++i)
        if (p.variables()[static_cast<std::size_t>(i)].nonnegative) {
            lt.emplace_back(static_cast<int>(hl.size()), i, -1.0);
            hl.push_back(0.0);
        }
    sf.gl.resize(static_cast<Eigen::Index>(hl.size()), sf.n);
    sf.gl.setFromTriplets(lt.begin(), lt.end());
    sf.hl = Eigen::Map<const RVector>(hl.data(), static_cast<Eigen::Index>(hl.size()));
    sf.a.resize(static_cast<Eigen::Index>(bv.size()), sf.n);
    sf.a.setFromTriplets(at.begin(), at.end());
    sf.b = Eigen::Map<const RVector>(bv.data(), static_cast<Eigen::Index>(bv.size()));
    sf.dims.lp = static_cast<int>(hl.size());

    for (const auto& blk : p.soc_blocks()) {
        RMatrix g = RMatrix::Zero(blk.dim, sf.n);
        for (const auto& e : blk.entries) g(e.row, e.var) -= e.value;
        sf.gq.push_back(std::move(g));
        sf.hq.push_back(blk.constant);
        sf.dims.soc.push_back(blk.dim);
    }
    for (const auto& blk : p.lmi_blocks()) {
        // Merge duplicate variable entries into one coefficient.
        std::vector<int> slot(static_cast<std::size_t>(sf.n), -1);
        std::vector<PsdCoef> coefs;
        for (const auto& c : blk.coefficients) {
            int& k = slot[static_cast<std::size_t>(c.var)];
            if (k < 0) {
                k = static_cast<int>(coefs.size());
                coefs.push_back({c.var, {}});
            }
            auto& dst = coefs[static_cast<std::size_t>(k)].entries;
            for (const auto& e : c.entries) {
                dst.push_back({e.row, e.col, e.value});
                if (e.row != e.col) dst.push_back({e.col, e.row, e.value});
            }
        }
        sf.fs.push_back(std::move(coefs));
        sf.hs.push_back(0.5 * (blk.constant + blk.constant.transpose()));
        sf.dims.psd.push_back(blk.dim);
    }
    return sf;
}

// G x
ConeVec apply_g(const StandardForm& sf, const RVector& x) {
    ConeVec out;
    out.l = sf.gl * x;
    for (const auto& g : sf.gq) out.q.push_back(g * x);
    for (std::size_t b = 0; b < sf.fs.size(); ++b) {
        const int d = sf.dims.psd[b];
        RMatrix m = RMatrix::Zero(d, d);
        for (const auto& c : sf.fs[b]) {
            const double xv = x(c.var);
            if (xv == 0.0) continue;
            for (const auto& e : c.entries) m(e.row, e.col) -= xv * e.value;
        }
        out.s.push_back(std::move(m));
    }
    return out;
}

// G^T z
RVector apply_gt(const StandardForm& sf, const ConeVec& z) {
    RVector out = sf.gl.transpose() * z.l;
    for (std::size_t b = 0; b < sf.gq.size(); ++b) out.noalias() += sf.gq[b].transpose() * z.q[b];
    for (std::size_t b = 0; b < sf.fs.size(); ++b) {
        const RMatrix& zm = z.s[b];
        for (const auto& c : sf.fs[b]) {
            double v = 0.0;
            for (const auto& e : c.entries) v += e.value * zm(e.row, e.col);
            out(c.var) -= v;
        }
    }
    return out;
}

ConeVec cone_h(const StandardForm& sf) {
    ConeVec h;
    h.l = sf.hl;
    h.q = sf.hq;
    h.s = sf.hs;
    return h;
}

// Factorization of the reduced KKT system
//   [ 0  A^T  G^T    ] [x]   [bx]
//   [ A  0    0      ] [y] = [by]
//   [ G  0   -W^T W  ] [z]   [bz]
class KktSolver {
public:
    KktSolver(const StandardForm& sf, const Scaling& w) : sf_(sf), w_(w) {}

    bool factor() {
        const int n = sf_.n;
        RMatrix h = RMatrix::Zero(n, n);

        // Orthant: G_l^T diag(1/d^2) G_l.
        for (Eigen::Index r = 0; r < sf_.gl.rows(); ++r) {
            const double wgt = 1.0 / (w_.d(r) * w_.d(r));
            for (SparseRows::InnerIterator i(sf_.gl, r); i; ++i)
                for (SparseRows::InnerIterator j(sf_.gl, r); j; ++j)
                    if (i.col() <= j.col()) h(i.col(), j.col()) += wgt * i.value() * j.value();
        }
        // SOC: G^T W^{-2} G = (2 u u^T - G^T J G) / beta^2, u = G^T J wbar.
        for (std::size_t b = 0; b < sf_.gq.size(); ++b) {
            const RMatrix& g = sf_.gq[b];
            const auto& sc = w_.soc[b];
            RVector jw = -sc.wbar;
            jw(0) = sc.wbar(0);
            const RVector u = g.transpose() * jw;
            const Eigen::Index m = g.rows() - 1;
            RMatrix contrib = 2.0 * u * u.transpose();
            contrib.noalias() -= g.row(0).transpose() * g.row(0);
            contrib.noalias() += g.bottomRows(m).transpose() * g.bottomRows(m);
            h.triangularView<Eigen::Upper>() += contrib / (sc.beta * sc.beta);
        }
        // PSD: H_ij += Tr(F_i T F_j T), summed over stored entries.
        for (std::size_t b = 0; b < sf_.fs.size(); ++b) {
            const RMatrix& t = w_.psd[b].t;
            const auto& coefs = sf_.fs[b];
            for (std::size_t i = 0; i < coefs.size(); ++i) {
                for (std::size_t j = i; j < coefs.size(); ++j) {
                    double v = 0.0;
                    for (const auto& ea : coefs[i].entries)
                        for (const auto& eb : coefs[j].entries)
                            v += ea.value * eb.value * t(ea.col, eb.row) * t(eb.col, ea.row);
                    int vi = coefs[i].var;
                    int vj = coefs[j].var;
                    if (vi > vj) std::swap(vi, vj);
                    h(vi, vj) += (vi == vj && i != j) ? 2.0 * v : v;
                }
            }
        }
        if (sf_.a.rows() > 0) {
            const RMatrix ad = RMatrix(sf_.a);
            h.triangularView<Eigen::Upper>() += ad.transpose() * ad;
        }
        h.triangularView<Eigen::StrictlyLower>() = h.transpose();

        // Symmetric Jacobi equilibration, then a small relative
        // regularization so weakly determined directions cannot break the
        // factorization; solve() refines against the unregularized system.
        dscale_ = h.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
        const RMatrix hs = dscale_.asDiagonal() * h * dscale_.asDiagonal();
        double reg = 1e-14;
        for (int attempt = 0; attempt < 8; ++attempt, reg *= 100.0) {
            RMatrix hr = hs;
            hr.diagonal().array() += reg;
            llt_.compute(hr);
            if (llt_.info() != Eigen::Success || !std::isfinite(llt_.matrixLLT().diagonal().minCoeff())) continue;
            if (sf_.a.rows() == 0) return true;
            const RMatrix ad = RMatrix(sf_.a);
            RMatrix hinv_at(ad.cols(), ad.rows());
            for (Eigen::Index j = 0; j < ad.rows(); ++j) hinv_at.col(j) = hsolve(ad.row(j).transpose());
            schur_.compute(ad * hinv_at);
            if (schur_.info() == Eigen::Success) return true;
        }
        return false;
    }

    RVector hsolve(const RVector& r) const { return dscale_.cwiseProduct(llt_.solve(dscale_.cwiseProduct(r))); }

    // z is returned in the scaled frame, z_scaled = W z, and bz is expected
    // there too (W^{-T} bz). Working with Gs = W^{-T} G avoids products with
    // W^T W, whose entries blow up near the boundary.
    struct Solution {
        RVector x;
        RVector y;
        ConeVec z;
    };

    // The z right-hand side is split as W^{-T} bz_orig + bz_scaled; the
    // unscaled part is differenced against G x before scaling, so active
    // rows (tiny scaling) do not amplify rounding. Iterative refinement runs
    // against the unregularized system until the residual stops halving.
    Solution solve(const RVector& bx, const RVector& by, const ConeVec* bz_orig, const ConeVec& bz_scaled,
                   int max_rounds = 12) const {
        ConeVec bz = bz_scaled;
        if (bz_orig) bz += w_.apply_inv_transpose(*bz_orig);
        Solution sol = solve_once(bx, by, bz);
        auto z_residual = [&](const Solution& cur) {
            ConeVec gx = apply_g(sf_, cur.x);
            ConeVec rz = bz_orig ? ConeVec(*bz_orig - gx) : ConeVec(-1.0 * gx);
            rz = w_.apply_inv_transpose(rz);
            rz += bz_scaled;
            rz += cur.z;
            return rz;
        };
        sol.z = w_.apply_inv_transpose(bz_orig ? ConeVec(apply_g(sf_, sol.x) - *bz_orig) : apply_g(sf_, sol.x));
        sol.z -= bz_scaled;
        Solution backup;
        double prev = std::numeric_limits<double>::infinity();
        for (int r = 0; r < max_rounds; ++r) {
            RVector rx = bx - gs_transpose(sol.z);
            if (sf_.a.rows() > 0) rx -= sf_.a.transpose() * sol.y;
            const RVector ry = by - sf_.a * sol.x;
            const ConeVec rz = z_residual(sol);
            const double res = std::sqrt(rx.squaredNorm() + ry.squaredNorm() + detail::dot(rz, rz));
            if (!(res < prev)) {
                if (r > 0) sol = backup;
                break;
            }
            if (!(res < 0.5 * prev) && r > 0) break;
            prev = res;
            backup = sol;
            const Solution corr = solve_once(rx, ry, rz);
            sol.x += corr.x;
            sol.y += corr.y;
            sol.z += corr.z;
        }
        return sol;
    }

    ConeVec gs(const RVector& x) const { return w_.apply_inv_transpose(apply_g(sf_, x)); }
    RVector gs_transpose(const ConeVec& z) const { return apply_gt(sf_, w_.apply_inverse(z)); }

private:
    Solution solve_once(const RVector& bx, const RVector& by, const ConeVec& bz) const {
        Solution sol;
        // (Gs^T Gs + A^T A) x + A^T y = bx + Gs^T bz + A^T by
        RVector rhs = bx + gs_transpose(bz);
        if (sf_.a.rows() > 0) {
            rhs += sf_.a.transpose() * by;
            const RVector hinv_rhs = hsolve(rhs);
            sol.y = schur_.solve(RVector(sf_.a * hinv_rhs - by));
            sol.x = hsolve(rhs - sf_.a.transpose() * sol.y);
        } else {
            sol.y = RVector::Zero(0);
            sol.x = hsolve(rhs);
        }
        sol.z = gs(sol.x) - bz;
        return sol;
    }

    const StandardForm& sf_;
    const Scaling& w_;
    RVector dscale_;
    Eigen::LLT<RMatrix> llt_;
    Eigen::LLT<RMatrix> schur_;
};

struct Iterate {
    RVector x;
    RVector y;
    ConeVec z;
    ConeVec s;
    double tau = 1.0;
    double kappa = 1.0;
};

void shift_into_cone(ConeVec& v, const ConeDims& dims) {
    const double t = -detail::min_eigenvalue(v);
    if (t >= -1e-8 * std::max(detail::norm(v), 1.0)) v.axpy(1.0 + t, ConeVec::identity(dims));
}

void fill_duals(SolverResult& res, const StandardForm& sf, const ConeVec& z, const RVector& y) {
    res.linear_duals = z.l;
    res.equality_duals = y;
    res.soc_duals = z.q;
    res.lmi_duals = z.s;
    (void)sf;
}

}  // namespace

SolverResult solve(const SdpProblem& problem, const SolverSettings& settings) {
    problem.validate();
    const StandardForm sf = standardize(problem);
    const ConeDims& dims = sf.dims;
    const ConeVec h = cone_h(sf);
    const int degree = dims.degree();

    SolverResult res;
    res.x = RVector::Zero(sf.n);

    const double resx0 = std::max(1.0, sf.c.norm());
    const double resy0 = std::max(1.0, sf.b.norm());
    const double resz0 = std::max(1.0, detail::norm(h));

    // Starting point from two least-squares problems with W = I.
    Iterate it;
    {
        const Scaling ident = Scaling::identity(dims);
        KktSolver kkt(sf, ident);
        if (!kkt.factor()) {
            res.status = SolveStatus::NumericalFailure;
            return res;
        }
        auto primal = kkt.solve(RVector::Zero(sf.n), sf.b, &h, ConeVec::zeros(dims));
        it.x = primal.x;
        it.s = -1.0 * primal.z;
        auto dual = kkt.solve(-sf.c, RVector::Zero(sf.b.size()), nullptr, ConeVec::zeros(dims));
        it.y = dual.y;
        it.z = dual.z;
        shift_into_cone(it.s, dims);
        shift_into_cone(it.z, dims);
    }

    auto finish = [&](SolveStatus status, const Iterate& cur, int iters) {
        res.status = status;
        res.iterations = iters;
        const double tau = (status == SolveStatus::Infeasible || status == SolveStatus::Unbounded) ? 1.0 : cur.tau;
        res.x = cur.x / tau;
        fill_duals(res, sf, (1.0 / tau) * ConeVec(cur.z), cur.y / tau);
        if (status != SolveStatus::Infeasible && status != SolveStatus::Unbounded) {
            res.primal_objective = -sf.c.dot(res.x);
            res.dual_objective = (sf.b.dot(cur.y) + detail::dot(h, cur.z)) / cur.tau;
            res.duality_gap = detail::dot(cur.s, cur.z) / (cur.tau * cur.tau);
        }
        return res;
    };

    std::optional<Scaling> scaling = Scaling::compute(it.s, it.z);
    if (!scaling) {
        res.status = SolveStatus::NumericalFailure;
        return res;
    }
    for (int iter = 0; iter <= settings.max_iter; ++iter) {
        // Residuals of the embedded system.
        const RVector gtz = apply_gt(sf, it.z);
        RVector hrx = -gtz;
        if (sf.a.rows() > 0) hrx -= sf.a.transpose() * it.y;
        const RVector hry = sf.a * it.x;
        ConeVec hrz = it.s + apply_g(sf, it.x);

        const RVector rx = hrx - it.tau * sf.c;
        const RVector ry = hry - it.tau * sf.b;
        ConeVec rz = hrz;
        rz.axpy(-it.tau, h);

        const double cx = sf.c.dot(it.x);
        const double by = sf.b.dot(it.y);
        const double hz = detail::dot(h, it.z);
        const double rt = it.kappa + cx + by + hz;
        const double sz = detail::dot(scaling->lambda, scaling->lambda);
        const double mu = (sz + it.tau * it.kappa) / (degree + 1);

        const double pcost = cx / it.tau;
        const double dcost = -(by + hz) / it.tau;
        const double gap = sz / (it.tau * it.tau);
        const double pres = std::max(ry.norm() / resy0, detail::norm(rz) / resz0) / it.tau;
        const double dres = rx.norm() / resx0 / it.tau;
        double relgap = std::numeric_limits<double>::infinity();
        if (pcost < 0.0)
            relgap = gap / -pcost;
        else if (dcost > 0.0)
            relgap = gap / dcost;

        IterationRecord rec;
        rec.iteration = iter;
        rec.primal_objective = -pcost;
        rec.dual_objective = -dcost;
        rec.gap = gap;
        rec.primal_residual = pres;
        rec.dual_residual = dres;
        res.primal_residual = pres;
        res.dual_residual = dres;
        res.relative_gap = relgap;

        // Infeasibility certificates.
        const double pinfres = (hz + by < 0.0) ? hrx.norm() / resx0 / -(hz + by) : std::numeric_limits<double>::infinity();
        const double dinfres = (cx < 0.0) ? std::max(hry.norm() / resy0, detail::norm(hrz) / resz0) / -cx
                                          : std::numeric_limits<double>::infinity();

        if (pres <= settings.tol_feas && dres <= settings.tol_feas &&
            (gap <= settings.tol_abs_gap || relgap <= settings.tol_gap)) {
            res.history.push_back(rec);
            return finish(SolveStatus::Optimal, it, iter);
        }
        if (pinfres <= settings.tol_feas) {
            res.history.push_back(rec);
            const double scale = -(hz + by);
            Iterate cert = it;
            cert.x = RVector::Zero(sf.n);
            cert.y = it.y / scale;
            cert.z = (1.0 / scale) * ConeVec(it.z);
            return finish(SolveStatus::Infeasible, cert, iter);
        }
        if (dinfres <= settings.tol_feas) {
            res.history.push_back(rec);
            Iterate cert = it;
            cert.x = it.x / -cx;
            return finish(SolveStatus::Unbounded, cert, iter);
        }
        const double size = std::max({it.x.norm(), detail::norm(it.z), detail::norm(it.s)});
        if (size > settings.divergence * it.tau || it.tau < 1e-14 * std::max(1.0, it.kappa)) {
            res.history.push_back(rec);
            if (hz + by < 0.0) {
                const double scale = -(hz + by);
                Iterate cert = it;
                cert.y = it.y / scale;
                cert.z = (1.0 / scale) * ConeVec(it.z);
                return finish(SolveStatus::Infeasible, cert, iter);
            }
            if (cx < 0.0) {
                Iterate cert = it;
                cert.x = it.x / -cx;
                return finish(SolveStatus::Unbounded, cert, iter);
            }
            return finish(SolveStatus::NumericalFailure, it, iter);
        }
        if (iter == settings.max_iter) {
            res.history.push_back(rec);
            return finish(SolveStatus::MaxIterations, it, iter);
        }

        const Scaling& w = *scaling;
        KktSolver kkt(sf, w);
        if (!kkt.factor()) {
            res.history.push_back(rec);
            return finish(SolveStatus::NumericalFailure, it, iter);
        }
        // Inner products with h are taken in the scaled frame: h^T z = (W^{-T} h)^T (W z).
        const ConeVec h_scaled = w.apply_inv_transpose(h);
        const auto base = kkt.solve(-sf.c, sf.b, &h, ConeVec::zeros(dims));
        const double denom_base = sf.c.dot(base.x) + sf.b.dot(base.y) + detail::dot(h_scaled, base.z);

        const ConeVec& lambda = w.lambda;
        const ConeVec lambda_sq = detail::jordan_product(lambda, lambda);
        const ConeVec e = ConeVec::identity(dims);

        struct Direction {
            RVector dx;
            RVector dy;
            ConeVec ds_scaled;
            ConeVec dz_scaled;
            double dtau;
            double dkappa;
        };

        auto compute_direction = [&](double sigma, const ConeVec* corr, double corr_tk) -> Direction {
            ConeVec ds = -1.0 * lambda_sq;
            ds.axpy(sigma * mu, e);
            if (corr) ds -= *corr;
            const double dk = -it.tau * it.kappa + sigma * mu - corr_tk;

            const ConeVec lds = detail::jordan_divide(lambda, w.lambda_eigs, ds);
            const ConeVec bz_orig = -(1.0 - sigma) * rz;
            const auto sol = kkt.solve((1.0 - sigma) * rx, -(1.0 - sigma) * ry, &bz_orig, -1.0 * lds);

            const double num = -(1.0 - sigma) * rt - dk / it.tau -
                               (sf.c.dot(sol.x) + sf.b.dot(sol.y) + detail::dot(h_scaled, sol.z));
            const double den = denom_base - it.kappa / it.tau;
            Direction d;
            d.dtau = num / den;
            d.dx = sol.x + d.dtau * base.x;
            d.dy = sol.y + d.dtau * base.y;
            d.dz_scaled = sol.z;
            d.dz_scaled.axpy(d.dtau, base.z);
            d.dkappa = (dk - it.kappa * d.dtau) / it.tau;
            d.ds_scaled = lds - d.dz_scaled;
            return d;
        };

        auto step_to_boundary = [&](const Direction& d) {
            double a = std::min(detail::max_step(lambda, w.lambda_eigs, d.ds_scaled),
                                detail::max_step(lambda, w.lambda_eigs, d.dz_scaled));
            if (d.dtau < 0.0) a = std::min(a, -it.tau / d.dtau);
            if (d.dkappa < 0.0) a = std::min(a, -it.kappa / d.dkappa);
            return a;
        };

        const Direction aff = compute_direction(0.0, nullptr, 0.0);
        const double step_aff = std::min(1.0, step_to_boundary(aff));
        const double sigma = std::clamp(std::pow(1.0 - step_aff, 3.0), 0.0, 1.0);

        const ConeVec corr = detail::jordan_product(aff.ds_scaled, aff.dz_scaled);
        const Direction dir = compute_direction(sigma, &corr, aff.dtau * aff.dkappa);
        const double step = std::min(1.0, 0.99 * step_to_boundary(dir));
        rec.step = step;
        res.history.push_back(rec);

        if (!(step > 0.0) || !std::isfinite(step)) return finish(SolveStatus::NumericalFailure, it, iter);

        // The new scaling is built in the scaled frame and s, z are recovered
        // from it; a rare Cholesky failure from rounding shortens the step.
        double alpha = step;
        std::optional<Scaling> next;
        for (int attempt = 0; attempt < 40 && !next; ++attempt) {
            if (attempt > 0) alpha *= 0.5;
            if (!(it.tau + alpha * dir.dtau > 0.0 && it.kappa + alpha * dir.dkappa > 0.0)) continue;
            ConeVec s_scaled = lambda;
            s_scaled.axpy(alpha, dir.ds_scaled);
            ConeVec z_scaled = lambda;
            z_scaled.axpy(alpha, dir.dz_scaled);
            next = w.updated(s_scaled, z_scaled);
        }
        if (!next) {
            res.history.back().step = 0.0;
            return finish(SolveStatus::NumericalFailure, it, iter);
        }
        res.history.back().step = alpha;
        it.x += alpha * dir.dx;
        if (it.y.size() > 0) it.y += alpha * dir.dy;
        it.tau += alpha * dir.dtau;
        it.kappa += alpha * dir.dkappa;
        // s and z proper are updated additively so the residuals stay linear
        // in the step; rebuilding them as W^T lambda loses digits once the
        // scaling is badly conditioned. The scaling itself only drives the
        // Newton system.
        it.s.axpy(alpha, w.apply_transpose(dir.ds_scaled));
        it.z.axpy(alpha, w.apply_inverse(dir.dz_scaled));
        scaling = std::move(next);
    }
    return finish(SolveStatus::MaxIterations, it, settings.max_iter);
}

}  // namespace dfrc::sdp
