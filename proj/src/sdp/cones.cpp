#include "cones.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dfrc::sdp::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x0^2 - |x1|^2 evaluated as a product to limit cancellation.
double soc_jnorm2(const RVector& x) {
    const double t = x.tail(x.size() - 1).norm();
    return (x(0) - t) * (x(0) + t);
}

RVector soc_j(const RVector& v) {
    RVector out = -v;
    out(0) = v(0);
    return out;
}

// Smallest positive root of c + b t + a t^2 (c > 0), or infinity.
double smallest_positive_root(double a, double b, double c) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300});
    if (std::abs(a) <= 1e-14 * scale) {
        return b < 0.0 ? -c / b : kInf;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return kInf;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double best = kInf;
    for (double r : {q / a, q != 0.0 ? c / q : kInf})
        if (r > 0.0 && r < best) best = r;
    return best;
}

}  // namespace

int ConeDims::degree() const {
    int d = lp + static_cast<int>(soc.size());
    for (int p : psd) d += p;
    return d;
}

ConeVec ConeVec::zeros(const ConeDims& dims) {
    ConeVec v;
    v.l = RVector::Zero(dims.lp);
    for (int d : dims.soc) v.q.push_back(RVector::Zero(d));
    for (int d : dims.psd) v.s.push_back(RMatrix::Zero(d, d));
    return v;
}

ConeVec ConeVec::identity(const ConeDims& dims) {
    ConeVec v;
    v.l = RVector::Ones(dims.lp);
    for (int d : dims.soc) {
        RVector e = RVector::Zero(d);
        e(0) = 1.0;
        v.q.push_back(std::move(e));
    }
    for (int d : dims.psd) v.s.push_back(RMatrix::Identity(d, d));
    return v;
}

ConeVec& ConeVec::operator+=(const ConeVec& o) {
    axpy(1.0, o);
    return *this;
}

ConeVec& ConeVec::operator-=(const ConeVec& o) {
    axpy(-1.0, o);
    return *this;
}

ConeVec& ConeVec::operator*=(double a) {
    l *= a;
    for (auto& v : q) v *= a;
    for (auto& m : s) m *= a;
    return *this;
}

void ConeVec::axpy(double a, const ConeVec& o) {
    l += a * o.l;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += a * o.q[i];
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += a * o.s[i];
}

ConeVec operator+(ConeVec a, const ConeVec& b) { return a += b; }
ConeVec operator-(ConeVec a, const ConeVec& b) { return a -= b; }
ConeVec operator*(double a, ConeVec v) { return v *= a; }

double dot(const ConeVec& a, const ConeVec& b) {
    double d = a.l.dot(b.l);
    for (std::size_t i = 0; i < a.q.size(); ++i) d += a.q[i].dot(b.q[i]);
    for (std::size_t i = 0; i < a.s.size(); ++i) d += a.s[i].cwiseProduct(b.s[i]).sum();
    return d;
}

double norm(const ConeVec& a) { return std::sqrt(dot(a, a)); }

ConeVec jordan_product(const ConeVec& u, const ConeVec& v) {
    ConeVec out;
    out.l = u.l.cwiseProduct(v.l);
    for (std::size_t i = 0; i < u.q.size(); ++i) {
        const RVector& a = u.q[i];
        const RVector& b = v.q[i];
        RVector r(a.size());
        r(0) = a.dot(b);
        const Eigen::Index m = a.size() - 1;
        r.tail(m) = a(0) * b.tail(m) + b(0) * a.tail(m);
        out.q.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < u.s.size(); ++i) {
        const RMatrix p = u.s[i] * v.s[i];
        out.s.push_back(0.5 * (p + p.transpose()));
    }
    return out;
}

ConeVec jordan_divide(const ConeVec& lambda, const std::vector<RVector>& lambda_eigs, const ConeVec& v) {
    ConeVec out;
    out.l = v.l.cwiseQuotient(lambda.l);
    for (std::size_t i = 0; i < v.q.size(); ++i) {
        const RVector& x = lambda.q[i];
        const RVector& b = v.q[i];
        const Eigen::Index m = x.size() - 1;
        const double det = soc_jnorm2(x);
        RVector u(x.size());
        u(0) = (x(0) * b(0) - x.tail(m).dot(b.tail(m))) / det;
        u.tail(m) = (b.tail(m) - x.tail(m) * u(0)) / x(0);
        out.q.push_back(std::move(u));
    }
    for (std::size_t i = 0; i < v.s.size(); ++i) {
        const RVector& lam = lambda_eigs[i];
        RMatrix u = v.s[i];
        for (Eigen::Index c = 0; c < u.cols(); ++c)
            for (Eigen::Index r = 0; r < u.rows(); ++r) u(r, c) *= 2.0 / (lam(r) + lam(c));
        out.s.push_back(std::move(u));
    }
    return out;
}

double min_eigenvalue(const ConeVec& v) {
    double m = kInf;
    if (v.l.size() > 0) m = std::min(m, v.l.minCoeff());
    for (const auto& x : v.q) m = std::min(m, x(0) - x.tail(x.size() - 1).norm());
    for (const auto& s : v.s) {
        Eigen::SelfAdjointEigenSolver<RMatrix> es(s, Eigen::EigenvaluesOnly);
        m = std::min(m, es.eigenvalues()(0));
    }
    return m;
}

double max_step(const ConeVec& lambda, const std::vector<RVector>& lambda_eigs, const ConeVec& d) {
    double alpha = kInf;
    for (Eigen::Index i = 0; i < d.l.size(); ++i)
        if (d.l(i) < 0.0) alpha = std::min(alpha, -lambda.l(i) / d.l(i));
    for (std::size_t i = 0; i < d.q.size(); ++i) {
        const RVector& x = lambda.q[i];
        const RVector& v = d.q[i];
        const Eigen::Index m = x.size() - 1;
        const double a = soc_jnorm2(v);
        const double b = 2.0 * (x(0) * v(0) - x.tail(m).dot(v.tail(m)));
        const double c = soc_jnorm2(x);
        alpha = std::min(alpha, smallest_positive_root(a, b, c));
    }
    for (std::size_t i = 0; i < d.s.size(); ++i) {
        const RVector inv_sqrt = lambda_eigs[i].cwiseSqrt().cwiseInverse();
        const RMatrix m = inv_sqrt.asDiagonal() * d.s[i] * inv_sqrt.asDiagonal();
        Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues()(0);
        if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
}

RVector soc_wbar_apply(const RVector& wbar, const RVector& v) {
    const Eigen::Index m = wbar.size() - 1;
    const double w0 = wbar(0);
    const double dot1 = wbar.tail(m).dot(v.tail(m));
    RVector out(wbar.size());
    out(0) = w0 * v(0) + dot1;
    out.tail(m) = v.tail(m) + (v(0) + dot1 / (1.0 + w0)) * wbar.tail(m);
    return out;
}

Scaling Scaling::identity(const ConeDims& dims) {
    Scaling w;
    w.d = RVector::Ones(dims.lp);
    for (int d : dims.soc) {
        RVector e = RVector::Zero(d);
        e(0) = 1.0;
        w.soc.push_back({1.0, std::move(e)});
    }
    for (int d : dims.psd) {
        const RMatrix eye = RMatrix::Identity(d, d);
        w.psd.push_back({eye, eye, eye});
        w.lambda_eigs.push_back(RVector::Ones(d));
    }
    w.lambda = ConeVec::identity(dims);
    return w;
}

std::optional<Scaling> Scaling::compute(const ConeVec& s, const ConeVec& z) {
    Scaling w;
    if (s.l.size() > 0 && (s.l.minCoeff() <= 0.0 || z.l.minCoeff() <= 0.0)) return std::nullopt;
    w.d = (s.l.cwiseQuotient(z.l)).cwiseSqrt();
    w.lambda.l = (s.l.cwiseProduct(z.l)).cwiseSqrt();

    for (std::size_t i = 0; i < s.q.size(); ++i) {
        const RVector& sv = s.q[i];
        const RVector& zv = z.q[i];
        const double sj = soc_jnorm2(sv);
        const double zj = soc_jnorm2(zv);
        if (!(sj > 0.0 && zj > 0.0 && sv(0) > 0.0 && zv(0) > 0.0)) return std::nullopt;
        const double sn = std::sqrt(sj);
        const double zn = std::sqrt(zj);
        const RVector sb = sv / sn;
        const RVector zb = zv / zn;
        const double gamma = std::sqrt(0.5 * (1.0 + zb.dot(sb)));
        RVector wbar = (sb + soc_j(zb)) / (2.0 * gamma);
        // Renormalize so that wbar^T J wbar = 1 exactly.
        wbar /= std::sqrt(soc_jnorm2(wbar));
        const double beta = std::sqrt(sn / zn);
        w.lambda.q.push_back(beta * soc_wbar_apply(wbar, zv));
        w.soc.push_back({beta, std::move(wbar)});
    }

    for (std::size_t i = 0; i < s.s.size(); ++i) {
        Eigen::LLT<RMatrix> ls(s.s[i]);
        Eigen::LLT<RMatrix> lz(z.s[i]);
        if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return std::nullopt;
        const RMatrix l_s = ls.matrixL();
        const RMatrix l_z = lz.matrixL();
        const RMatrix m = l_z.transpose() * l_s;
        // JacobiSVD: Eigen 3.4.0 BDCSVD returns a wrong factorization for some
        // inputs with highly repeated singular values.
        Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const RVector sigma = svd.singularValues();
        if (!(sigma.minCoeff() > 0.0)) return std::nullopt;
        const RVector isq = sigma.cwiseSqrt().cwiseInverse();
        Psd p;
        p.r = l_s * svd.matrixV() * isq.asDiagonal();
        p.rinv = isq.asDiagonal() * svd.matrixU().transpose() * l_z.transpose();
        p.t = p.rinv.transpose() * p.rinv;
        w.psd.push_back(std::move(p));
        w.lambda.s.push_back(sigma.asDiagonal());
        w.lambda_eigs.push_back(sigma);
    }
    return w;
}

ConeVec Scaling::apply(const ConeVec& v) const {
    ConeVec out;
    out.l = d.cwiseProduct(v.l);
    for (std::size_t i = 0; i < soc.size(); ++i) out.q.push_back(soc[i].beta * soc_wbar_apply(soc[i].wbar, v.q[i]));
    for (std::size_t i = 0; i < psd.size(); ++i) out.s.push_back(psd[i].r.transpose() * v.s[i] * psd[i].r);
    return out;
}

ConeVec Scaling::apply_transpose(const ConeVec& v) const {
    ConeVec out;
    out.l = d.cwiseProduct(v.l);
    for (std::size_t i = 0; i < soc.size(); ++i) out.q.push_back(soc[i].beta * soc_wbar_apply(soc[i].wbar, v.q[i]));
    for (std::size_t i = 0; i < psd.size(); ++i) out.s.push_back(psd[i].r * v.s[i] * psd[i].r.transpose());
    return out;
}

std::optional<Scaling> Scaling::updated(const ConeVec& s_scaled, const ConeVec& z_scaled) const {
    std::optional<Scaling> inner = compute(s_scaled, z_scaled);
    if (!inner) return std::nullopt;
    Scaling w;
    w.d = d.cwiseProduct(inner->d);
    w.lambda.l = inner->lambda.l;
    for (std::size_t i = 0; i < soc.size(); ++i) {
        // Boost part of the product Wbar(inner) Wbar(outer): its square
        // applied to e0 is v, and the boost with Wbar(w)^2 e0 = v has
        // w0 = sqrt((1 + v0) / 2), w1 = v1 / (2 w0).
        const RVector& wo = soc[i].wbar;
        const RVector& wi = inner->soc[i].wbar;
        const RVector v = soc_wbar_apply(wo, soc_wbar_apply(wi, soc_wbar_apply(wi, wo)));
        RVector wn(v.size());
        wn(0) = std::sqrt(0.5 * (1.0 + v(0)));
        wn.tail(v.size() - 1) = v.tail(v.size() - 1) / (2.0 * wn(0));
        wn /= std::sqrt(soc_jnorm2(wn));
        const double beta = soc[i].beta * inner->soc[i].beta;
        // lambda = W_new z with z = W_old^{-1} z_scaled.
        const RVector z_dir = soc_j(soc_wbar_apply(wo, soc_j(z_scaled.q[i])));
        w.lambda.q.push_back(inner->soc[i].beta * soc_wbar_apply(wn, z_dir));
        w.soc.push_back({beta, std::move(wn)});
    }
    for (std::size_t i = 0; i < psd.size(); ++i) {
        Psd p;
        p.r = psd[i].r * inner->psd[i].r;
        p.rinv = inner->psd[i].rinv * psd[i].rinv;
        p.t = p.rinv.transpose() * p.rinv;
        w.psd.push_back(std::move(p));
    }
    w.lambda.s = inner->lambda.s;
    w.lambda_eigs = inner->lambda_eigs;
    return w;
}

ConeVec Scaling::apply_inverse(const ConeVec& v) const {
    ConeVec out;
    out.l = v.l.cwiseQuotient(d);
    for (std::size_t i = 0; i < soc.size(); ++i)
        out.q.push_back(soc_j(soc_wbar_apply(soc[i].wbar, soc_j(v.q[i]))) / soc[i].beta);
    for (std::size_t i = 0; i < psd.size(); ++i) out.s.push_back(psd[i].rinv.transpose() * v.s[i] * psd[i].rinv);
    return out;
}

ConeVec Scaling::apply_inv_transpose(const ConeVec& v) const {
    ConeVec out;
    out.l = v.l.cwiseQuotient(d);
    for (std::size_t i = 0; i < soc.size(); ++i)
        out.q.push_back(soc_j(soc_wbar_apply(soc[i].wbar, soc_j(v.q[i]))) / soc[i].beta);
    for (std::size_t i = 0; i < psd.size(); ++i) out.s.push_back(psd[i].rinv * v.s[i] * psd[i].rinv.transpose());
    return out;
}

ConeVec Scaling::apply_wtw(const ConeVec& v) const {
    ConeVec out;
    out.l = d.cwiseAbs2().cwiseProduct(v.l);
    for (std::size_t i = 0; i < soc.size(); ++i) {
        const RVector& wb = soc[i].wbar;
        const double b2 = soc[i].beta * soc[i].beta;
        out.q.push_back(b2 * (2.0 * wb.dot(v.q[i]) * wb - soc_j(v.q[i])));
    }
    for (std::size_t i = 0; i < psd.size(); ++i) {
        const RMatrix rrt = psd[i].r * psd[i].r.transpose();
        out.s.push_back(rrt * v.s[i] * rrt);
    }
    return out;
}

ConeVec Scaling::apply_wtw_inv(const ConeVec& v) const {
    ConeVec out;
    out.l = v.l.cwiseQuotient(d.cwiseAbs2());
    for (std::size_t i = 0; i < soc.size(); ++i) {
        const RVector jw = soc_j(soc[i].wbar);
        const double b2 = soc[i].beta * soc[i].beta;
        out.q.push_back((2.0 * jw.dot(v.q[i]) * jw - soc_j(v.q[i])) / b2);
    }
    for (std::size_t i = 0; i < psd.size(); ++i) out.s.push_back(psd[i].t * v.s[i] * psd[i].t);
    return out;
}

}  // namespace dfrc::sdp::detail
