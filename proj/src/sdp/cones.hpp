#pragma once

// Cone algebra for the interior-point solver: vectors in the product cone
// (nonnegative orthant x second-order cones x PSD cones), Jordan products,
// step lengths and Nesterov-Todd scalings.

#include <optional>
#include <vector>

#include "dfrc/common.hpp"

namespace dfrc::sdp::detail {

struct ConeDims {
    int lp = 0;
    std::vector<int> soc;
    std::vector<int> psd;

    /// Barrier degree: lp + #soc + sum(psd).
    int degree() const;
};

struct ConeVec {
    RVector l;
    std::vector<RVector> q;
    std::vector<RMatrix> s;

    static ConeVec zeros(const ConeDims& dims);
    static ConeVec identity(const ConeDims& dims);

    ConeVec& operator+=(const ConeVec& o);
    ConeVec& operator-=(const ConeVec& o);
    ConeVec& operator*=(double a);
    void axpy(double a, const ConeVec& o);
};

ConeVec operator+(ConeVec a, const ConeVec& b);
ConeVec operator-(ConeVec a, const ConeVec& b);
ConeVec operator*(double a, ConeVec v);

double dot(const ConeVec& a, const ConeVec& b);
double norm(const ConeVec& a);

/// Jordan product u o v.
ConeVec jordan_product(const ConeVec& u, const ConeVec& v);

/// Solves lambda o u = v for u, with lambda in the scaled frame (PSD parts
/// diagonal, given by `lambda_eigs`).
ConeVec jordan_divide(const ConeVec& lambda, const std::vector<RVector>& lambda_eigs, const ConeVec& v);

/// Largest t with v - t e outside the interior, i.e. -min eigenvalue of v.
double min_eigenvalue(const ConeVec& v);

/// Largest alpha with lambda + alpha d in the cone (infinity if unbounded).
/// `lambda` must be in the scaled frame (PSD parts diagonal).
double max_step(const ConeVec& lambda, const std::vector<RVector>& lambda_eigs, const ConeVec& d);

/// Nesterov-Todd scaling W with W z = W^{-T} s = lambda.
struct Scaling {
    RVector d;  ///< orthant: W = diag(d)
    struct Soc {
        double beta;
        RVector wbar;  ///< J-normalized scaling point, W = beta * Wbar(wbar)
    };
    std::vector<Soc> soc;
    struct Psd {
        RMatrix r;     ///< W(Z) = R^T Z R
        RMatrix rinv;
        RMatrix t;     ///< (R R^T)^{-1}
    };
    std::vector<Psd> psd;

    ConeVec lambda;
    std::vector<RVector> lambda_eigs;

    static Scaling identity(const ConeDims& dims);

    /// Fails (nullopt) if s or z is not strictly interior.
    static std::optional<Scaling> compute(const ConeVec& s, const ConeVec& z);

    /// Scaling for the pair (W^T s_scaled, W^{-1} z_scaled), obtained by
    /// composing this scaling with the one of the scaled pair. Working in
    /// the scaled frame keeps the update accurate near the boundary.
    std::optional<Scaling> updated(const ConeVec& s_scaled, const ConeVec& z_scaled) const;

    ConeVec apply(const ConeVec& v) const;            ///< W v
    ConeVec apply_transpose(const ConeVec& v) const;  ///< W^T v
    ConeVec apply_inverse(const ConeVec& v) const;        ///< W^{-1} v
    ConeVec apply_inv_transpose(const ConeVec& v) const;  ///< W^{-T} v
    ConeVec apply_wtw(const ConeVec& v) const;        ///< W^T W v
    ConeVec apply_wtw_inv(const ConeVec& v) const;    ///< (W^T W)^{-1} v
};

/// Wbar * v for the hyperbolic Householder matrix defined by wbar.
RVector soc_wbar_apply(const RVector& wbar, const RVector& v);

}  // namespace dfrc::sdp::detail
