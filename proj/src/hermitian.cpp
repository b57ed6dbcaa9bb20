#include "dfrc/hermitian.hpp"

#include <string>

#include <Eigen/Eigenvalues>

namespace dfrc {

double hermitian_defect(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

void require_hermitian(const CMatrix& m, double tol, const char* what) {
    if (m.rows() != m.cols())
        throw ValidationError(std::string(what) + ": matrix is not square");
    if (hermitian_defect(m) > tol)
        throw ValidationError(std::string(what) + ": matrix is not Hermitian");
}

RMatrix real_embedding(const CMatrix& m) {
    const Eigen::Index n = m.rows();
    const Eigen::Index k = m.cols();
    RMatrix x(2 * n, 2 * k);
    x.topLeftCorner(n, k) = m.real();
    x.topRightCorner(n, k) = -m.imag();
    x.bottomLeftCorner(n, k) = m.imag();
    x.bottomRightCorner(n, k) = m.real();
    return x;
}

CMatrix complex_from_embedding(const RMatrix& x) {
    const Eigen::Index n = x.rows() / 2;
    const RMatrix re = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
    const RMatrix im = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
    CMatrix m(n, n);
    m.real() = re;
    m.imag() = im;
    return 0.5 * (m + m.adjoint());
}

RVector hermitian_eigenvalues(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

HermitianBasis::HermitianBasis(int n) : n_(n) {
    if (n < 1) throw ValidationError("HermitianBasis: dimension must be >= 1");
    elements_.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) elements_.push_back({Kind::Diagonal, i, i});
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            elements_.push_back({Kind::Real, p, q});
            elements_.push_back({Kind::Imag, p, q});
        }
}

CMatrix HermitianBasis::matrix(int i) const {
    CMatrix e = CMatrix::Zero(n_, n_);
    const auto& el = element(i);
    switch (el.kind) {
        case Kind::Diagonal:
            e(el.p, el.p) = 1.0;
            break;
        case Kind::Real:
            e(el.p, el.q) = 1.0;
            e(el.q, el.p) = 1.0;
            break;
        case Kind::Imag:
            e(el.p, el.q) = cdouble(0.0, 1.0);
            e(el.q, el.p) = cdouble(0.0, -1.0);
            break;
    }
    return e;
}

double HermitianBasis::quadratic_coefficient(const CVector& v, int i) const {
    const auto& el = element(i);
    switch (el.kind) {
        case Kind::Diagonal:
            return std::norm(v(el.p));
        case Kind::Real:
            return 2.0 * (v(el.p) * std::conj(v(el.q))).real();
        case Kind::Imag:
            return -2.0 * (v(el.p) * std::conj(v(el.q))).imag();
    }
    return 0.0;
}

CMatrix HermitianBasis::assemble(std::span<const double> coords) const {
    if (static_cast<int>(coords.size()) != size())
        throw ValidationError("HermitianBasis::assemble: coordinate count mismatch");
    CMatrix w = CMatrix::Zero(n_, n_);
    for (int i = 0; i < size(); ++i) {
        const auto& el = element(i);
        const double y = coords[static_cast<std::size_t>(i)];
        switch (el.kind) {
            case Kind::Diagonal:
                w(el.p, el.p) += y;
                break;
            case Kind::Real:
                w(el.p, el.q) += y;
                w(el.q, el.p) += y;
                break;
            case Kind::Imag:
                w(el.p, el.q) += cdouble(0.0, y);
                w(el.q, el.p) -= cdouble(0.0, y);
                break;
        }
    }
    return w;
}

RVector HermitianBasis::coordinates(const CMatrix& w) const {
    if (w.rows() != n_ || w.cols() != n_)
        throw ValidationError("HermitianBasis::coordinates: dimension mismatch");
    RVector y(size());
    for (int i = 0; i < size(); ++i) {
        const auto& el = element(i);
        switch (el.kind) {
            case Kind::Diagonal:
                y(i) = w(el.p, el.p).real();
                break;
            case Kind::Real:
                y(i) = 0.5 * (w(el.p, el.q).real() + w(el.q, el.p).real());
                break;
            case Kind::Imag:
                y(i) = 0.5 * (w(el.p, el.q).imag() - w(el.q, el.p).imag());
                break;
        }
    }
    return y;
}

}  // namespace dfrc
