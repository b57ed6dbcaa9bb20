#pragma once

#include <span>

#include "dfrc/common.hpp"

namespace dfrc {

/// Max |M - M^H| relative to max(1, max |M|).
double hermitian_defect(const CMatrix& m);

/// Throws ValidationError unless m is square and Hermitian within `tol`.
void require_hermitian(const CMatrix& m, double tol = 1e-10, const char* what = "matrix");

/// Real symmetric embedding [[Re M, -Im M], [Im M, Re M]].
RMatrix real_embedding(const CMatrix& m);

/// Inverse of real_embedding for a possibly unstructured real symmetric X:
/// returns ((A + D) + j (C - B)) / 2 for X = [[A, B], [C, D]]. PSD inputs map
/// to PSD outputs.
CMatrix complex_from_embedding(const RMatrix& x);

/// Eigenvalues of a Hermitian matrix in ascending order.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Real coordinates of an N x N Hermitian matrix: N diagonal entries, then
/// for every p < q (row-major) the real part and the imaginary part of
/// entry (p, q). N^2 reals in total.
class HermitianBasis {
public:
    enum class Kind { Diagonal, Real, Imag };
    struct Element {
        Kind kind;
        int p;
        int q;
    };

    explicit HermitianBasis(int n);

    int n() const { return n_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const Element& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }

    /// Basis matrix E_i (Hermitian, N x N).
    CMatrix matrix(int i) const;

    /// Coefficient of y_i in v^T W v* for W = sum_i y_i E_i.
    double quadratic_coefficient(const CVector& v, int i) const;

    CMatrix assemble(std::span<const double> coords) const;
    RVector coordinates(const CMatrix& w) const;

private:
    int n_;
    std::vector<Element> elements_;
};

}  // namespace dfrc
