#include "dfrc/sdp/problem.hpp"

#include <string>

namespace dfrc::sdp {

void LmiBlock::add_dense(int var, const RMatrix& f, double drop_tol) {
    Coefficient c{var, {}};
    for (int col = 0; col < f.cols(); ++col)
        for (int row = 0; row <= col; ++row) {
            const double v = 0.5 * (f(row, col) + f(col, row));
            if (std::abs(v) > drop_tol) c.entries.push_back({row, col, v});
        }
    if (!c.entries.empty()) coefficients.push_back(std::move(c));
}

int SdpProblem::add_variable(std::string label, bool nonnegative) {
    variables_.push_back({std::move(label), nonnegative});
    return static_cast<int>(variables_.size()) - 1;
}

void SdpProblem::add_constraint(LinearConstraint c) { constraints_.push_back(std::move(c)); }

LmiBlock& SdpProblem::add_lmi(std::string label, int dim) {
    LmiBlock b;
    b.label = std::move(label);
    b.dim = dim;
    b.constant = RMatrix::Zero(dim, dim);
    lmi_.push_back(std::move(b));
    return lmi_.back();
}

SocBlock& SdpProblem::add_soc(std::string label, int dim) {
    SocBlock b;
    b.label = std::move(label);
    b.dim = dim;
    b.constant = RVector::Zero(dim);
    soc_.push_back(std::move(b));
    return soc_.back();
}

void SdpProblem::validate() const {
    const int n = n_variables();
    auto check_var = [n](int v, const std::string& where) {
        if (v < 0 || v >= n) throw AssemblyError(where + ": reference to undeclared variable " + std::to_string(v));
    };
    for (const auto& t : objective_) check_var(t.var, "objective");
    for (const auto& c : constraints_)
        for (const auto& t : c.lhs) check_var(t.var, "constraint '" + c.label + "'");
    for (const auto& b : lmi_) {
        if (b.dim < 1) throw AssemblyError("LMI block '" + b.label + "' has dimension < 1");
        if (b.constant.rows() != b.dim || b.constant.cols() != b.dim)
            throw AssemblyError("LMI block '" + b.label + "' constant has wrong shape");
        for (const auto& c : b.coefficients) {
            check_var(c.var, "LMI block '" + b.label + "'");
            for (const auto& e : c.entries)
                if (e.row < 0 || e.col < e.row || e.col >= b.dim)
                    throw AssemblyError("LMI block '" + b.label + "' entry out of range");
        }
    }
    for (const auto& b : soc_) {
        if (b.dim < 1) throw AssemblyError("SOC block '" + b.label + "' has dimension < 1");
        if (b.constant.size() != b.dim) throw AssemblyError("SOC block '" + b.label + "' constant has wrong size");
        for (const auto& e : b.entries) {
            check_var(e.var, "SOC block '" + b.label + "'");
            if (e.row < 0 || e.row >= b.dim) throw AssemblyError("SOC block '" + b.label + "' row out of range");
        }
    }
}

double SdpProblem::evaluate(const LinearForm& f, const RVector& x) const {
    double v = 0.0;
    for (const auto& t : f) v += t.coef * x(t.var);
    return v;
}

RMatrix SdpProblem::evaluate(const LmiBlock& b, const RVector& x) const {
    RMatrix m = b.constant;
    for (const auto& c : b.coefficients) {
        const double xv = x(c.var);
        for (const auto& e : c.entries) {
            m(e.row, e.col) += xv * e.value;
            if (e.row != e.col) m(e.col, e.row) += xv * e.value;
        }
    }
    return m;
}

RVector SdpProblem::evaluate(const SocBlock& b, const RVector& x) const {
    RVector v = b.constant;
    for (const auto& e : b.entries) v(e.row) += e.value * x(e.var);
    return v;
}

}  // namespace dfrc::sdp
