#pragma once

#include <string>
#include <vector>

#include "dfrc/common.hpp"

namespace dfrc::sdp {

struct Term {
    int var;
    double coef;
};
using LinearForm = std::vector<Term>;

enum class Sense { LessEqual, Equal };

struct LinearConstraint {
    std::string label;
    LinearForm lhs;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// One stored entry of a symmetric coefficient matrix (row <= col).
struct SymEntry {
    int row;
    int col;
    double value;
};

/// Linear matrix inequality  constant + sum_i x_i F_i  PSD.
struct LmiBlock {
    struct Coefficient {
        int var;
        std::vector<SymEntry> entries;  ///< upper triangle of F_i
    };

    std::string label;
    int dim = 0;
    RMatrix constant;
    std::vector<Coefficient> coefficients;

    /// Adds the upper triangle of a dense symmetric coefficient matrix.
    void add_dense(int var, const RMatrix& f, double drop_tol = 0.0);
};

/// Second-order cone membership  constant + sum_i x_i g_i  in
/// {(t, u) : t >= ||u||}.
struct SocBlock {
    struct Entry {
        int row;
        int var;
        double value;
    };

    std::string label;
    int dim = 0;
    RVector constant;
    std::vector<Entry> entries;
};

struct Variable {
    std::string label;
    bool nonnegative = false;
};

/// Conic program over scalar unknowns x:
///   maximize    objective(x)
///   subject to  linear (<=, =) constraints,
///               LMI blocks PSD, SOC blocks in the cone,
///               x_i >= 0 for variables declared nonnegative.
/// PSD matrix unknowns enter through their real coordinates and an LMI
/// block asserting positivity.
class SdpProblem {
public:
    int add_variable(std::string label, bool nonnegative = false);
    void add_constraint(LinearConstraint c);
    LmiBlock& add_lmi(std::string label, int dim);
    SocBlock& add_soc(std::string label, int dim);
    void set_objective(LinearForm f) { objective_ = std::move(f); }

    int n_variables() const { return static_cast<int>(variables_.size()); }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }
    const std::vector<LmiBlock>& lmi_blocks() const { return lmi_; }
    const std::vector<SocBlock>& soc_blocks() const { return soc_; }
    const LinearForm& objective() const { return objective_; }

    /// Throws AssemblyError on references to undeclared unknowns or empty
    /// blocks.
    void validate() const;

    double evaluate(const LinearForm& f, const RVector& x) const;
    RMatrix evaluate(const LmiBlock& b, const RVector& x) const;
    RVector evaluate(const SocBlock& b, const RVector& x) const;

private:
    std::vector<Variable> variables_;
    std::vector<LinearConstraint> constraints_;
    std::vector<LmiBlock> lmi_;
    std::vector<SocBlock> soc_;
    LinearForm objective_;
};

}  // namespace dfrc::sdp
