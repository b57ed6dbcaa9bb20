#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dfrc {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;

/// Input lies outside the mathematical domain of an operation (angle out of
/// range, negative SINR, empty region, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structurally invalid input (dimension mismatch, non-Hermitian matrix,
/// out-of-range index, bad configuration value).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A conic problem could not be assembled from the given data.
class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace dfrc
