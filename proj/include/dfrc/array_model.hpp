#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dfrc/common.hpp"

namespace dfrc {

/// Uniform linear array. Element spacing is expressed in carrier
/// wavelengths so the wavelength never appears explicitly.
struct UlaConfig {
    int n_antennas = 1;
    double spacing = 0.5;

    void validate() const;
};

/// Union of disjoint angular intervals (radians, inside [-pi/2, pi/2]).
class AngularRegion {
public:
    AngularRegion() = default;
    explicit AngularRegion(std::vector<std::pair<double, double>> intervals);

    static AngularRegion full();

    /// Mainlobe [center - width/2, center + width/2] clipped to the visible
    /// region.
    static AngularRegion mainlobe(double center, double width);

    /// Complement of `mainlobe(center, width)` inside the visible region.
    static AngularRegion sidelobes(double center, double width);

    const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
    double total_width() const;
    bool empty() const { return intervals_.empty(); }

private:
    std::vector<std::pair<double, double>> intervals_;
};

/// a(theta) with entry n equal to exp(j 2 pi d n sin(theta)).
CVector steering_vector(const UlaConfig& cfg, double theta);

/// Bartlett output power sum_k a^T(theta) W_k a*(theta).
double bartlett_power(const UlaConfig& cfg, std::span<const CMatrix> w_set, double theta);

/// Same as above for an already-summed covariance R = sum_k W_k.
double bartlett_power(const UlaConfig& cfg, const CMatrix& covariance, double theta);

/// Region integral of a(theta) a^H(theta) by Gauss-Legendre quadrature,
/// `quad_points` nodes per interval.
CMatrix lobe_matrix(const UlaConfig& cfg, const AngularRegion& region, int quad_points = 256);

}  // namespace dfrc
