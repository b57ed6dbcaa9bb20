#include "dfrc/array_model.hpp"

#include <algorithm>
#include <cmath>

#include "dfrc/hermitian.hpp"
#include "dfrc/quadrature.hpp"

namespace dfrc {

namespace {

constexpr double kHalfPi = kPi / 2.0;
// Slack for angles produced by degree conversions of +-90.
constexpr double kAngleSlack = 1e-12;

}  // namespace

void UlaConfig::validate() const {
    if (n_antennas < 1) throw ValidationError("UlaConfig: n_antennas must be >= 1");
    if (!(spacing > 0.0)) throw ValidationError("UlaConfig: spacing must be > 0");
}

AngularRegion::AngularRegion(std::vector<std::pair<double, double>> intervals)
    : intervals_(std::move(intervals)) {
    std::sort(intervals_.begin(), intervals_.end());
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto [lo, hi] = intervals_[i];
        if (!(lo < hi)) throw DomainError("AngularRegion: interval with lo >= hi");
        if (lo < -kHalfPi - kAngleSlack || hi > kHalfPi + kAngleSlack)
            throw DomainError("AngularRegion: interval outside [-pi/2, pi/2]");
        if (i > 0 && lo < intervals_[i - 1].second)
            throw DomainError("AngularRegion: overlapping intervals");
    }
}

AngularRegion AngularRegion::full() { return AngularRegion({{-kHalfPi, kHalfPi}}); }

AngularRegion AngularRegion::mainlobe(double center, double width) {
    const double lo = std::max(-kHalfPi, center - width / 2.0);
    const double hi = std::min(kHalfPi, center + width / 2.0);
    if (!(lo < hi)) return AngularRegion();
    return AngularRegion({{lo, hi}});
}

AngularRegion AngularRegion::sidelobes(double center, double width) {
    std::vector<std::pair<double, double>> parts;
    const double lo = center - width / 2.0;
    const double hi = center + width / 2.0;
    if (lo > -kHalfPi) parts.emplace_back(-kHalfPi, std::min(lo, kHalfPi));
    if (hi < kHalfPi) parts.emplace_back(std::max(hi, -kHalfPi), kHalfPi);
    std::erase_if(parts, [](const auto& iv) { return !(iv.first < iv.second); });
    return AngularRegion(std::move(parts));
}

double AngularRegion::total_width() const {
    double w = 0.0;
    for (const auto& [lo, hi] : intervals_) w += hi - lo;
    return w;
}

CVector steering_vector(const UlaConfig& cfg, double theta) {
    cfg.validate();
    if (!(std::abs(theta) <= kHalfPi + kAngleSlack))
        throw DomainError("steering_vector: |theta| must be <= pi/2");
    const double step = 2.0 * kPi * cfg.spacing * std::sin(theta);
    CVector a(cfg.n_antennas);
    for (int n = 0; n < cfg.n_antennas; ++n) a(n) = std::polar(1.0, step * n);
    return a;
}

double bartlett_power(const UlaConfig& cfg, const CMatrix& covariance, double theta) {
    const CVector a = steering_vector(cfg, theta);
    if (covariance.rows() != a.size() || covariance.cols() != a.size())
        throw ValidationError("bartlett_power: covariance dimension mismatch");
    const cdouble p = a.transpose() * covariance * a.conjugate();
    const double scale = std::max(1.0, std::abs(p));
    if (std::abs(p.imag()) > 1e-10 * scale)
        throw ValidationError("bartlett_power: complex-valued output, covariance not Hermitian");
    return p.real();
}

double bartlett_power(const UlaConfig& cfg, std::span<const CMatrix> w_set, double theta) {
    if (w_set.empty()) throw ValidationError("bartlett_power: empty beamformer set");
    CMatrix r = CMatrix::Zero(cfg.n_antennas, cfg.n_antennas);
    for (const auto& w : w_set) {
        if (w.rows() != cfg.n_antennas || w.cols() != cfg.n_antennas)
            throw ValidationError("bartlett_power: W_k dimension mismatch");
        require_hermitian(w, 1e-10, "W_k");
        r += w;
    }
    return bartlett_power(cfg, r, theta);
}

CMatrix lobe_matrix(const UlaConfig& cfg, const AngularRegion& region, int quad_points) {
    cfg.validate();
    if (region.empty()) throw DomainError("lobe_matrix: empty region");
    if (quad_points < 16) throw DomainError("lobe_matrix: need at least 16 quadrature points");
    const int n = cfg.n_antennas;
    CMatrix acc = CMatrix::Zero(n, n);
    for (const auto& [lo, hi] : region.intervals()) {
        const QuadratureRule rule = gauss_legendre(quad_points, lo, hi);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const CVector a = steering_vector(cfg, rule.nodes[i]);
            acc.noalias() += rule.weights[i] * (a * a.adjoint());
        }
    }
    return 0.5 * (acc + acc.adjoint());
}

}  // namespace dfrc
