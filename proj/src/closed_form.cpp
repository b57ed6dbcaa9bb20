#include "dfrc/closed_form.hpp"

#include <cmath>

namespace dfrc {

namespace {

void check_inputs(const CVector& h, const CVector& a_conj, double gamma, double noise_var, double sigma_delta,
                  double epsilon) {
    if (h.size() == 0 || h.size() != a_conj.size()) throw ValidationError("closed form: h and a* must have equal nonzero length");
    if (!h.allFinite() || !a_conj.allFinite()) throw ValidationError("closed form: non-finite input");
    if (!(gamma > 0.0)) throw ValidationError("closed form: gamma must be > 0");
    if (!(noise_var > 0.0)) throw ValidationError("closed form: noise_var must be > 0");
    if (!(sigma_delta >= 0.0)) throw ValidationError("closed form: sigma_delta must be >= 0");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ValidationError("closed form: epsilon must be >= 0");
    if (h.squaredNorm() == 0.0) throw DomainError("closed form: zero channel");
}

// Phase factor making <e, a*>-contribution to a^T w real and nonnegative.
cdouble align(const CVector& a_conj, const CVector& e) {
    const cdouble p = a_conj.dot(e);  // a^T e
    const double m = std::abs(p);
    return m > 0.0 ? std::conj(p) / m : cdouble(1.0, 0.0);
}

double radar_objective(const CVector& a_conj, const CVector& w) { return std::norm(a_conj.dot(w)); }

CVector mixture(const GramSchmidtPair& basis, const CVector& a_conj, double x) {
    CVector w = x * align(a_conj, basis.e_par) * basis.e_par;
    if (!basis.degenerate) w += std::sqrt(std::max(0.0, 1.0 - x * x)) * align(a_conj, basis.e_perp) * basis.e_perp;
    return w;
}

SuSolution bartlett(const CVector& a_conj, const GramSchmidtPair& basis) {
    SuSolution s;
    s.branch = SuBranch::Bartlett;
    s.w = a_conj / a_conj.norm();
    s.feasible = true;
    s.rho = std::norm(basis.e_par.dot(s.w));
    s.objective = radar_objective(a_conj, s.w);
    return s;
}

}  // namespace

GramSchmidtPair gram_schmidt_pair(const CVector& reference, const CVector& other) {
    if (reference.size() == 0 || reference.size() != other.size())
        throw ValidationError("gram_schmidt_pair: vectors must have equal nonzero length");
    const double rn = reference.norm();
    if (!(rn > 0.0)) throw DomainError("gram_schmidt_pair: zero reference vector");
    GramSchmidtPair g;
    g.e_par = reference / rn;
    const CVector rest = other - g.e_par.dot(other) * g.e_par;
    const double on = other.norm();
    const double pn = rest.norm();
    if (!(pn > 1e-12 * std::max(1.0, on))) {
        g.degenerate = true;
        g.e_perp = CVector::Zero(reference.size());
        return g;
    }
    g.e_perp = rest / pn;
    // One reorthogonalization pass.
    g.e_perp -= g.e_par.dot(g.e_perp) * g.e_par;
    g.e_perp.normalize();
    return g;
}

double su_g(double x, double h_norm2, double gamma, double noise_var, double sigma_delta, double epsilon) {
    const double u = x * x * h_norm2;
    const double s2 = sigma_delta * sigma_delta;
    return u - (gamma * noise_var - s2) - sigma_delta * std::sqrt(2.0 * epsilon) * std::sqrt(s2 + 2.0 * u);
}

double su_lambda(const CVector& h, const CVector& a_conj, double gamma, double noise_var, double sigma_delta,
                 double epsilon) {
    const double n = static_cast<double>(h.size());
    const double s2 = sigma_delta * sigma_delta;
    const double corr = std::norm(h.conjugate().dot(a_conj));
    return n * (gamma * noise_var - s2 + std::sqrt(2.0 * epsilon) * sigma_delta * std::sqrt(s2 + 2.0 * corr / n));
}

SuSolution su_solve_eps_zero(const CVector& h, const CVector& a_conj, double gamma, double noise_var,
                             double sigma_delta) {
    check_inputs(h, a_conj, gamma, noise_var, sigma_delta, 0.0);
    const GramSchmidtPair basis = gram_schmidt_pair(h.conjugate(), a_conj);
    const double n = static_cast<double>(h.size());
    const double c = gamma * noise_var - sigma_delta * sigma_delta;
    const double corr = std::norm(h.conjugate().dot(a_conj));
    const double rho = c / h.squaredNorm();

    SuSolution s;
    s.lambda_threshold = n * c;
    if (s.lambda_threshold <= corr) {
        s = bartlett(a_conj, basis);
        s.lambda_threshold = n * c;
        return s;
    }
    s.branch = SuBranch::Mixture;
    s.rho = rho;
    s.feasible = rho <= 1.0;
    if (!s.feasible) {
        s.w = CVector::Zero(h.size());
        return s;
    }
    s.w = mixture(basis, a_conj, std::sqrt(rho));
    s.objective = radar_objective(a_conj, s.w);
    return s;
}

SuSolution su_solve(const CVector& h, const CVector& a_conj, double gamma, double noise_var, double sigma_delta,
                    double epsilon) {
    check_inputs(h, a_conj, gamma, noise_var, sigma_delta, epsilon);
    if (epsilon == 0.0) return su_solve_eps_zero(h, a_conj, gamma, noise_var, sigma_delta);

    const GramSchmidtPair basis = gram_schmidt_pair(h.conjugate(), a_conj);
    const double h2 = h.squaredNorm();
    const double lambda = su_lambda(h, a_conj, gamma, noise_var, sigma_delta, epsilon);
    const double corr = std::norm(h.conjugate().dot(a_conj));
    if (lambda <= corr) {
        SuSolution s = bartlett(a_conj, basis);
        s.lambda_threshold = lambda;
        return s;
    }

    auto g = [&](double x) { return su_g(x, h2, gamma, noise_var, sigma_delta, epsilon); };
    SuSolution s;
    s.branch = SuBranch::Mixture;
    s.lambda_threshold = lambda;
    if (g(1.0) < 0.0) {
        s.w = CVector::Zero(h.size());
        return s;
    }
    s.feasible = true;

    auto bisect = [&](double lo, double hi) {
        // g(lo) < 0 <= g(hi)
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < 0.0 ? lo : hi) = mid;
        }
        return hi;
    };

    double x = 0.0;
    if (g(0.0) < 0.0) {
        x = bisect(0.0, 1.0);
    } else {
        // Two crossings possible; the Bartlett point lies between them.
        s.root_anomaly = true;
        const double xb = std::sqrt(std::min(1.0, corr / (h2 * static_cast<double>(h.size()))));
        const double upper = bisect(xb, 1.0);
        double lower = 0.0;
        {
            double lo = 0.0, hi = xb;  // g(lo) >= 0 > g(hi)
            for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
                const double mid = 0.5 * (lo + hi);
                (g(mid) >= 0.0 ? lo : hi) = mid;
            }
            lower = lo;
        }
        x = radar_objective(a_conj, mixture(basis, a_conj, lower)) > radar_objective(a_conj, mixture(basis, a_conj, upper))
                ? lower
                : upper;
    }
    s.rho = x * x;
    s.w = mixture(basis, a_conj, x);
    s.objective = radar_objective(a_conj, s.w);
    return s;
}

}  // namespace dfrc
