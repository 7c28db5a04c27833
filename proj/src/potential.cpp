#include "vfp/potential.hpp"

#include <cmath>
#include <numbers>

#include "vfp/errors.hpp"
#include "vfp/quadrature.hpp"

namespace vfp {

namespace {

// Gauss-Legendre integral of fn over [0, w]; node count picked for the
// oscillation scale of the integrand.
template <typename F>
double integrate_half_support(F&& fn, double w, double osc_scale) {
    const int n = 64 + static_cast<int>(std::ceil(osc_scale));
    const QuadratureRule rule = gauss_legendre(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = 0.5 * w * (rule.nodes[i] + 1.0);
        acc += 0.5 * w * rule.weights[i] * fn(y);
    }
    return acc;
}

}  // namespace

Potential::Potential(std::string kind, PotentialParams params)
    : kind_(std::move(kind)), params_(params), scale_(1.0) {
    if (kind_ != "bump" && kind_ != "cosine")
        throw ValidationError("make_potential: unsupported kind '" + kind_ + "'");
    if (!(params_.width > 0.0) || params_.width > 1.0)
        throw ValidationError("make_potential: width must lie in (0, 1]");
    const double raw =
        2.0 * integrate_half_support([this](double y) { return profile(y); }, params_.width, 0.0);
    scale_ = 1.0 / raw;
}

double Potential::profile(double r) const {
    const double s = std::abs(r) / params_.width;
    if (s >= 1.0) return 0.0;
    if (kind_ == "bump") return std::exp(-1.0 / (1.0 - s * s));
    return 0.5 * (1.0 + std::cos(std::numbers::pi * s));  // cosine
}

double Potential::operator()(double r) const { return scale_ * profile(r); }

double Potential::hat(double k) const { return 1.0 + hat_minus_one(k); }

double Potential::hat_minus_one(double k) const {
    const double w = params_.width;
    const double val = integrate_half_support(
        [this, k](double y) {
            const double s = std::sin(0.5 * k * y);
            return (*this)(y)*2.0 * s * s;  // 1 - cos(k y), cancellation-free
        },
        w, std::abs(k) * w);
    return -2.0 * val;
}

double Potential::hat_second_deriv0() const {
    return -2.0 * integrate_half_support([this](double y) { return (*this)(y)*y * y; },
                                          params_.width, 0.0);
}

Potential make_potential(const std::string& kind, PotentialParams params) {
    return Potential(kind, params);
}

}  // namespace vfp
