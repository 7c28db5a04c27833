#pragma once

#include <string>

namespace vfp {

struct PotentialParams {
    double width = 1.0;  // support radius, must lie in (0, 1]
};

// Even, nonnegative interaction kernel supported on |r| <= width and
// normalized so that the Fourier transform Uhat(k) = int U(y) exp(-i k y) dy
// satisfies Uhat(0) = 1.  Uhat is real and even, Uhat'(0) = 0 and
// Uhat''(0) = -int y^2 U(y) dy < 0.
class Potential {
public:
    Potential(std::string kind, PotentialParams params);

    double operator()(double r) const;

    // Fourier transform by Gauss-Legendre quadrature over the support; the
    // node count grows with |k| so oscillatory integrands stay resolved.
    double hat(double k) const;

    // Uhat(k) - 1, computed as -2 int_0^w U(y) (1 - cos(k y)) dy so small k do
    // not cancel catastrophically.
    double hat_minus_one(double k) const;

    // Uhat''(0) = -int y^2 U(y) dy
    double hat_second_deriv0() const;

    double support() const { return params_.width; }
    const std::string& kind() const { return kind_; }

private:
    double profile(double r) const;  // unnormalized shape

    std::string kind_;
    PotentialParams params_;
    double scale_;  // fixes Uhat(0) = 1
};

Potential make_potential(const std::string& kind, PotentialParams params = {});

}  // namespace vfp
