#include "vfp/hermite.hpp"

#include <cmath>
#include <numbers>

#include "vfp/errors.hpp"

namespace vfp {

HermiteBasis::HermiteBasis(double beta, int n_modes) : beta(beta), n_modes(n_modes) {
    if (!(beta > 0.0)) throw ValidationError("HermiteBasis: beta must be positive");
    if (n_modes < 3) throw ValidationError("HermiteBasis: need at least 3 modes");
}

double HermiteBasis::eval(int n, double v) const {
    if (n < 0 || n >= n_modes) throw ValidationError("hermite_eval: mode index out of range");
    const double e0 = std::pow(beta / (2.0 * std::numbers::pi), 0.25) *
                      std::exp(-beta * v * v / 4.0);
    if (n == 0) return e0;
    const double z = std::sqrt(beta) * v;
    double prev = e0;
    double cur = z * e0;  // e_1
    for (int m = 1; m < n; ++m) {
        const double next = (z * cur - std::sqrt(static_cast<double>(m)) * prev) /
                            std::sqrt(static_cast<double>(m + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {
void check_size(const HermiteBasis& basis, const VCoeffs& c, const char* who) {
    if (static_cast<int>(c.size()) != basis.n_modes)
        throw ValidationError(std::string(who) + ": coefficient size does not match basis");
}
}  // namespace

VCoeffs apply_fokker_planck(const HermiteBasis& basis, const VCoeffs& c) {
    check_size(basis, c, "apply_fokker_planck");
    VCoeffs out(c.size());
    for (int n = 0; n < basis.n_modes; ++n) out[n] = -static_cast<double>(n) * c[n];
    return out;
}

VCoeffs apply_velocity(const HermiteBasis& basis, const VCoeffs& c) {
    check_size(basis, c, "apply_velocity");
    const int nm = basis.n_modes;
    VCoeffs out(c.size(), cplx(0.0, 0.0));
    for (int n = 0; n < nm; ++n) {
        cplx acc(0.0, 0.0);
        if (n > 0) acc += std::sqrt(n / basis.beta) * c[n - 1];
        if (n + 1 < nm) acc += std::sqrt((n + 1) / basis.beta) * c[n + 1];
        out[n] = acc;
    }
    return out;
}

VCoeffs apply_raising(const HermiteBasis& basis, const VCoeffs& c) {
    check_size(basis, c, "apply_raising");
    const int nm = basis.n_modes;
    VCoeffs out(c.size(), cplx(0.0, 0.0));
    for (int n = 1; n < nm; ++n)
        out[n] = std::sqrt(basis.beta * n) * c[n - 1];
    return out;
}

VCoeffs solve_fp(const HermiteBasis& basis, const VCoeffs& rhs, double tol_kernel) {
    check_size(basis, rhs, "solve_fp");
    const double rhs_norm = norm(rhs);
    const double kernel_component = std::abs(rhs[0]);
    if (kernel_component > tol_kernel * rhs_norm)
        throw SolvabilityError("solve_fp: rhs has a kernel component |rhs_0| = " +
                                   std::to_string(kernel_component),
                               kernel_component);
    VCoeffs out(rhs.size(), cplx(0.0, 0.0));
    for (int n = 1; n < basis.n_modes; ++n) out[n] = rhs[n] / static_cast<double>(-n);
    return out;
}

double norm(const VCoeffs& c) {
    double acc = 0.0;
    for (const cplx& z : c) acc += std::norm(z);
    return std::sqrt(acc);
}

}  // namespace vfp
