#include "vfp/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vfp/errors.hpp"
#include "vfp/spectral_field.hpp"

namespace vfp {

namespace {

void validate_profile(const DensityProfile& prof, const std::string& where) {
    const size_t n = prof.rho1.size();
    if (n != prof.rho2.size() || n < 4 || n % 2 != 0)
        throw ValidationError(where + ": density vectors must share an even size >= 4");
    if (!(2.0 * prof.half_period >= 4.0))
        throw ValidationError(where + ": need 2L >= 4 so the periodized kernel cannot wrap");
    for (const auto* rho : {&prof.rho1, &prof.rho2})
        for (double v : *rho)
            if (!(v > 0.0)) throw PositivityError(where + ": density not positive", v);
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void renormalize(std::vector<double>& rho, double target_mean) {
    const double s = target_mean / mean(rho);
    for (double& v : rho) v *= s;
}

std::vector<double> kernel_hat(const Potential& p, const FourierGrid& grid) {
    std::vector<double> uhat(grid.n_fourier);
    for (int j = 0; j < grid.n_fourier; ++j) uhat[j] = p.hat(grid.kappa(j));
    return uhat;
}

std::vector<double> convolve(const std::vector<double>& rho, const std::vector<double>& uhat,
                             const FourierGrid& grid) {
    std::vector<cplx> z(rho.begin(), rho.end());
    auto hat = to_coefficients(z, grid);
    for (int j = 0; j < grid.n_fourier; ++j) hat[j] *= uhat[j];
    const auto vals = to_grid_values(hat, grid);
    std::vector<double> out(rho.size());
    for (size_t m = 0; m < rho.size(); ++m) out[m] = vals[m].real();
    return out;
}

double residual_impl(const DensityProfile& prof, double beta, const std::vector<double>& uhat,
                     const FourierGrid& grid) {
    const auto conv2 = convolve(prof.rho2, uhat, grid);
    const auto conv1 = convolve(prof.rho1, uhat, grid);
    double worst = 0.0;
    for (int species = 0; species < 2; ++species) {
        const auto& rho = species == 0 ? prof.rho1 : prof.rho2;
        const auto& conv = species == 0 ? conv2 : conv1;
        std::vector<double> r(rho.size());
        for (size_t i = 0; i < rho.size(); ++i) r[i] = std::log(rho[i]) + beta * conv[i];
        const double avg = mean(r);
        for (double v : r) worst = std::max(worst, std::abs(v - avg));
    }
    return worst;
}

}  // namespace

StationaryResult stationary_fixed_point(double beta, const Potential& p, double half_period,
                                        double n1, double n2, const DensityProfile& init,
                                        double relax, double tol, int max_iter) {
    if (!(beta > 0.0))
        throw ValidationError("stationary_fixed_point: beta must be positive");
    if (!(n1 > 0.0) || !(n2 > 0.0))
        throw ValidationError("stationary_fixed_point: masses must be positive");
    if (!(relax > 0.0) || relax > 1.0)
        throw ValidationError("stationary_fixed_point: relax must be in (0, 1]");
    if (!(tol > 0.0) || max_iter < 1)
        throw ValidationError("stationary_fixed_point: tol must be positive, max_iter >= 1");

    DensityProfile prof;
    prof.rho1 = init.rho1;
    prof.rho2 = init.rho2;
    prof.half_period = half_period;
    prof.n1 = n1;
    prof.n2 = n2;
    validate_profile(prof, "stationary_fixed_point");

    const int m = static_cast<int>(prof.rho1.size());
    const FourierGrid grid(half_period, m);
    const auto uhat = kernel_hat(p, grid);

    renormalize(prof.rho1, n1);
    renormalize(prof.rho2, n2);

    double residual = 0.0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        // Jacobi update (both species from the previous sweep) keeps the
        // mirror class rho1(x) = rho2(-x) invariant
        const auto conv2 = convolve(prof.rho2, uhat, grid);
        const auto conv1 = convolve(prof.rho1, uhat, grid);
        std::vector<double> next1(m), next2(m);
        for (int i = 0; i < m; ++i) next1[i] = std::exp(-beta * conv2[i]);
        for (int i = 0; i < m; ++i) next2[i] = std::exp(-beta * conv1[i]);
        renormalize(next1, n1);
        renormalize(next2, n2);

        double update = 0.0;
        for (int i = 0; i < m; ++i) {
            const double v1 = (1.0 - relax) * prof.rho1[i] + relax * next1[i];
            const double v2 = (1.0 - relax) * prof.rho2[i] + relax * next2[i];
            update = std::max({update, std::abs(v1 - prof.rho1[i]), std::abs(v2 - prof.rho2[i])});
            prof.rho1[i] = v1;
            prof.rho2[i] = v2;
        }
        renormalize(prof.rho1, n1);
        renormalize(prof.rho2, n2);

        if (update < tol) {
            residual = residual_impl(prof, beta, uhat, grid);
            if (residual <= 10.0 * tol) return {std::move(prof), residual, iter};
        }
    }
    throw ConvergenceError("stationary_fixed_point: no convergence after " +
                               std::to_string(max_iter) + " iterations",
                           max_iter, residual_impl(prof, beta, uhat, grid));
}

double stationary_residual(const DensityProfile& profile, double beta, const Potential& p) {
    validate_profile(profile, "stationary_residual");
    const FourierGrid grid(profile.half_period, static_cast<int>(profile.rho1.size()));
    return residual_impl(profile, beta, kernel_hat(p, grid), grid);
}

double free_energy(const DensityProfile& profile, double beta, const Potential& p) {
    if (!(beta > 0.0)) throw ValidationError("free_energy: beta must be positive");
    validate_profile(profile, "free_energy");

    const int m = static_cast<int>(profile.rho1.size());
    const FourierGrid grid(profile.half_period, m);
    const double dx = grid.dx();
    const auto conv2 = convolve(profile.rho2, kernel_hat(p, grid), grid);

    double entropy = 0.0, total = 0.0, interaction = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r1 = profile.rho1[i], r2 = profile.rho2[i];
        entropy += r1 * std::log(r1) + r2 * std::log(r2);
        total += r1 + r2;
        interaction += r1 * conv2[i];
    }
    constexpr double two_pi = 6.283185307179586476925286766559;
    return entropy * dx + 1.5 * std::log(beta / two_pi) * total * dx +
           beta * interaction * dx;
}

}  // namespace vfp
