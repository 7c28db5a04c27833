#pragma once

// Stationary profiles of the mixture on the torus [-L, L]: fixed points of
// the Euler-Lagrange system
//
//   ln rho_i + beta (U * rho_{i+1}) = const,   (1/2L) int rho_i dx = n_i,
//
// found by a damped exponential Picard map that preserves positivity and the
// mass averages by construction.  For beta < 1 the iteration collapses to the
// constant pair [n1, n2]; for beta > 1 symmetry-broken initial data converges
// to a non-constant front with strictly lower free energy.

#include <vector>

#include "vfp/potential.hpp"

namespace vfp {

struct DensityProfile {
    std::vector<double> rho1;  // values on x_m = -L + m (2L/n), n even
    std::vector<double> rho2;
    double half_period = 0.0;  // L; 2L >= 4 keeps the kernel from wrapping
    double n1 = 1.0;           // mass averages (1/2L) int rho_i dx
    double n2 = 1.0;
};

struct StationaryResult {
    DensityProfile profile;
    double residual = 0.0;  // sup deviation of ln rho_i + beta U*rho_{i+1} from its mean
    int iterations = 0;
};

// Damped Picard iteration rho_i <- (1-relax) rho_i + relax Z_i^{-1} 2L n_i
// exp(-beta U*rho_{i+1}).  Only the density vectors of init are read; masses
// are renormalized to (n1, n2) before iterating.  Converged when the sup-norm
// update drops below tol and the equation residual below 10 tol; otherwise
// throws ConvergenceError.
StationaryResult stationary_fixed_point(double beta, const Potential& p, double half_period,
                                        double n1, double n2, const DensityProfile& init,
                                        double relax = 0.5, double tol = 1e-12,
                                        int max_iter = 5000);

double stationary_residual(const DensityProfile& profile, double beta, const Potential& p);

// F = int (rho1 ln rho1 + rho2 ln rho2) + (3/2) ln(beta/2pi) int (rho1+rho2)
//     + beta int int U(x-x') rho1(x) rho2(x')
double free_energy(const DensityProfile& profile, double beta, const Potential& p);

}  // namespace vfp
