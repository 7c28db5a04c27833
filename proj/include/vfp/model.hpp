#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "vfp/potential.hpp"
#include "vfp/spectral_field.hpp"

namespace vfp {

// Uniform 1D evaluation grid.  For the periodic x direction the right
// endpoint is excluded (rectangle rule on the torus); for v both endpoints
// are kept and integrals use trapezoid weights.
struct Grid1D {
    double lo;
    double hi;
    int n;
    std::vector<double> points(bool periodic) const;
};

// Fourier coefficients of the self-consistent force created by a density
// perturbation: Fhat(kappa) = -i kappa Uhat(kappa) rhohat(kappa), with
// Fhat(0) = 0 identically.  Input and output are indexed like the grid.
std::vector<cplx> force_hat(const std::vector<cplx>& rho_hat, const Potential& potential,
                            const FourierGrid& grid);

// Per-Fourier-mode velocity moment int g sqrt(mu) dv = a(j, 0).
std::vector<cplx> density_moment(const SpectralField& g);

// Distribution functions f_i = mu + sqrt(mu) g_i evaluated on the tensor grid
// (rows: x, cols: v).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> reconstruct_f(const TwoSpeciesState& state,
                                                          const Grid1D& x_grid,
                                                          const Grid1D& v_grid);

// Lyapunov functional of the mixture,
//   H = sum_i int f_i ln f_i + (beta/2) int |v|^2 (f_1 + f_2)
//       + beta int int U(x - x') rho_1(x) rho_2(x'),
// for the transverse-Maxwellian reduction: the 1d1v part is evaluated by
// quadrature on the given grids, the (constant) transverse entropy and
// kinetic contributions are added analytically, and the interaction term is
// summed spectrally.  Throws PositivityError if f is not positive on the grid.
double lyapunov(const TwoSpeciesState& state, const Potential& potential, const Grid1D& x_grid,
                const Grid1D& v_grid);

// Largest violation of the symmetry class (S):
// max_{j,n} |a_1(j, n) - (-1)^n a_2(-j, n)|.
double symmetry_defect(const TwoSpeciesState& state);

struct DiagnosticsRecord {
    double time;
    double l2_norm;
    double lyapunov;
    double mass1;
    double mass2;
    double symmetry_defect;
    double min_f;
};

}  // namespace vfp
