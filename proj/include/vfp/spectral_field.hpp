#pragma once

#include <complex>
#include <vector>

#include "vfp/hermite.hpp"

namespace vfp {

// Uniform periodic grid on [-L, L) with FFT index conventions: indices
// 0..n/2-1 carry modes 0..n/2-1 and indices n/2..n-1 carry -n/2..-1, so the
// wavenumbers are kappa_j = (pi/L) * signed_index(j).
struct FourierGrid {
    double half_period;  // L
    int n_fourier;

    FourierGrid(double half_period, int n_fourier);

    double k0() const { return kPi / half_period; }
    double dx() const { return 2.0 * half_period / n_fourier; }
    double x(int m) const { return -half_period + m * dx(); }
    int signed_index(int j) const { return j < n_fourier / 2 ? j : j - n_fourier; }
    double kappa(int j) const { return k0() * signed_index(j); }
    int conj_index(int j) const { return j == 0 ? 0 : n_fourier - j; }

    bool operator==(const FourierGrid&) const = default;

    static constexpr double kPi = 3.14159265358979323846;
};

// Perturbation field g(x, v) = sum_{j,n} a(j, n) exp(i kappa_j x) e_n(v),
// stored row-major over (fourier index, hermite index).
struct SpectralField {
    FourierGrid grid;
    HermiteBasis basis;
    std::vector<cplx> a;

    SpectralField(FourierGrid grid, HermiteBasis basis);

    cplx& at(int j, int n) { return a[static_cast<size_t>(j) * basis.n_modes + n]; }
    const cplx& at(int j, int n) const { return a[static_cast<size_t>(j) * basis.n_modes + n]; }

    // L^2(dx dv) norm: Parseval gives ||g||^2 = 2L sum |a|^2.
    double l2_norm() const;
};

struct TwoSpeciesState {
    SpectralField g1;
    SpectralField g2;
    double time = 0.0;

    TwoSpeciesState(SpectralField g1, SpectralField g2);

    double beta() const { return g1.basis.beta; }
    double l2_norm() const;  // sqrt(||g1||^2 + ||g2||^2)
};

// Transforms between Fourier coefficients (FFT index order) and values at the
// grid points x(m).  The grid starts at -L, which shows up as a (-1)^j phase
// relative to a textbook DFT; these helpers keep that bookkeeping in one
// place.  to_grid_values(hat)[m] = sum_j hat_j exp(i kappa_j x(m)).
std::vector<cplx> to_grid_values(const std::vector<cplx>& hat, const FourierGrid& grid);
std::vector<cplx> to_coefficients(const std::vector<cplx>& values, const FourierGrid& grid);

}  // namespace vfp
