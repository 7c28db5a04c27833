#include "vfp/spectral_field.hpp"

#include <cmath>

#include "vfp/errors.hpp"
#include "vfp/fft.hpp"

namespace vfp {

FourierGrid::FourierGrid(double half_period, int n_fourier)
    : half_period(half_period), n_fourier(n_fourier) {
    if (!(half_period > 0.0)) throw ValidationError("FourierGrid: half period must be positive");
    if (n_fourier < 4 || n_fourier % 2 != 0)
        throw ValidationError("FourierGrid: n_fourier must be even and at least 4");
}

SpectralField::SpectralField(FourierGrid grid, HermiteBasis basis)
    : grid(grid), basis(basis),
      a(static_cast<size_t>(grid.n_fourier) * basis.n_modes, cplx(0.0, 0.0)) {}

double SpectralField::l2_norm() const {
    double acc = 0.0;
    for (const cplx& z : a) acc += std::norm(z);
    return std::sqrt(2.0 * grid.half_period * acc);
}

TwoSpeciesState::TwoSpeciesState(SpectralField g1_in, SpectralField g2_in)
    : g1(std::move(g1_in)), g2(std::move(g2_in)) {
    if (!(g1.grid == g2.grid) || g1.basis.beta != g2.basis.beta ||
        g1.basis.n_modes != g2.basis.n_modes)
        throw ValidationError("TwoSpeciesState: species discretizations must match");
}

double TwoSpeciesState::l2_norm() const {
    const double a = g1.l2_norm(), b = g2.l2_norm();
    return std::sqrt(a * a + b * b);
}

// exp(i kappa_j x(0)) = exp(-i pi s_j) = (-1)^j for even n_fourier.
std::vector<cplx> to_grid_values(const std::vector<cplx>& hat, const FourierGrid& grid) {
    const int n = grid.n_fourier;
    if (static_cast<int>(hat.size()) != n)
        throw ValidationError("to_grid_values: size mismatch with grid");
    std::vector<cplx> out(hat);
    for (int j = 1; j < n; j += 2) out[j] = -out[j];
    fft_inverse(out);
    for (cplx& z : out) z *= static_cast<double>(n);
    return out;
}

std::vector<cplx> to_coefficients(const std::vector<cplx>& values, const FourierGrid& grid) {
    const int n = grid.n_fourier;
    if (static_cast<int>(values.size()) != n)
        throw ValidationError("to_coefficients: size mismatch with grid");
    std::vector<cplx> out(values);
    fft_forward(out);
    const double inv = 1.0 / static_cast<double>(n);
    for (int j = 0; j < n; ++j) out[j] *= (j % 2 == 0 ? inv : -inv);
    return out;
}

}  // namespace vfp
