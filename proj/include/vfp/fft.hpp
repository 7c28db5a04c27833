#pragma once

#include <complex>
#include <vector>

namespace vfp {

using cplx = std::complex<double>;

// In-place discrete Fourier transforms with the unnormalized convention
//   forward:  X_j = sum_m x_m exp(-2 pi i j m / n)
//   inverse:  x_m = (1/n) sum_j X_j exp(+2 pi i j m / n)
// Radix-2 sizes take the iterative Cooley-Tukey path; other sizes fall back to
// a direct O(n^2) transform (sizes here stay small, so this is acceptable).
void fft_forward(std::vector<cplx>& a);
void fft_inverse(std::vector<cplx>& a);

void fft_forward(cplx* a, int n);
void fft_inverse(cplx* a, int n);

}  // namespace vfp
