#include "vfp/fft.hpp"

#include <numbers>

namespace vfp {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void transform_radix2(cplx* a, int n, double sign) {
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / len;
        const cplx wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void transform_naive(cplx* a, int n, double sign) {
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    const double base = sign * 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
        for (int m = 0; m < n; ++m) {
            const double ang = base * static_cast<double>((static_cast<long long>(j) * m) % n);
            out[j] += a[m] * cplx(std::cos(ang), std::sin(ang));
        }
    }
    for (int j = 0; j < n; ++j) a[j] = out[j];
}

void transform(cplx* a, int n, double sign) {
    if (n <= 1) return;
    if (is_pow2(n))
        transform_radix2(a, n, sign);
    else
        transform_naive(a, n, sign);
}

}  // namespace

void fft_forward(cplx* a, int n) { transform(a, n, -1.0); }

void fft_inverse(cplx* a, int n) {
    transform(a, n, +1.0);
    const double inv = 1.0 / n;
    for (int i = 0; i < n; ++i) a[i] *= inv;
}

void fft_forward(std::vector<cplx>& a) { fft_forward(a.data(), static_cast<int>(a.size())); }
void fft_inverse(std::vector<cplx>& a) { fft_inverse(a.data(), static_cast<int>(a.size())); }

}  // namespace vfp
