#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vfp/fft.hpp"

using vfp::cplx;

TEST_CASE("forward transform of a pure mode lands on one bin") {
    const int n = 32;
    std::vector<cplx> a(n);
    for (int m = 0; m < n; ++m) {
        const double ang = 2.0 * std::numbers::pi * 5.0 * m / n;
        a[m] = cplx(std::cos(ang), std::sin(ang));
    }
    vfp::fft_forward(a);
    for (int j = 0; j < n; ++j) {
        const double expected = (j == 5) ? n : 0.0;
        CHECK(std::abs(a[j] - expected) < 1e-12);
    }
}

TEST_CASE("roundtrip is identity for radix-2 and non-radix-2 sizes") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int n : {16, 64, 12, 30}) {
        std::vector<cplx> a(n), orig(n);
        for (int m = 0; m < n; ++m) orig[m] = a[m] = cplx(gauss(rng), gauss(rng));
        vfp::fft_forward(a);
        vfp::fft_inverse(a);
        for (int m = 0; m < n; ++m) CHECK(std::abs(a[m] - orig[m]) < 1e-12);
    }
}

TEST_CASE("radix-2 and naive paths agree") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 16;
    std::vector<cplx> a(n);
    for (int m = 0; m < n; ++m) a[m] = cplx(gauss(rng), gauss(rng));
    std::vector<cplx> direct(n, cplx(0.0, 0.0));
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            const double ang = -2.0 * std::numbers::pi * j * m / n;
            direct[j] += a[m] * cplx(std::cos(ang), std::sin(ang));
        }
    vfp::fft_forward(a);
    for (int j = 0; j < n; ++j) CHECK(std::abs(a[j] - direct[j]) < 1e-11);
}
