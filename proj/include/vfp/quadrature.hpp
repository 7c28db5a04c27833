#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace vfp {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Hermite rule for the weight exp(-x^2) on the real line, built by
// Golub-Welsch from the Jacobi matrix (independent of the Hermite recurrences
// used elsewhere, so it can serve as an oracle against them).
QuadratureRule gauss_hermite(int n);

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

// Weighted inner product int f(v) conj(g(v)) dv over the real line for
// integrands of Maxwellian type at inverse temperature beta: the substitution
// x = sqrt(beta/2) v folds the weight exp(-beta v^2 / 2) into a Gauss-Hermite
// rule, exactly integrating (polynomial) x (that weight) of degree < 2*nodes.
std::complex<double> quadrature_inner(double beta,
                                      const std::function<std::complex<double>(double)>& f,
                                      const std::function<std::complex<double>(double)>& g,
                                      int nodes);

}  // namespace vfp
