#include "vfp/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "vfp/errors.hpp"

namespace vfp {

namespace {

// Orthonormal Hermite polynomials for the weight exp(-x^2):
// p_{k+1} = x p_k sqrt(2/(k+1)) - p_{k-1} sqrt(k/(k+1)), p_0 = pi^{-1/4},
// with p_n' = sqrt(2n) p_{n-1}.  Returns (p_n, p_{n-1}).
std::pair<double, double> hermite_pair(int n, double x) {
    double pkm1 = 0.0;
    double pk = std::pow(std::numbers::pi, -0.25);
    for (int k = 0; k < n; ++k) {
        const double pkp1 =
            x * pk * std::sqrt(2.0 / (k + 1)) - pkm1 * std::sqrt(static_cast<double>(k) / (k + 1));
        pkm1 = pk;
        pk = pkp1;
    }
    return {pk, pkm1};
}

}  // namespace

QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw ValidationError("gauss_hermite: need at least one node");
    // Golub-Welsch gives well-separated starting points; Newton on the
    // orthonormal recurrence then polishes each node to full precision and the
    // Christoffel function supplies the weight.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int j = 1; j < n; ++j) {
        const double b = std::sqrt(j / 2.0);
        jacobi(j, j - 1) = b;
        jacobi(j - 1, j) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    if (es.info() != Eigen::Success)
        throw NumericalError("gauss_hermite: Jacobi eigensolve failed");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int j = 0; j < n; ++j) {
        double x = es.eigenvalues()(j);
        for (int iter = 0; iter < 20; ++iter) {
            const auto [pn, pnm1] = hermite_pair(n, x);
            const double dpn = std::sqrt(2.0 * n) * pnm1;
            const double dx = pn / dpn;
            x -= dx;
            if (std::abs(dx) < 1e-16 * (1.0 + std::abs(x))) break;
        }
        rule.nodes[j] = x;
        const double pnm1 = hermite_pair(n, x).second;
        rule.weights[j] = 1.0 / (n * pnm1 * pnm1);
    }
    return rule;
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw ValidationError("gauss_legendre: need at least one node");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

std::complex<double> quadrature_inner(double beta,
                                      const std::function<std::complex<double>(double)>& f,
                                      const std::function<std::complex<double>(double)>& g,
                                      int nodes) {
    if (beta <= 0.0) throw ValidationError("quadrature_inner: beta must be positive");
    if (nodes < 1) throw ValidationError("quadrature_inner: need at least one node");
    const QuadratureRule rule = gauss_hermite(nodes);
    const double scale = std::sqrt(2.0 / beta);  // v = scale * x
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < nodes; ++j) {
        const double x = rule.nodes[j];
        const double v = scale * x;
        // weights are ~exp(-x^2); multiplying back exp(+x^2) leaves the
        // polynomial part of the integrand, which stays O(1)
        const double w = rule.weights[j] * std::exp(x * x);
        acc += w * f(v) * std::conj(g(v));
    }
    return acc * scale;
}

}  // namespace vfp
