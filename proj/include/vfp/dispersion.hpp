#pragma once

// Per-wavenumber spectral problem for the mixture: the generator restricted to
// a single Fourier mode k is, in the Hermite basis,
//
//   M(k) = diag(0,-1,-2,...) - ik V + ik sqrt(beta) Uhat(k) (e1 ⊗ e0),
//
// acting on velocity coefficient vectors q with the normalization q_0 = 1
// (q_0 is exactly the density moment of q).  The growing mode is the
// eigenvalue of maximal real part.  Two independent solvers are provided: a
// dense eigensolve of M(k), and the small-k expansion
//
//   lambda(k) = ((beta-1)/beta) k^2 + k^3 lambda_R(k)
//   q(k)      = q0 + k q1 + k^2 q2 + k^3 q_R(k)
//
// where [q_R, lambda_R] is the fixed point of a contraction built from the
// inverted Fokker-Planck operator.  They must agree to tight tolerance; the
// acceptance suite leans on that cross-check.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vfp/hermite.hpp"
#include "vfp/potential.hpp"

namespace vfp {

struct EigenResult {
    double k = 0.0;
    cplx lambda{0.0, 0.0};
    VCoeffs q;
    double residual = 0.0;  // ||Mq - lambda q|| / ||q||
};

struct DispersionCurve {
    double beta = 0.0;
    std::string potential_kind;
    int degree = 0;  // max Hermite degree N; matrices are (N+1)x(N+1)
    std::vector<EigenResult> results;

    std::vector<double> unstable_band() const;  // k values with Re lambda > 0
};

struct RemainderResult {
    cplx lambda_R{0.0, 0.0};
    VCoeffs q_R;
    int iterations = 0;
    // max ratio of successive correction norms; < 1 certifies the scheme
    // contracted over the observed iterates
    double contraction = 0.0;
};

struct FitReport {
    cplx c2{0.0, 0.0};
    cplx c3{0.0, 0.0};
    cplx c4{0.0, 0.0};
    double max_residual = 0.0;
};

Eigen::MatrixXcd assemble_generator(double k, double beta, const Potential& p, int degree);

// Eigenvalue of maximal real part (ties: larger |Im|, then lower index) with
// eigenvector scaled to q_0 = 1 when possible, else unit norm with the first
// nonzero entry real positive.  k is recorded into the result.
EigenResult leading_eigenpair(const Eigen::MatrixXcd& M, double k = 0.0);

cplx expansion_prediction(double beta, double k);  // ((beta-1)/beta) k^2

// q = e0 + ik(beta-1)beta^{-1/2} e1 + ((beta-1)/beta) k^2 / sqrt(2) e2
VCoeffs expansion_eigenvector(double beta, double k, int degree);

RemainderResult remainder_iteration(double beta, double k, const Potential& p, int degree,
                                    double tol = 1e-12, int max_iter = 200,
                                    double k_max = 0.3);

DispersionCurve dispersion_scan(double beta, const Potential& p,
                                const std::vector<double>& k_grid, int degree,
                                int threads = 1);

// Least-squares fit lambda(k) = c2 k^2 + c3 k^3 + c4 k^4 over the window
// k in [0.01, 0.2] (at least 6 curve points must fall inside).  The system is
// solved in the variable lambda/k^2 and with the data mirrored to -k through
// conjugate symmetry; see the implementation note for why.
FitReport verify_asymptotics(const DispersionCurve& curve);

}  // namespace vfp
