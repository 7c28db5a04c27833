#pragma once

/*
    Scaled Hermite velocity basis adapted to the Maxwellian
        mu(v) = sqrt(beta / 2 pi) exp(-beta v^2 / 2),
    orthonormal in L^2(dv) with e_0 = sqrt(mu).  All velocity-space operators
    of the kinetic model become sparse ladder operations here:

        L e_n       = -n e_n                       (Fokker-Planck, diagonal)
        v e_n       = sqrt((n+1)/beta) e_{n+1} + sqrt(n/beta) e_{n-1}
        A+ e_n      = sqrt(beta (n+1)) e_{n+1},    A+ = (beta/2) v - d/dv

    L is normalized so that its spectrum is {0, -1, -2, ...} for every beta
    (equivalently -L(v sqrt(mu)) = v sqrt(mu)); this is the convention the
    dispersion asymptotics lambda_2 = (beta-1)/beta are tied to.

    Coefficient vectors are hard-truncated at n_modes entries; applying a
    ladder operator never scatters outside the retained range (contributions
    past the last mode are dropped, which is the truncation model).
*/

#include <complex>
#include <vector>

namespace vfp {

using cplx = std::complex<double>;
using VCoeffs = std::vector<cplx>;

struct HermiteBasis {
    double beta;
    int n_modes;  // number of retained modes, max degree + 1

    HermiteBasis(double beta, int n_modes);

    // Pointwise value e_n(v), evaluated with the normalized three-term
    // recurrence (numerically safe for n well beyond 150).
    double eval(int n, double v) const;
};

// (L c)_n = -n c_n
VCoeffs apply_fokker_planck(const HermiteBasis& basis, const VCoeffs& c);

// Coefficients of v * (sum c_n e_n), symmetric tridiagonal.
VCoeffs apply_velocity(const HermiteBasis& basis, const VCoeffs& c);

// Coefficients of ((beta/2) v - d/dv)(sum c_n e_n), one superdiagonal.
VCoeffs apply_raising(const HermiteBasis& basis, const VCoeffs& c);

// Solve L c = rhs on the complement of Ker L, returning the solution with
// c_0 = 0.  The rhs must satisfy the solvability condition |rhs_0| <=
// tol_kernel * ||rhs||; otherwise a SolvabilityError reports the offending
// kernel component.
VCoeffs solve_fp(const HermiteBasis& basis, const VCoeffs& rhs, double tol_kernel = 1e-10);

double norm(const VCoeffs& c);

}  // namespace vfp
