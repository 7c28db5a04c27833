#include "vfp/model.hpp"

#include <cmath>
#include <numbers>

#include "vfp/errors.hpp"

namespace vfp {

std::vector<double> Grid1D::points(bool periodic) const {
    if (n < 2) throw ValidationError("Grid1D: need at least two points");
    if (!(hi > lo)) throw ValidationError("Grid1D: empty interval");
    std::vector<double> pts(n);
    const double h = periodic ? (hi - lo) / n : (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) pts[i] = lo + i * h;
    return pts;
}

std::vector<cplx> force_hat(const std::vector<cplx>& rho_hat, const Potential& potential,
                            const FourierGrid& grid) {
    if (static_cast<int>(rho_hat.size()) != grid.n_fourier)
        throw ValidationError("force_hat: density size does not match grid");
    std::vector<cplx> out(rho_hat.size());
    for (int j = 0; j < grid.n_fourier; ++j) {
        const double kappa = grid.kappa(j);
        if (kappa == 0.0) {
            out[j] = cplx(0.0, 0.0);
            continue;
        }
        out[j] = cplx(0.0, -kappa) * potential.hat(kappa) * rho_hat[j];
    }
    return out;
}

std::vector<cplx> density_moment(const SpectralField& g) {
    std::vector<cplx> out(g.grid.n_fourier);
    for (int j = 0; j < g.grid.n_fourier; ++j) out[j] = g.at(j, 0);
    return out;
}

namespace {

// values(x_m, v_l) of one species' perturbation g
Eigen::MatrixXcd evaluate_field(const SpectralField& g, const std::vector<double>& xs,
                                const std::vector<double>& vs) {
    const int nx = static_cast<int>(xs.size());
    const int nv = static_cast<int>(vs.size());
    const int nf = g.grid.n_fourier;
    const int nm = g.basis.n_modes;

    Eigen::MatrixXcd phases(nx, nf);
    for (int m = 0; m < nx; ++m)
        for (int j = 0; j < nf; ++j) {
            const double ang = g.grid.kappa(j) * xs[m];
            phases(m, j) = cplx(std::cos(ang), std::sin(ang));
        }
    Eigen::MatrixXcd coeff(nf, nm);
    for (int j = 0; j < nf; ++j)
        for (int n = 0; n < nm; ++n) coeff(j, n) = g.at(j, n);
    Eigen::MatrixXd basis_vals(nm, nv);
    for (int n = 0; n < nm; ++n)
        for (int l = 0; l < nv; ++l) basis_vals(n, l) = g.basis.eval(n, vs[l]);

    return phases * (coeff * basis_vals);
}

Eigen::MatrixXd reconstruct_species(const SpectralField& g, const std::vector<double>& xs,
                                    const std::vector<double>& vs) {
    const Eigen::MatrixXcd pert = evaluate_field(g, xs, vs);
    const double beta = g.basis.beta;
    Eigen::MatrixXd f(xs.size(), vs.size());
    for (int l = 0; l < static_cast<int>(vs.size()); ++l) {
        const double mu = std::sqrt(beta / (2.0 * std::numbers::pi)) *
                          std::exp(-beta * vs[l] * vs[l] / 2.0);
        const double sqrt_mu = std::sqrt(mu);
        for (int m = 0; m < static_cast<int>(xs.size()); ++m)
            f(m, l) = mu + sqrt_mu * pert(m, l).real();
    }
    return f;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> reconstruct_f(const TwoSpeciesState& state,
                                                          const Grid1D& x_grid,
                                                          const Grid1D& v_grid) {
    const auto xs = x_grid.points(true);
    const auto vs = v_grid.points(false);
    return {reconstruct_species(state.g1, xs, vs), reconstruct_species(state.g2, xs, vs)};
}

double lyapunov(const TwoSpeciesState& state, const Potential& potential, const Grid1D& x_grid,
                const Grid1D& v_grid) {
    const double beta = state.beta();
    const double L = state.g1.grid.half_period;
    const auto vs = v_grid.points(false);
    const double wx = (x_grid.hi - x_grid.lo) / x_grid.n;
    const double hv = (v_grid.hi - v_grid.lo) / (v_grid.n - 1);

    const auto [f1, f2] = reconstruct_f(state, x_grid, v_grid);

    double entropy_kinetic = 0.0;
    for (const Eigen::MatrixXd* f : {&f1, &f2}) {
        for (int m = 0; m < x_grid.n; ++m)
            for (int l = 0; l < v_grid.n; ++l) {
                const double val = (*f)(m, l);
                if (!(val > 0.0))
                    throw PositivityError("lyapunov: distribution not positive on grid", val);
                const double wv = (l == 0 || l == v_grid.n - 1) ? 0.5 * hv : hv;
                entropy_kinetic +=
                    wx * wv * (val * std::log(val) + 0.5 * beta * vs[l] * vs[l] * val);
            }
    }

    // transverse Maxwellian factor: entropy ln(beta/2pi) - 1 plus kinetic
    // energy 1 per unit mass
    const double m1 = 2.0 * L * (1.0 + state.g1.at(0, 0).real());
    const double m2 = 2.0 * L * (1.0 + state.g2.at(0, 0).real());
    const double transverse = (m1 + m2) * std::log(beta / (2.0 * std::numbers::pi));

    // beta int int U(x-x') rho_1 rho_2 = 2 L beta sum_j Uhat(kappa_j)
    // rhohat_1(j) rhohat_2(-j) with rhohat(j) = delta_{j0} + a(j, 0)
    cplx interaction(0.0, 0.0);
    const FourierGrid& grid = state.g1.grid;
    for (int j = 0; j < grid.n_fourier; ++j) {
        const cplx rho1 = (j == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) + state.g1.at(j, 0);
        const cplx rho2 = (j == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) +
                          state.g2.at(grid.conj_index(j), 0);
        interaction += potential.hat(grid.kappa(j)) * rho1 * rho2;
    }
    return entropy_kinetic + transverse + 2.0 * L * beta * interaction.real();
}

double symmetry_defect(const TwoSpeciesState& state) {
    const int nf = state.g1.grid.n_fourier;
    const int nm = state.g1.basis.n_modes;
    double worst = 0.0;
    for (int j = 0; j < nf; ++j) {
        const int jc = state.g1.grid.conj_index(j);
        for (int n = 0; n < nm; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            worst = std::max(worst, std::abs(state.g1.at(j, n) - sign * state.g2.at(jc, n)));
        }
    }
    return worst;
}

}  // namespace vfp
