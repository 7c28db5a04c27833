#include "vfp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "vfp/errors.hpp"
#include "vfp/fft.hpp"

namespace vfp {

double SimConfig::k0() const { return FourierGrid::kPi / half_period; }

double SimConfig::dt_bound() const {
    const double kappa_max = k0() * (n_fourier / 2);
    const double v_eff = std::sqrt((n_modes + 1) / beta);
    return 0.5 / (kappa_max * v_eff);
}

void SimConfig::validate() const {
    if (!(beta > 0.0)) throw ValidationError("simulator: beta must be positive");
    if (!(half_period > 0.0)) throw ValidationError("simulator: half_period must be positive");
    if (n_fourier < 4 || n_fourier % 2 != 0)
        throw ValidationError("simulator: n_fourier must be even and at least 4");
    if (n_modes < 2) throw ValidationError("simulator: n_modes must be at least 2");
    if (!(dt > 0.0)) throw ValidationError("simulator: dt must be positive");
    if (!(t_end > 0.0)) throw ValidationError("simulator: t_end must be positive");
    if (dt > dt_bound() * (1.0 + 1e-12))
        throw ValidationError("simulator: dt=" + std::to_string(dt) +
                              " exceeds the transport stability bound " +
                              std::to_string(dt_bound()));
    if (!(epsilon > 0.0)) throw ValidationError("simulator: epsilon must be positive");
    if (!(delta0 > epsilon))
        throw ValidationError("simulator: delta0 must exceed epsilon");
    if (sample_every < 1) throw ValidationError("simulator: sample_every must be at least 1");
}

Stepper::Stepper(const SimConfig& config)
    : config_(config),
      grid_(config.half_period, config.n_fourier),
      basis_(config.beta, config.n_modes),
      potential_(make_potential(config.potential_kind, {config.potential_width})) {
    config_.validate();
    const int M = config_.n_fourier;
    const int nm = config_.n_modes;
    uhat_.resize(M);
    for (int j = 0; j < M; ++j) uhat_[j] = potential_.hat(grid_.kappa(j));
    fp_half_.resize(nm);
    for (int n = 0; n < nm; ++n) fp_half_[n] = std::exp(-0.5 * n * config_.dt);
    // 2/3 rule: products of retained modes then alias only onto dropped ones
    keep_.resize(M);
    const int s_max = M / 3;
    for (int j = 0; j < M; ++j) keep_[j] = std::abs(grid_.signed_index(j)) <= s_max;
    keep_[M / 2] = 0;
    sqv_.resize(nm + 1);
    for (int n = 0; n <= nm; ++n) sqv_[n] = std::sqrt(n / config_.beta);
    sqb_.resize(nm);
    for (int n = 0; n < nm; ++n) sqb_[n] = std::sqrt(config_.beta * n);
    const size_t total = static_cast<size_t>(M) * nm;
    for (auto* buf : {&y1_, &y2_, &s1_, &s2_, &acc1_, &acc2_, &d1_, &d2_})
        buf->assign(total, cplx(0.0, 0.0));
    fbuf1_.assign(M, cplx(0.0, 0.0));
    fbuf2_.assign(M, cplx(0.0, 0.0));
    rows_.assign(total, cplx(0.0, 0.0));
}

void Stepper::half_fokker_planck(std::vector<cplx>& a) const {
    const int nm = config_.n_modes;
    for (int j = 0; j < config_.n_fourier; ++j)
        for (int n = 0; n < nm; ++n) a[static_cast<size_t>(j) * nm + n] *= fp_half_[n];
}

void Stepper::species_derivative(const std::vector<cplx>& a, std::vector<cplx>& force,
                                 std::vector<cplx>& d) {
    const int M = config_.n_fourier;
    const int nm = config_.n_modes;
    for (int j = 0; j < M; ++j) {
        const size_t base = static_cast<size_t>(j) * nm;
        const cplx c(0.0, -grid_.kappa(j));
        for (int n = 0; n < nm; ++n) {
            cplx vn = n > 0 ? sqv_[n] * a[base + n - 1] : cplx(0.0, 0.0);
            if (n + 1 < nm) vn += sqv_[n + 1] * a[base + n + 1];
            d[base + n] = c * vn;
        }
        d[base + 1] += std::sqrt(config_.beta) * force[j];
    }
    if (config_.linearized) return;

    // Pseudo-spectral F . (A+ g): transform the force and each Hermite row of
    // the raised field to grid values, multiply pointwise, transform back.
    // The grid-origin phase of to_grid_values cancels in pointwise products,
    // so the plain transforms are used here.
    fft_inverse(force.data(), M);  // now F / M at the grid points
    for (int n = 0; n < nm; ++n) {
        cplx* row = rows_.data() + static_cast<size_t>(n) * M;
        for (int j = 0; j < M; ++j)
            row[j] = n > 0 ? sqb_[n] * a[static_cast<size_t>(j) * nm + n - 1] : cplx(0.0, 0.0);
        fft_inverse(row, M);
        for (int m = 0; m < M; ++m) row[m] *= force[m];
        fft_forward(row, M);
    }
    const double scale = static_cast<double>(M);  // undoes the two 1/M factors
    for (int j = 0; j < M; ++j) {
        if (!keep_[j]) continue;
        const size_t base = static_cast<size_t>(j) * nm;
        for (int n = 0; n < nm; ++n) d[base + n] += scale * rows_[static_cast<size_t>(n) * M + j];
    }
}

void Stepper::derivative(const std::vector<cplx>& a1, const std::vector<cplx>& a2,
                         std::vector<cplx>& d1, std::vector<cplx>& d2) {
    const int M = config_.n_fourier;
    const int nm = config_.n_modes;
    // Fhat_i(kappa) = -i kappa Uhat(kappa) rhohat_{other}(kappa)
    for (int j = 0; j < M; ++j) {
        const cplx c(0.0, -grid_.kappa(j) * uhat_[j]);
        fbuf1_[j] = c * a2[static_cast<size_t>(j) * nm];
        fbuf2_[j] = c * a1[static_cast<size_t>(j) * nm];
    }
    species_derivative(a1, fbuf1_, d1);
    species_derivative(a2, fbuf2_, d2);
}

void Stepper::step(TwoSpeciesState& state) {
    if (!(state.g1.grid == grid_) || state.g1.basis.n_modes != basis_.n_modes ||
        state.g1.basis.beta != basis_.beta)
        throw ValidationError("simulator: state does not match the stepper discretization");
    const double dt = config_.dt;
    auto& a1 = state.g1.a;
    auto& a2 = state.g2.a;
    const size_t total = a1.size();

    half_fokker_planck(a1);
    half_fokker_planck(a2);

    y1_ = a1;
    y2_ = a2;
    derivative(y1_, y2_, d1_, d2_);  // k1
    for (size_t i = 0; i < total; ++i) {
        acc1_[i] = d1_[i];
        acc2_[i] = d2_[i];
        s1_[i] = y1_[i] + 0.5 * dt * d1_[i];
        s2_[i] = y2_[i] + 0.5 * dt * d2_[i];
    }
    derivative(s1_, s2_, d1_, d2_);  // k2
    for (size_t i = 0; i < total; ++i) {
        acc1_[i] += 2.0 * d1_[i];
        acc2_[i] += 2.0 * d2_[i];
        s1_[i] = y1_[i] + 0.5 * dt * d1_[i];
        s2_[i] = y2_[i] + 0.5 * dt * d2_[i];
    }
    derivative(s1_, s2_, d1_, d2_);  // k3
    for (size_t i = 0; i < total; ++i) {
        acc1_[i] += 2.0 * d1_[i];
        acc2_[i] += 2.0 * d2_[i];
        s1_[i] = y1_[i] + dt * d1_[i];
        s2_[i] = y2_[i] + dt * d2_[i];
    }
    derivative(s1_, s2_, d1_, d2_);  // k4
    double sumsq = 0.0;
    for (size_t i = 0; i < total; ++i) {
        a1[i] = y1_[i] + (dt / 6.0) * (acc1_[i] + d1_[i]);
        a2[i] = y2_[i] + (dt / 6.0) * (acc2_[i] + d2_[i]);
        sumsq += std::norm(a1[i]) + std::norm(a2[i]);
    }

    half_fokker_planck(a1);
    half_fokker_planck(a2);
    state.time += dt;
    if (!std::isfinite(sumsq))
        throw BlowUpError("simulator: solution lost finiteness", state.time);
}

InitialData build_unstable_initial_data(const EigenResult& eig, const SimConfig& config) {
    config.validate();
    if (static_cast<int>(eig.q.size()) != config.n_modes)
        throw ValidationError("initial data: eigenvector length does not match n_modes");
    if (std::abs(eig.k - config.k0()) > 1e-12 * std::max(1.0, config.k0()))
        throw ValidationError("initial data: eigenpair is not at the base wavenumber pi/L");
    if (!(eig.residual < 1e-6))
        throw ValidationError("initial data: eigenpair residual too large");

    const int nm = config.n_modes;
    // Project onto the parity class conj(q_n) = (-1)^n q_n of the exact mode,
    // so the standing pair below satisfies (S) to the last bit.
    VCoeffs q(nm);
    for (int n = 0; n < nm; ++n) {
        const cplx r = std::conj(eig.q[n]);
        q[n] = 0.5 * (eig.q[n] + (n % 2 ? -r : r));
    }

    const FourierGrid grid(config.half_period, config.n_fourier);
    const HermiteBasis basis(config.beta, nm);
    const double radius = std::sqrt((8.0 / config.beta) * std::abs(std::log(config.epsilon)));
    const Grid1D x_check{-config.half_period, config.half_period, 256};
    const Grid1D v_check{-radius, radius, 256};

    double min_f = 0.0;
    for (int level = 0; level <= 2; ++level) {
        SpectralField g1(grid, basis);
        SpectralField g2(grid, basis);
        for (int n = 0; n < nm; ++n) {
            const double sigma =
                level == 0 ? 1.0 : std::pow(1.0 - static_cast<double>(n) / nm, level);
            // epsilon * Im(exp(i k0 x) q(v)): coefficient -i epsilon/2 q_n at
            // the +1 mode, conjugate at the -1 mode
            const cplx w = cplx(0.0, -0.5 * config.epsilon) * (sigma * q[n]);
            g1.at(1, n) = w;
            g1.at(grid.conj_index(1), n) = std::conj(w);
        }
        for (size_t i = 0; i < g1.a.size(); ++i) g2.a[i] = -g1.a[i];
        TwoSpeciesState state(std::move(g1), std::move(g2));
        const auto [f1, f2] = reconstruct_f(state, x_check, v_check);
        min_f = std::min(f1.minCoeff(), f2.minCoeff());
        if (min_f >= 0.0) return InitialData{std::move(state), level, radius, min_f};
    }
    throw PositivityError("initial data: f_i(0) has a negative part at epsilon=" +
                              std::to_string(config.epsilon) +
                              " even with the strongest filter; reduce epsilon",
                          min_f);
}

namespace {

DiagnosticsRecord diagnose(const TwoSpeciesState& state, const Potential& potential,
                           const Grid1D& x_grid, const Grid1D& v_grid) {
    const auto [f1, f2] = reconstruct_f(state, x_grid, v_grid);
    DiagnosticsRecord rec;
    rec.time = state.time;
    rec.l2_norm = state.l2_norm();
    rec.lyapunov = lyapunov(state, potential, x_grid, v_grid);
    rec.mass1 = state.g1.at(0, 0).real();
    rec.mass2 = state.g2.at(0, 0).real();
    rec.symmetry_defect = symmetry_defect(state);
    rec.min_f = std::min(f1.minCoeff(), f2.minCoeff());
    return rec;
}

}  // namespace

RunOutput run(const SimConfig& config) {
    config.validate();
    const Potential potential = make_potential(config.potential_kind, {config.potential_width});
    const Eigen::MatrixXcd M =
        assemble_generator(config.k0(), config.beta, potential, config.n_modes - 1);
    EigenResult eig = leading_eigenpair(M, config.k0());
    InitialData initial = build_unstable_initial_data(eig, config);
    TwoSpeciesState state = initial.state;
    Stepper stepper(config);

    const Grid1D x_grid{-config.half_period, config.half_period, 64};
    const double v_max = std::sqrt(48.0 / config.beta);
    const Grid1D v_grid{-v_max, v_max, 65};

    TimeSeries series;
    series.records.push_back(diagnose(state, potential, x_grid, v_grid));
    bool reached = false;
    const long total_steps = std::max(1L, std::lround(std::ceil(config.t_end / config.dt - 1e-9)));
    for (long i = 1; i <= total_steps; ++i) {
        stepper.step(state);
        if (i % config.sample_every != 0 && i != total_steps) continue;
        DiagnosticsRecord rec = diagnose(state, potential, x_grid, v_grid);
        series.records.push_back(rec);
        if (rec.l2_norm >= 2.0 * config.delta0) {
            reached = true;
            break;
        }
    }
    return RunOutput{std::move(series), std::move(eig), std::move(initial), std::move(state),
                     reached};
}

double measure_growth_rate(const TimeSeries& series, double t_begin, double t_end) {
    if (!(t_begin < t_end)) throw ValidationError("growth rate: window must have t_begin < t_end");
    std::vector<double> t;
    std::vector<double> y;
    for (const auto& rec : series.records) {
        if (rec.time < t_begin - 1e-12 || rec.time > t_end + 1e-12) continue;
        if (!(rec.l2_norm > 0.0))
            throw ValidationError("growth rate: nonpositive norm inside the window");
        t.push_back(rec.time);
        y.push_back(std::log(rec.l2_norm));
    }
    if (t.size() < 10)
        throw ValidationError("growth rate: need at least 10 samples in the window, have " +
                              std::to_string(t.size()));
    double tm = 0.0, ym = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        tm += t[i];
        ym += y[i];
    }
    tm /= t.size();
    ym /= t.size();
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        sxx += (t[i] - tm) * (t[i] - tm);
        sxy += (t[i] - tm) * (y[i] - ym);
    }
    if (!(sxx > 0.0)) throw ValidationError("growth rate: degenerate window");
    return sxy / sxx;
}

std::optional<double> escape_time(const TimeSeries& series, double delta0) {
    if (!(delta0 > 0.0)) throw ValidationError("escape time: delta0 must be positive");
    if (series.records.empty()) throw ValidationError("escape time: empty series");
    if (series.records.front().l2_norm >= delta0) return series.records.front().time;
    for (size_t i = 1; i < series.records.size(); ++i) {
        const auto& lo = series.records[i - 1];
        const auto& hi = series.records[i];
        if (hi.l2_norm < delta0) continue;
        // interpolate in log ||g||: exact on a sampled exponential
        const double num = std::log(delta0) - std::log(lo.l2_norm);
        const double den = std::log(hi.l2_norm) - std::log(lo.l2_norm);
        return lo.time + (hi.time - lo.time) * (num / den);
    }
    return std::nullopt;
}

}  // namespace vfp
