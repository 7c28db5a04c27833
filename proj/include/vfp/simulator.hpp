#pragma once

/*
    Time integration of the two-species perturbation system on
    Fourier x Hermite coefficients,

        d/dt a_i(j, .) = -i kappa_j V a_i(j, .)            (transport)
                         + sqrt(beta) Fhat_i(j) at n = 1   (linear Vlasov)
                         + [F_i . (A+ g_i)]^hat(j, .)      (nonlinear force)
                         + L a_i(j, .)                     (Fokker-Planck),

    where Fhat_i is the force created by the *other* species' density.  The
    stiff diagonal L part is split off and applied exactly (Strang), the rest
    is advanced with classical RK4; the nonlinear product is evaluated
    pseudo-spectrally in x with a 2/3-rule dealiasing mask.

    The mask also sets which spatial interactions exist at all: with
    n_fourier = 4 only the modes s in {-1, 0, 1} survive, which is the
    single-mode-plus-mean-field truncation used for the escape-time
    experiments (see the simulator implementation note on harmonic cascades).
*/

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vfp/dispersion.hpp"
#include "vfp/model.hpp"
#include "vfp/potential.hpp"
#include "vfp/spectral_field.hpp"

namespace vfp {

struct SimConfig {
    double beta = 2.0;
    double half_period = 31.41592653589793;  // L; base wavenumber k0 = pi/L
    int n_fourier = 32;
    int n_modes = 61;
    double dt = 0.05;
    double t_end = 100.0;
    double epsilon = 1e-3;
    double delta0 = 0.05;
    int sample_every = 10;
    bool linearized = false;
    std::string potential_kind = "bump";
    double potential_width = 1.0;
    std::uint64_t seed = 0;

    double k0() const;
    // Largest stable step for the explicit part: 0.5 / (kappa_max * v_eff)
    // with v_eff = sqrt((n_modes + 1) / beta).  This keeps kappa_max * v_eff
    // * dt well inside the RK4 imaginary-axis stability interval.
    double dt_bound() const;
    void validate() const;
};

struct TimeSeries {
    std::vector<DiagnosticsRecord> records;  // strictly increasing times
};

// Positive initial data of the instability experiment, plus what the
// positivity gate actually did to obtain it.
struct InitialData {
    TwoSpeciesState state;
    int filter_level;      // 0 none, 1 Cesaro, 2 squared Cesaro
    double cutoff_radius;  // velocity extent of the positivity check grid
    double min_f;          // measured minimum of f on the check grid
};

class Stepper {
public:
    explicit Stepper(const SimConfig& config);

    // One Strang step of size config.dt: exact Fokker-Planck half-step,
    // RK4 on transport + forces, exact Fokker-Planck half-step.
    void step(TwoSpeciesState& state);

    const SimConfig& config() const { return config_; }
    const FourierGrid& grid() const { return grid_; }
    const HermiteBasis& basis() const { return basis_; }

private:
    void derivative(const std::vector<cplx>& a1, const std::vector<cplx>& a2,
                    std::vector<cplx>& d1, std::vector<cplx>& d2);
    // force arrives as Fourier coefficients and is turned into grid values in
    // place when the nonlinear term is on
    void species_derivative(const std::vector<cplx>& a, std::vector<cplx>& force,
                            std::vector<cplx>& d);
    void half_fokker_planck(std::vector<cplx>& a) const;

    SimConfig config_;
    FourierGrid grid_;
    HermiteBasis basis_;
    Potential potential_;
    std::vector<double> uhat_;     // Uhat(kappa_j)
    std::vector<double> fp_half_;  // exp(-n dt / 2)
    std::vector<char> keep_;       // 2/3-rule mask (Nyquist always dropped)
    std::vector<double> sqv_;      // sqrt(n/beta), velocity ladder factors
    std::vector<double> sqb_;      // sqrt(beta n), raising ladder factors
    // RK4 stages and pseudo-spectral scratch, preallocated
    std::vector<cplx> y1_, y2_, s1_, s2_, acc1_, acc2_, d1_, d2_;
    std::vector<cplx> fbuf1_, fbuf2_, rows_;
};

// Standing-wave pair epsilon * Im(exp(i k0 x) q(v)) from the unstable
// eigenvector q at k0, placed in Fourier modes +-1 for species 1 and negated
// for species 2; q is first projected onto its parity class so the pair
// satisfies (S) exactly.  A coefficient-space filter ladder (none, Cesaro,
// squared Cesaro) is climbed until the reconstructed f_i are nonnegative on a
// 256 x 256 check grid covering |v| <= sqrt((8/beta) |log epsilon|); if even
// the strongest filter fails, PositivityError reports the measured minimum.
InitialData build_unstable_initial_data(const EigenResult& eig, const SimConfig& config);

struct RunOutput {
    TimeSeries series;
    EigenResult eigenpair;  // leading mode at k0; the lambda_1 reference
    InitialData initial;
    TwoSpeciesState final_state;
    bool reached_threshold;  // stopped on ||g|| >= 2 delta0 before t_end
};

// Full experiment: leading eigenpair at k0, positive initial data, time
// stepping until t_end or ||g|| >= 2 delta0, diagnostics every sample_every
// steps (and at t = 0 and the final step).
RunOutput run(const SimConfig& config);

// Least-squares slope of log ||g(t)|| over samples with t in [t_begin,
// t_end]; needs at least 10 samples with positive norms.
double measure_growth_rate(const TimeSeries& series, double t_begin, double t_end);

// First time ||g|| reaches delta0, interpolated between samples (linearly in
// log ||g||, so a sampled exponential is recovered exactly); nullopt if the
// threshold is never reached.
std::optional<double> escape_time(const TimeSeries& series, double delta0);

}  // namespace vfp
