#pragma once

#include "maxineq/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace maxineq {

// Brownian motion started at 1 and stopped at the first time it falls to
// 1/alpha of its running maximum. The stopped value has the explicit law mu
// below; the stopped process attains equality in the sharp maximal
// inequalities. p only enters through the integrability constraint
// alpha < p/(p-1).
struct AlphaConfig {
    double alpha = 1.5;
    double p = 2.0;
    double dt = 1e-4;
    double t_max = 1e3;    // cap; capped samples are flagged, never mixed into law statistics
    std::uint64_t seed = 0;

    // Compensate the discrete monitoring of the barrier: stochastic
    // Brownian-bridge crossing between grid points, bridge-sampled running
    // max, and the terminal value snapped onto the barrier. Off by default;
    // the raw grid scheme keeps its O(sqrt(dt)) bias measurable.
    bool bridge_correction = false;

    void validate() const;
    std::uint64_t max_steps() const;
};

// ---------------------------------------------------------------------------
// closed-form law mu of the stopped value: support [1/alpha, inf),
// density  c(alpha) x^(-(2 alpha - 1)/(alpha - 1)),
// cdf      F(x) = 1 - (alpha x)^(-alpha/(alpha-1)).
// ---------------------------------------------------------------------------

double mu_density(double x, double alpha);
double mu_cdf(double x, double alpha);
// exact inverse of the cdf; u in [0, 1)
double mu_quantile(double u, double alpha);

// E[X^p] = alpha^(1-p) / (p - (p-1) alpha), finite iff alpha < p/(p-1)
double mu_moment(double p, double alpha);
// E[X^p]^(1/p); strictly increasing in alpha, diverges at alpha -> p/(p-1)
double mu_pnorm(double p, double alpha);

// alpha realizing a prescribed ||S_T||_p = target > 1 (bisection on
// mu_pnorm); with the x0-scaling this hits any 0 < x0 <= x1
double alpha_for_pnorm(double target, double p);

// ---------------------------------------------------------------------------
// simulation
// ---------------------------------------------------------------------------

struct StoppedSample {
    double terminal = 0.0;    // reported stopped value
    double max_value = 0.0;   // running max at the stop
    double overshoot = 0.0;   // barrier - grid value at detection (0 for bridge stops)
    std::uint64_t stop_step = 0;
    bool capped = false;
    std::vector<double> path; // filled only when keep_path is requested
};

StoppedSample simulate_tau_alpha(const AlphaConfig& config, std::uint64_t index,
                                 bool keep_path = false);

// hot loop shared by the single-sample and batch drivers; one Philox block
// per step covers the Gaussian increment and both bridge uniforms
struct TauAlphaState {
    double value = 1.0;
    double max_value = 1.0;
    double terminal = 0.0;
    double overshoot = 0.0;
    bool stopped = false;
};

inline void tau_alpha_step(const AlphaConfig& cfg, const CounterRng& rng, std::uint64_t index,
                           std::uint64_t step, double sqrt_dt, TauAlphaState& st) {
    const PhiloxBlock blk = rng.block(index, step);
    const double barrier = st.max_value / cfg.alpha;
    const double next = st.value + sqrt_dt * gauss(blk.w[0], blk.w[1]);
    if (next <= barrier) {
        st.stopped = true;
        st.terminal = cfg.bridge_correction ? barrier : next;
        st.overshoot = barrier - next;
        return;
    }
    if (cfg.bridge_correction) {
        // both endpoints above the barrier: the bridge still crosses with
        // probability exp(-2 (a-L)(b-L)/dt)
        const double pcross =
            std::exp(-2.0 * (st.value - barrier) * (next - barrier) / (sqrt_dt * sqrt_dt));
        if (uniform_open(blk.w[2]) < pcross) {
            st.stopped = true;
            st.terminal = barrier;
            st.overshoot = 0.0;
            return;
        }
        // exact draw of the bridge maximum over the step
        const double d = next - st.value;
        const double peak =
            0.5 * (st.value + next +
                   std::sqrt(d * d - 2.0 * (sqrt_dt * sqrt_dt) * std::log(uniform_open(blk.w[3]))));
        if (peak > st.max_value) st.max_value = peak;
    }
    if (next > st.max_value) st.max_value = next;
    st.value = next;
}

// ---------------------------------------------------------------------------
// sharpness / equality attainment
// ---------------------------------------------------------------------------

// Closed-form and Monte Carlo sides of the sharp Lp bound (and of the
// two-norm form at p = 2) for the stopped process, whose max is exactly
// alpha times its terminal value.
struct SharpnessReport {
    double alpha = 0.0;
    double p = 0.0;

    // closed form via mu moments; gap == 0 is the equality statement
    double norm_terminal = 0.0; // ||S_T||_p
    double norm_max = 0.0;      // ||max S||_p = alpha ||S_T||_p
    double rhs_sharp = 0.0;     // p/(p-1) ||S_T||_p - ||S_0||_p^p / ((p-1) ||max||_p^(p-1))
    double gap = 0.0;           // rhs_sharp - norm_max
    double rhs_two_norm = 0.0;  // p = 2 only: ||S_T||_2 + ||S_T - S_0||_2
    double gap_two_norm = 0.0;

    // Monte Carlo estimates over non-capped samples
    std::size_t n_samples = 0;
    std::size_t n_capped = 0;
    double mc_norm_terminal = 0.0;
    double mc_norm_max = 0.0;
    double mc_stderr = 0.0; // delta-method stderr of mc_norm_terminal
    double mean_overshoot = 0.0;
    double mc_mean_terminal = 0.0; // martingale check, should be near 1
};

SharpnessReport equality_attainment_report(const AlphaConfig& config, std::size_t n_samples);

// closed-form columns only (no simulation)
SharpnessReport sharpness_closed_form(double alpha, double p);

} // namespace maxineq
