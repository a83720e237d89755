#pragma once

#include "maxineq/path.hpp"
#include "maxineq/rng.hpp"
#include "maxineq/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace maxineq {

// per-path summary consumed by the expectation-level suites
struct PathFunctionals {
    double start = 0.0;
    double terminal = 0.0;
    double max_value = 0.0;
};

// Seeded generator of martingale / submartingale trajectories. Paths are a
// pure function of (descriptor, seed, index): drawing them in any order or
// from any thread gives identical results.
struct PathSampler {
    enum class Model {
        Tree,          // walk a TreeModel along its transition probabilities
        Gbm,           // exact lognormal one-step transitions
        Walk,          // Gaussian random walk, real-valued
        WalkReflected, // |.| applied after each Gaussian step
        WalkAbsorbed,  // clamped at 0 and absorbed there
        WalkPm1        // +/-1 steps with probability 1/2
    };

    Model model = Model::Gbm;
    std::uint64_t seed = 0;
    std::size_t steps = 100;
    double horizon = 1.0; // dt = horizon / steps
    double start = 1.0;
    double sigma = 0.2; // gbm volatility
    double mu = 0.0;    // gbm drift; the skeleton is a martingale iff mu = 0
    double drift = 0.0; // walk drift per unit time
    std::optional<TreeModel> tree;

    void validate() const;

    // model taxonomy, used by the verification suites to gate their
    // preconditions
    bool non_negative() const;
    bool is_martingale() const;
    bool is_submartingale() const;

    static Model parse_model(const std::string& name);
    static const char* model_name(Model m);
};

Path sample_path(const PathSampler& sampler, std::uint64_t index);

// terminal/max/start only, skipping path storage (same draws as sample_path)
PathFunctionals sample_functionals(const PathSampler& sampler, std::uint64_t index);

struct DriftEstimate {
    std::vector<double> per_step_mean; // mean over paths of max_n (s_{n+1} - s_n)
    double total_mean = 0.0;           // estimate of E[sum max_n (s_{n+1}-s_n)]
    double total_stderr = 0.0;
    std::size_t n_paths = 0;
};

// Monte Carlo estimate of the expected max-weighted increment sum, the
// quantity whose non-negativity turns the pathwise inequalities into the
// expectation inequalities. Requires >= 2 paths of equal length.
DriftEstimate empirical_submartingale_drift(std::span<const Path> paths);

} // namespace maxineq
