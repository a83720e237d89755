#pragma once

#include "maxineq/azema_yor.hpp"
#include "maxineq/pathwise.hpp"
#include "maxineq/sampler.hpp"

#include <cstdint>
#include <span>
#include <vector>

// Data-parallel kernels. Every kernel has an OpenMP version and a serial
// reference; both fill per-index slots from counter-based draws and are
// bitwise identical for any thread count, which is what the reproducibility
// contract of the CLI rests on. Reductions go through pairwise_sum so the
// summation order is fixed independently of the execution schedule.
namespace maxineq::batch {

enum class Mode { Serial, Parallel };

// deterministic pairwise reduction (fixed tree, independent of thread count)
double pairwise_sum(std::span<const double> values);
double mean(std::span<const double> values);
// sample variance about a given mean
double variance(std::span<const double> values, double mean_value);

// --- stopped Brownian motion ------------------------------------------------

struct StoppedStats {
    double terminal = 0.0;
    double max_value = 0.0;
    double overshoot = 0.0;
    std::uint64_t stop_step = 0;
    bool capped = false;
};

void simulate_stopped_bm(const AlphaConfig& config, std::span<StoppedStats> out, Mode mode);
void simulate_stopped_bm_serial(const AlphaConfig& config, std::span<StoppedStats> out);

// --- sampler ensembles --------------------------------------------------------

void sample_functionals_bulk(const PathSampler& sampler, std::span<PathFunctionals> out,
                             Mode mode);
void sample_functionals_bulk_serial(const PathSampler& sampler, std::span<PathFunctionals> out);

// --- pathwise inequality fuzzing ---------------------------------------------

// Mixed-distribution non-negative path generator used by the fuzz kernel and
// the property tests. Per index: length 1..max_len drawn uniformly, then one
// of four value laws (uniform [0,4], lognormal(0, 1/2), uniform with a 5%
// chance of a 10x spike per entry, uniform with 20% exact zeros). Everything
// derives from (seed, index) so failures replay from the index alone.
std::vector<double> random_nonneg_path(std::uint64_t seed, std::uint64_t index,
                                       std::size_t max_len);

struct FuzzParams {
    std::uint64_t seed = 0;
    std::size_t n_paths = 1000;
    std::size_t max_len = 200;
    std::vector<double> exponents = {1.1, 1.5, 2.0, 3.0, 10.0};
    double tol_scale = 1.0;
};

struct FuzzResult {
    std::size_t n_paths = 0;
    std::size_t n_reports = 0;
    std::size_t n_failed = 0;        // reports with holds == false
    std::uint64_t first_failed_index = 0;
    double min_slack = 0.0;          // most negative slack seen across finite reports
};

// run check_path_lp for every exponent plus check_path_l2 and check_path_l1
// on generated paths
FuzzResult fuzz_check_paths(const FuzzParams& params, Mode mode);
FuzzResult fuzz_check_paths_serial(const FuzzParams& params);

} // namespace maxineq::batch
