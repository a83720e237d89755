#pragma once

#include "maxineq/pathwise.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace maxineq {

// A cadlag function on [0, T] represented by samples on a strictly
// increasing grid t_0 = 0 < ... < t_N = T; sampled values are read as right
// limits, so the representative is constant on [t_i, t_{i+1}).
struct SampledFunction {
    std::vector<double> times;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(std::vector<double> t, std::vector<double> v);

    std::size_t size() const { return times.size(); }
    double horizon() const { return times.back(); }

    // right-constant interpolation: value at the largest sample time <= t
    double value_at(double t) const;

    void validate() const;
};

// f = g(t) = t sampled on n+1 equispaced points of [0, T]
SampledFunction identity_grid(double horizon, std::size_t n_points);
// constant function on the same grid layout
SampledFunction constant_grid(double horizon, std::size_t n_points, double value);

// Put two sampled functions on the union of their grids (right-constant
// interpolation preserves the cadlag reading). Horizons must match.
std::pair<SampledFunction, SampledFunction> resample_to_union(const SampledFunction& a,
                                                              const SampledFunction& b);

// A partition is a sorted list of grid indices containing both endpoints.
using Partition = std::vector<std::size_t>;

struct PartitionSequence {
    std::vector<Partition> partitions;

    // validates against a grid: endpoints present, indices sorted, and the
    // time mesh non-increasing along the sequence
    void validate(std::span<const double> times) const;
};

// Dyadic refinements of the grid: roughly 2^k intervals for k in
// [depth_min, depth_max], capped at the full grid.
PartitionSequence dyadic_partitions(std::size_t grid_size, std::size_t depth_min,
                                    std::size_t depth_max);

struct IntegralEstimate {
    double value = 0.0;            // plain left sum on the finest partition
    double left_limit_value = 0.0; // same with g evaluated one grid point back
    double sampling_gap = 0.0;     // |value - left_limit_value|
    std::vector<double> partition_values;
    bool converged = false;
    double spread = 0.0; // max - min of partition_values over the last 3 levels
};

// Partition-limit integral of a monotone integrand g against f; both are
// resampled to a common grid first. Throws if g is not monotone, naming the
// violating index.
IntegralEstimate pathwise_integral(const SampledFunction& g, const SampledFunction& f,
                                   const PartitionSequence& partitions);

struct IbpSides {
    double lhs; // sum g_i (f_{i+1} - f_i)
    double rhs; // -sum f_i (g_{i+1} - g_i) + g_T f_T - g_0 f_0 - sum df dg
    double quadratic_covariation; // the subtracted sum of products of increments
};

// Discrete integration by parts on one partition of the common grid; lhs and
// rhs agree up to rounding. No monotonicity needed.
IbpSides integration_by_parts_discrete(const SampledFunction& g, const SampledFunction& f,
                                       const Partition& partition);

struct ContPathReport {
    PathIneqReport ineq;
    // no step both strictly raises the running max and jumps relative to the
    // local oscillation scale of f (grid surrogate for "the running max is
    // continuous"; the refinement limit of the slack is the robust test)
    bool running_max_continuous = true;
    double largest_max_jump = 0.0;
};

// f_max^p <= int p^{-1} h(f_max) df + p/(p-1) f_max^{p-1} f_T - 1/(p-1) f_0^p
// with h(x) = -p^2/(p-1) x^(p-1), evaluated as the left sum on f's own grid.
ContPathReport check_cont_path_lp(const SampledFunction& f, double p, double jump_tol = 8.0,
                                  double tol_scale = 1.0);

// Alternative right side:
// f_max^p <= -int p^2/(p-1) f_max^{p-1} df + (p/(p-1))^p f_T^p - p/(p-1) f_0^p;
// on a grid this is exactly the discrete Lp path inequality on the samples.
ContPathReport check_remark_cont_doob(const SampledFunction& f, double p, double jump_tol = 8.0,
                                      double tol_scale = 1.0);

} // namespace maxineq
