#include "maxineq/integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace maxineq {

namespace {

double partition_mesh(std::span<const double> times, const Partition& part) {
    double mesh = 0.0;
    for (std::size_t k = 0; k + 1 < part.size(); ++k)
        mesh = std::max(mesh, times[part[k + 1]] - times[part[k]]);
    return mesh;
}

// index of the violating step if g is not monotone on the grid, npos if it is
std::size_t monotone_violation(std::span<const double> v) {
    bool up_ok = true, down_ok = true;
    std::size_t first_bad = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1] < v[i]) up_ok = false;
        if (v[i + 1] > v[i]) down_ok = false;
        if (!up_ok && !down_ok) { first_bad = i + 1; break; }
    }
    return (up_ok || down_ok) ? static_cast<std::size_t>(-1) : first_bad;
}

double left_sum(const SampledFunction& g, const SampledFunction& f, const Partition& part,
                bool left_limit) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < part.size(); ++k) {
        const std::size_t i = part[k];
        // the cadlag representative is constant between grid points, so the
        // left limit at grid point i is the sample one grid point back
        const std::size_t gi = (left_limit && i > 0) ? i - 1 : i;
        sum += g.values[gi] * (f.values[part[k + 1]] - f.values[i]);
    }
    return sum;
}

} // namespace

SampledFunction::SampledFunction(std::vector<double> t, std::vector<double> v)
    : times(std::move(t)), values(std::move(v)) {
    validate();
}

void SampledFunction::validate() const {
    if (times.empty() || times.size() != values.size())
        throw std::invalid_argument("SampledFunction: need matching non-empty times/values");
    if (times.front() != 0.0)
        throw std::invalid_argument("SampledFunction: grid must start at t = 0");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
            throw std::invalid_argument("SampledFunction: non-finite entry at index " +
                                        std::to_string(i));
        if (i > 0 && times[i] <= times[i - 1])
            throw std::invalid_argument("SampledFunction: times not strictly increasing at index " +
                                        std::to_string(i));
    }
}

double SampledFunction::value_at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin())
        throw std::invalid_argument("SampledFunction::value_at: t before grid start");
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

SampledFunction identity_grid(double horizon, std::size_t n_points) {
    if (n_points < 2 || !(horizon > 0.0))
        throw std::invalid_argument("identity_grid: need horizon > 0 and >= 2 points");
    std::vector<double> t(n_points), v(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        t[i] = horizon * static_cast<double>(i) / static_cast<double>(n_points - 1);
        v[i] = t[i];
    }
    return SampledFunction(std::move(t), std::move(v));
}

SampledFunction constant_grid(double horizon, std::size_t n_points, double value) {
    SampledFunction f = identity_grid(horizon, n_points);
    std::fill(f.values.begin(), f.values.end(), value);
    return f;
}

std::pair<SampledFunction, SampledFunction> resample_to_union(const SampledFunction& a,
                                                              const SampledFunction& b) {
    a.validate();
    b.validate();
    if (a.horizon() != b.horizon())
        throw std::invalid_argument("resample_to_union: horizons differ");
    std::vector<double> grid;
    grid.reserve(a.times.size() + b.times.size());
    std::merge(a.times.begin(), a.times.end(), b.times.begin(), b.times.end(),
               std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto resample = [&grid](const SampledFunction& s) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = s.value_at(grid[i]);
        return SampledFunction(grid, std::move(v));
    };
    return {resample(a), resample(b)};
}

void PartitionSequence::validate(std::span<const double> times) const {
    if (partitions.empty())
        throw std::invalid_argument("PartitionSequence: empty");
    double prev_mesh = std::numeric_limits<double>::infinity();
    for (const Partition& part : partitions) {
        if (part.size() < 2 || part.front() != 0 || part.back() != times.size() - 1)
            throw std::invalid_argument("PartitionSequence: partition must contain both endpoints");
        if (!std::is_sorted(part.begin(), part.end()) ||
            std::adjacent_find(part.begin(), part.end()) != part.end())
            throw std::invalid_argument("PartitionSequence: indices must be strictly increasing");
        const double mesh = partition_mesh(times, part);
        if (mesh > prev_mesh + 1e-15)
            throw std::invalid_argument("PartitionSequence: mesh must be non-increasing");
        prev_mesh = mesh;
    }
}

PartitionSequence dyadic_partitions(std::size_t grid_size, std::size_t depth_min,
                                    std::size_t depth_max) {
    if (grid_size < 2 || depth_min > depth_max)
        throw std::invalid_argument("dyadic_partitions: bad arguments");
    PartitionSequence seq;
    const std::size_t last = grid_size - 1;
    for (std::size_t d = depth_min; d <= depth_max; ++d) {
        const std::size_t want = std::min<std::size_t>(last, std::size_t{1} << d);
        Partition part;
        part.reserve(want + 1);
        for (std::size_t k = 0; k <= want; ++k) {
            // round k/want of the way along the grid
            const std::size_t idx = (k * last + want / 2) / want;
            if (part.empty() || idx > part.back()) part.push_back(idx);
        }
        if (part.back() != last) part.push_back(last);
        seq.partitions.push_back(std::move(part));
        if (want == last) break; // cannot refine past the grid
    }
    return seq;
}

IntegralEstimate pathwise_integral(const SampledFunction& g_in, const SampledFunction& f_in,
                                   const PartitionSequence& partitions) {
    auto [g, f] = resample_to_union(g_in, f_in);
    const std::size_t bad = monotone_violation(g.values);
    if (bad != static_cast<std::size_t>(-1))
        throw std::invalid_argument("pathwise_integral: integrand not monotone at grid index " +
                                    std::to_string(bad));
    partitions.validate(g.times);

    IntegralEstimate est;
    est.partition_values.reserve(partitions.partitions.size());
    for (const Partition& part : partitions.partitions)
        est.partition_values.push_back(left_sum(g, f, part, /*left_limit=*/false));

    const Partition& finest = partitions.partitions.back();
    est.value = est.partition_values.back();
    est.left_limit_value = left_sum(g, f, finest, /*left_limit=*/true);
    est.sampling_gap = std::abs(est.value - est.left_limit_value);

    const std::size_t k = std::min<std::size_t>(3, est.partition_values.size());
    auto tail = std::span<const double>(est.partition_values).last(k);
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    est.spread = *hi - *lo;
    est.converged = est.spread <= 1e-6 * (1.0 + std::abs(est.value));
    return est;
}

IbpSides integration_by_parts_discrete(const SampledFunction& g_in, const SampledFunction& f_in,
                                       const Partition& partition) {
    auto [g, f] = resample_to_union(g_in, f_in);
    PartitionSequence single{{partition}};
    single.validate(g.times);

    double lhs = 0.0, cross = 0.0, qcov = 0.0;
    for (std::size_t k = 0; k + 1 < partition.size(); ++k) {
        const std::size_t i = partition[k], j = partition[k + 1];
        const double df = f.values[j] - f.values[i];
        const double dg = g.values[j] - g.values[i];
        lhs += g.values[i] * df;
        cross += f.values[i] * dg;
        qcov += dg * df;
    }
    const double rhs =
        -cross + g.values.back() * f.values.back() - g.values.front() * f.values.front() - qcov;
    return {lhs, rhs, qcov};
}

namespace {

ContPathReport check_cont_common(const SampledFunction& f, double p, double jump_tol,
                                 double tol_scale, bool remark_form) {
    f.validate();
    if (!(p > 1.0) || p < kMinExponent)
        throw std::invalid_argument("continuous path check: requires p > 1");
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] < 0.0)
            throw std::invalid_argument("continuous path check: negative value at index " +
                                        std::to_string(i));

    const std::vector<double> fmax = running_max(f.values);
    const double q = p / (p - 1.0);
    const std::size_t n = f.values.size();

    double sum = 0.0;          // left sum of the h(f_max) integrand against f
    double largest_jump = 0.0; // largest df at a step that raises the max
    std::vector<double> osc(n - 1);
    const double coef = remark_form ? -p * p / (p - 1.0) : -q;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double df = f.values[i + 1] - f.values[i];
        sum += coef * std::pow(fmax[i], p - 1.0) * df;
        osc[i] = std::abs(df);
        if (fmax[i + 1] > fmax[i]) largest_jump = std::max(largest_jump, std::abs(df));
    }
    // median |df| as the oscillation scale; robust against the jump itself
    double osc_scale = 0.0;
    if (!osc.empty()) {
        std::nth_element(osc.begin(), osc.begin() + osc.size() / 2, osc.end());
        osc_scale = osc[osc.size() / 2];
    }

    ContPathReport out;
    out.ineq.inequality = PathInequality::Lp;
    out.ineq.p = p;
    out.ineq.lhs = std::pow(fmax.back(), p);
    if (remark_form) {
        out.ineq.rhs = sum + std::pow(q, p) * std::pow(f.values.back(), p) -
                       q * std::pow(f.values.front(), p);
    } else {
        out.ineq.rhs = sum + q * std::pow(fmax.back(), p - 1.0) * f.values.back() -
                       std::pow(f.values.front(), p) / (p - 1.0);
    }
    out.ineq.slack = out.ineq.rhs - out.ineq.lhs;
    out.ineq.holds =
        out.ineq.slack >= -check_tolerance(out.ineq.lhs, out.ineq.rhs, tol_scale);
    out.largest_max_jump = largest_jump;
    out.running_max_continuous = largest_jump <= jump_tol * osc_scale;
    return out;
}

} // namespace

ContPathReport check_cont_path_lp(const SampledFunction& f, double p, double jump_tol,
                                  double tol_scale) {
    return check_cont_common(f, p, jump_tol, tol_scale, /*remark_form=*/false);
}

ContPathReport check_remark_cont_doob(const SampledFunction& f, double p, double jump_tol,
                                      double tol_scale) {
    return check_cont_common(f, p, jump_tol, tol_scale, /*remark_form=*/true);
}

} // namespace maxineq
