#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace maxineq {

// Finite discrete trajectory s_0..s_T with its running maximum cached at
// construction. Immutable after construction; values may be negative (the
// L2 checker accepts real paths), non-negativity is enforced by the
// operations that need it.
class Path {
public:
    explicit Path(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    std::span<const double> running_max() const { return running_max_; }

    std::size_t size() const { return values_.size(); }
    // number of increments, T
    std::size_t steps() const { return values_.size() - 1; }

    double front() const { return values_.front(); }
    double back() const { return values_.back(); }
    double max() const { return running_max_.back(); }

    // index of the first strictly negative entry, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t first_negative() const;

private:
    std::vector<double> values_;
    std::vector<double> running_max_;
};

// Prefix maximum of an arbitrary sequence. Rejects empty or non-finite input.
std::vector<double> running_max(std::span<const double> values);

struct SbpSides {
    double lhs; // sum h(max_i) (s_{i+1} - s_i)
    double rhs; // sum h(max_i) (max_{i+1} - max_i) + h(max_T)(s_T - max_T)
};

// Both sides of the summation-by-parts identity; they agree up to
// accumulation order. Throws if h is non-finite at a required point.
SbpSides summation_by_parts(const Path& path, const std::function<double(double)>& h);

// Tolerance for checks of algebraically exact identities: the two sides are
// rearrangements of the same products, so only rounding differs.
double identity_tolerance(double value_scale, double weight_scale, std::size_t terms);

} // namespace maxineq
