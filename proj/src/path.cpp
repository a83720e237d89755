#include "maxineq/path.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maxineq {

std::vector<double> running_max(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("running_max: empty path");
    std::vector<double> out(values.size());
    double m = values[0];
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("running_max: non-finite value at index " +
                                        std::to_string(i));
        if (values[i] > m) m = values[i];
        out[i] = m;
    }
    return out;
}

Path::Path(std::vector<double> values)
    : values_(std::move(values)), running_max_(maxineq::running_max(values_)) {}

std::size_t Path::first_negative() const {
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] < 0.0) return i;
    return npos;
}

SbpSides summation_by_parts(const Path& path, const std::function<double(double)>& h) {
    const auto s = path.values();
    const auto m = path.running_max();
    const std::size_t T = path.steps();

    // h is only ever evaluated on running-max values
    std::vector<double> hm(T + 1);
    for (std::size_t i = 0; i <= T; ++i) {
        hm[i] = h(m[i]);
        if (!std::isfinite(hm[i]))
            throw std::invalid_argument("summation_by_parts: h non-finite at running max index " +
                                        std::to_string(i));
    }

    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < T; ++i) {
        lhs += hm[i] * (s[i + 1] - s[i]);
        rhs += hm[i] * (m[i + 1] - m[i]);
    }
    rhs += hm[T] * (s[T] - m[T]);
    return {lhs, rhs};
}

double identity_tolerance(double value_scale, double weight_scale, std::size_t terms) {
    return 1e-9 * (1.0 + std::abs(value_scale) * std::abs(weight_scale) *
                             static_cast<double>(terms));
}

} // namespace maxineq
