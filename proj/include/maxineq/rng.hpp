#pragma once

#include <array>
#include <cstdint>

namespace maxineq {

// Philox4x64-10 counter-based generator (Salmon et al., matching numpy's
// np.random.Philox stream). Stateless: every block of four 64-bit words is a
// pure function of (key, counter), which is what makes per-(seed, path,
// step) draws reproducible regardless of thread count or draw order.
struct PhiloxBlock {
    std::array<std::uint64_t, 4> w;
};

PhiloxBlock philox4x64(const std::array<std::uint64_t, 4>& counter,
                       const std::array<std::uint64_t, 2>& key);

// uniform in the open interval (0,1): 53-bit mantissa, half-ulp offset so
// log(u) and log1p(-u) are always finite
double uniform_open(std::uint64_t word);

// standard normal via Box-Muller from two words
double gauss(std::uint64_t w0, std::uint64_t w1);

// One block of randomness per (seed, stream, index, step). The stream id
// separates independent uses (path increments, tree branching, ...) of the
// same seed.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    PhiloxBlock block(std::uint64_t index, std::uint64_t step) const {
        return philox4x64({index, step, 0, 0}, {seed, stream});
    }
    double normal(std::uint64_t index, std::uint64_t step) const {
        const PhiloxBlock b = block(index, step);
        return gauss(b.w[0], b.w[1]);
    }
    double uniform(std::uint64_t index, std::uint64_t step) const {
        return uniform_open(block(index, step).w[0]);
    }
};

} // namespace maxineq
