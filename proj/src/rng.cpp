#include "maxineq/rng.hpp"

#include <cmath>

namespace maxineq {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    return static_cast<std::uint64_t>(prod);
}

inline void round_once(std::array<std::uint64_t, 4>& ctr,
                       const std::array<std::uint64_t, 2>& key) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kMul0, ctr[0], hi0);
    const std::uint64_t lo1 = mulhilo(kMul1, ctr[2], hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace

PhiloxBlock philox4x64(const std::array<std::uint64_t, 4>& counter,
                       const std::array<std::uint64_t, 2>& key) {
    std::array<std::uint64_t, 4> ctr = counter;
    std::array<std::uint64_t, 2> k = key;
    round_once(ctr, k);
    for (int r = 1; r < 10; ++r) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
        round_once(ctr, k);
    }
    return {ctr};
}

double uniform_open(std::uint64_t word) {
    // 52 bits so the half-ulp offset stays representable at both ends
    return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

double gauss(std::uint64_t w0, std::uint64_t w1) {
    const double u1 = uniform_open(w0);
    const double u2 = uniform_open(w1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace maxineq
