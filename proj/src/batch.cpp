#include "maxineq/batch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxineq::batch {

namespace {

// rng stream ids; distinct across the project so one seed never feeds two
// purposes with the same counters (sampler paths use stream 1)
constexpr std::uint64_t kStreamStopped = 2;
constexpr std::uint64_t kStreamFuzz = 3;

double pairwise_sum_impl(const double* x, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(x, half) + pairwise_sum_impl(x + half, n - half);
}

StoppedStats run_one_stopped(const AlphaConfig& cfg, std::uint64_t index) {
    const CounterRng rng{cfg.seed, kStreamStopped};
    const double sdt = std::sqrt(cfg.dt);
    const std::uint64_t max_steps = cfg.max_steps();
    TauAlphaState st;
    StoppedStats out;
    std::uint64_t k = 0;
    for (; k < max_steps; ++k) {
        tau_alpha_step(cfg, rng, index, k, sdt, st);
        if (st.stopped) break;
    }
    if (st.stopped) {
        out.terminal = st.terminal;
        out.max_value = st.max_value;
        out.overshoot = st.overshoot;
        out.stop_step = k + 1;
    } else {
        out.capped = true;
        out.terminal = st.value;
        out.max_value = st.max_value;
        out.stop_step = max_steps;
    }
    return out;
}

FuzzResult fuzz_run(const FuzzParams& params, bool parallel) {
    for (double p : params.exponents)
        if (!(p > 1.0))
            throw std::invalid_argument("fuzz_check_paths: exponents must be > 1");

    const std::size_t n = params.n_paths;
    std::vector<std::uint8_t> failed(n, 0);
    std::vector<double> min_slack(n, 0.0);

#pragma omp parallel for schedule(dynamic, 64) if (parallel)
    for (std::size_t i = 0; i < n; ++i) {
        const Path path(random_nonneg_path(params.seed, i, params.max_len));
        double worst = std::numeric_limits<double>::infinity();
        bool bad = false;
        auto absorb = [&](const PathIneqReport& r) {
            if (!r.holds) bad = true;
            if (std::isfinite(r.slack)) worst = std::min(worst, r.slack);
        };
        absorb(check_path_l2(path, params.tol_scale));
        absorb(check_path_l1(path, params.tol_scale));
        for (double p : params.exponents) absorb(check_path_lp(path, p, params.tol_scale));
        failed[i] = bad ? 1 : 0;
        min_slack[i] = worst;
    }

    FuzzResult res;
    res.n_paths = n;
    res.n_reports = n * (params.exponents.size() + 2);
    res.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (failed[i] && res.n_failed++ == 0) res.first_failed_index = i;
        res.min_slack = std::min(res.min_slack, min_slack[i]);
    }
    return res;
}

} // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_impl(values.data(), values.size());
}

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of empty range");
    return pairwise_sum(values) / static_cast<double>(values.size());
}

double variance(std::span<const double> values, double mean_value) {
    if (values.size() < 2) return 0.0;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean_value;
        sq[i] = d * d;
    }
    return pairwise_sum(sq) / static_cast<double>(values.size() - 1);
}

void simulate_stopped_bm(const AlphaConfig& config, std::span<StoppedStats> out, Mode mode) {
    config.validate();
    if (mode == Mode::Serial) {
        simulate_stopped_bm_serial(config, out);
        return;
    }
    const std::size_t n = out.size();
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < n; ++i) out[i] = run_one_stopped(config, i);
}

void simulate_stopped_bm_serial(const AlphaConfig& config, std::span<StoppedStats> out) {
    config.validate();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = run_one_stopped(config, i);
}

void sample_functionals_bulk(const PathSampler& sampler, std::span<PathFunctionals> out,
                             Mode mode) {
    sampler.validate();
    if (mode == Mode::Serial) {
        sample_functionals_bulk_serial(sampler, out);
        return;
    }
    const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = sample_functionals(sampler, i);
}

void sample_functionals_bulk_serial(const PathSampler& sampler, std::span<PathFunctionals> out) {
    sampler.validate();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sample_functionals(sampler, i);
}

std::vector<double> random_nonneg_path(std::uint64_t seed, std::uint64_t index,
                                       std::size_t max_len) {
    const CounterRng rng{seed, kStreamFuzz};
    const PhiloxBlock head = rng.block(index, 0);
    const std::size_t len = 1 + static_cast<std::size_t>(head.w[0] % max_len);
    const unsigned law = static_cast<unsigned>(head.w[1] % 4);

    std::vector<double> v(len);
    for (std::size_t k = 0; k < len; ++k) {
        const PhiloxBlock b = rng.block(index, k + 1);
        const double u = uniform_open(b.w[0]);
        switch (law) {
            case 0: v[k] = 4.0 * u; break;
            case 1: v[k] = std::exp(0.5 * gauss(b.w[1], b.w[2])); break;
            case 2:
                v[k] = 4.0 * u;
                if (uniform_open(b.w[3]) < 0.05) v[k] *= 10.0;
                break;
            default: v[k] = uniform_open(b.w[1]) < 0.2 ? 0.0 : 4.0 * u; break;
        }
    }
    return v;
}

FuzzResult fuzz_check_paths(const FuzzParams& params, Mode mode) {
    return fuzz_run(params, mode == Mode::Parallel);
}

FuzzResult fuzz_check_paths_serial(const FuzzParams& params) {
    return fuzz_run(params, false);
}

} // namespace maxineq::batch
