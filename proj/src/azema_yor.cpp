#include "maxineq/azema_yor.hpp"

#include "maxineq/batch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxineq {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 1.0))
        throw std::invalid_argument("mu law: requires alpha > 1");
}

} // namespace

void AlphaConfig::validate() const {
    if (!(p > 1.0)) throw std::invalid_argument("AlphaConfig: requires p > 1");
    const double limit = p / (p - 1.0);
    if (!(alpha > 1.0) || !(alpha < limit))
        throw std::invalid_argument(
            "AlphaConfig: alpha must lie in (1, p/(p-1)) = (1, " + std::to_string(limit) +
            "), otherwise the stopped value is not p-integrable");
    if (!(dt > 0.0) || !(t_max > 0.0))
        throw std::invalid_argument("AlphaConfig: dt and t_max must be positive");
}

std::uint64_t AlphaConfig::max_steps() const {
    return static_cast<std::uint64_t>(std::ceil(t_max / dt));
}

double mu_density(double x, double alpha) {
    require_alpha(alpha);
    if (x < 1.0 / alpha) return 0.0;
    const double c = std::pow(alpha, -1.0 / (alpha - 1.0)) / (alpha - 1.0);
    return c * std::pow(x, -(2.0 * alpha - 1.0) / (alpha - 1.0));
}

double mu_cdf(double x, double alpha) {
    require_alpha(alpha);
    if (x <= 1.0 / alpha) return 0.0;
    return 1.0 - std::pow(alpha * x, -alpha / (alpha - 1.0));
}

double mu_quantile(double u, double alpha) {
    require_alpha(alpha);
    if (!(u >= 0.0) || !(u < 1.0))
        throw std::invalid_argument("mu_quantile: u must lie in [0, 1)");
    return std::pow(1.0 - u, -(alpha - 1.0) / alpha) / alpha;
}

double mu_moment(double p, double alpha) {
    require_alpha(alpha);
    const double denom = p - (p - 1.0) * alpha;
    if (!(denom > 0.0))
        throw std::invalid_argument("mu_moment: E[X^p] diverges for alpha >= p/(p-1)");
    return std::pow(alpha, 1.0 - p) / denom;
}

double mu_pnorm(double p, double alpha) {
    return std::pow(mu_moment(p, alpha), 1.0 / p);
}

double alpha_for_pnorm(double target, double p) {
    if (!(target > 1.0))
        throw std::invalid_argument("alpha_for_pnorm: reachable norms are > 1");
    // mu_pnorm is strictly increasing from 1 (alpha -> 1) to infinity
    // (alpha -> p/(p-1)); bisect on that interval
    const double limit = p / (p - 1.0);
    double lo = 1.0, hi = limit;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * limit; ++it) {
        const double mid = 0.5 * (lo + hi);
        double val;
        if (mid <= 1.0) {
            val = 1.0;
        } else if (mid >= limit) {
            val = std::numeric_limits<double>::infinity();
        } else {
            val = mu_pnorm(p, mid);
        }
        (val < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

StoppedSample simulate_tau_alpha(const AlphaConfig& config, std::uint64_t index,
                                 bool keep_path) {
    config.validate();
    const CounterRng rng{config.seed, /*stream=*/2};
    const double sdt = std::sqrt(config.dt);
    const std::uint64_t max_steps = config.max_steps();

    StoppedSample out;
    TauAlphaState st;
    if (keep_path) out.path.push_back(st.value);
    std::uint64_t k = 0;
    for (; k < max_steps; ++k) {
        tau_alpha_step(config, rng, index, k, sdt, st);
        if (st.stopped) {
            if (keep_path) out.path.push_back(st.terminal);
            break;
        }
        if (keep_path) out.path.push_back(st.value);
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

SharpnessReport sharpness_closed_form(double alpha, double p) {
    SharpnessReport r;
    r.alpha = alpha;
    r.p = p;
    r.norm_terminal = mu_pnorm(p, alpha);
    // the stop happens exactly on the barrier, so max = alpha * terminal
    r.norm_max = alpha * r.norm_terminal;
    r.rhs_sharp = p / (p - 1.0) * r.norm_terminal -
                  1.0 / ((p - 1.0) * std::pow(r.norm_max, p - 1.0));
    r.gap = r.rhs_sharp - r.norm_max;
    if (p == 2.0) {
        const double m2 = mu_moment(2.0, alpha);
        // martingale from 1: E[(S_T - S_0)^2] = E[S_T^2] - 1
        r.rhs_two_norm = r.norm_terminal + std::sqrt(m2 - 1.0);
        r.gap_two_norm = r.rhs_two_norm - r.norm_max;
    }
    return r;
}

SharpnessReport equality_attainment_report(const AlphaConfig& config, std::size_t n_samples) {
    config.validate();
    SharpnessReport r = sharpness_closed_form(config.alpha, config.p);

    std::vector<batch::StoppedStats> stats(n_samples);
    batch::simulate_stopped_bm(config, stats, batch::Mode::Parallel);

    std::vector<double> term_p, max_p, term, over;
    term_p.reserve(n_samples);
    max_p.reserve(n_samples);
    term.reserve(n_samples);
    over.reserve(n_samples);
    for (const auto& s : stats) {
        if (s.capped) continue;
        term_p.push_back(std::pow(s.terminal, config.p));
        max_p.push_back(std::pow(s.max_value, config.p));
        term.push_back(s.terminal);
        over.push_back(s.overshoot);
    }
    r.n_samples = n_samples;
    r.n_capped = n_samples - term.size();
    if (term.empty()) return r;

    const double mp_term = batch::mean(term_p);
    const double mp_max = batch::mean(max_p);
    r.mc_norm_terminal = std::pow(mp_term, 1.0 / config.p);
    r.mc_norm_max = std::pow(mp_max, 1.0 / config.p);
    r.mc_mean_terminal = batch::mean(term);
    r.mean_overshoot = batch::mean(over);
    // delta method on the p-th moment estimator
    const double se_mp =
        std::sqrt(batch::variance(term_p, mp_term) / static_cast<double>(term_p.size()));
    r.mc_stderr = mp_term > 0.0
                      ? std::pow(mp_term, 1.0 / config.p - 1.0) / config.p * se_mp
                      : 0.0;
    return r;
}

} // namespace maxineq
