#include "maxineq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace maxineq {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_source(const Ensemble& src, const char* op, bool need_submartingale = true) {
    if (src.size() == 0)
        throw std::invalid_argument(std::string(op) + ": empty source");
    if (!src.non_negative)
        throw std::invalid_argument(std::string(op) + ": source must be non-negative");
    if (need_submartingale && !src.submartingale)
        throw std::invalid_argument(std::string(op) + ": source violates the submartingale flag");
}

void require_exponent(double p, const char* op) {
    if (!(p > 1.0) || p < kMinExponent)
        throw std::invalid_argument(std::string(op) + ": requires p > 1");
}

Verdict classify(double gap, double gap_se, bool exact, double lhs, double rhs) {
    const double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
    const double eq_tol = std::max(1e-10 * scale, 1e-3 * gap_se);
    if (exact) {
        if (gap < -1e-9 * scale) return Verdict::Violated;
        if (std::abs(gap) <= eq_tol) return Verdict::HoldsWithEquality;
        return Verdict::Holds;
    }
    if (gap < -4.0 * gap_se) return Verdict::Violated;
    if (std::abs(gap) <= eq_tol) return Verdict::HoldsWithEquality;
    if (gap < 0.0) return Verdict::Inconclusive;
    return Verdict::Holds;
}

MCReport make_report(std::string id, std::optional<double> p, Estimate lhs, Estimate rhs,
                     Estimate gap, const Ensemble& src) {
    MCReport r;
    r.inequality = std::move(id);
    r.p = p;
    r.lhs = lhs.value;
    r.lhs_stderr = lhs.stderr;
    r.rhs = rhs.value;
    r.rhs_stderr = rhs.stderr;
    r.gap = gap.value;
    r.n = src.size();
    r.exact = src.exact;
    r.verdict = classify(gap.value, gap.stderr, src.exact, lhs.value, rhs.value);
    return r;
}

Estimate combine_gap(const Estimate& lhs, const Estimate& rhs) {
    // norms of correlated samples: conservative independent-term combination
    return {rhs.value - lhs.value,
            std::sqrt(lhs.stderr * lhs.stderr + rhs.stderr * rhs.stderr)};
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::HoldsWithEquality: return "holds-with-equality";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Ensemble Ensemble::from_tree(const TreeModel& model) {
    model.validate();
    Ensemble e;
    const auto paths = enumerate_paths(model);
    e.functionals.reserve(paths.size());
    e.weights.reserve(paths.size());
    double total = 0.0;
    for (const auto& wp : paths) {
        e.functionals.push_back({wp.path.front(), wp.path.back(), wp.path.max()});
        e.weights.push_back(wp.probability);
        total += wp.probability;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::logic_error("Ensemble::from_tree: path probabilities sum to " +
                               std::to_string(total));
    e.exact = true;
    e.non_negative = true;
    e.submartingale = model.is_submartingale();
    e.martingale = model.is_martingale();
    if (e.submartingale && model.has_unique_parents())
        e.compensator = compensator_at_leaves(model, doob_decompose(model));
    return e;
}

Ensemble Ensemble::from_sampler(const PathSampler& sampler, std::size_t n, batch::Mode mode) {
    Ensemble e;
    e.functionals.resize(n);
    batch::sample_functionals_bulk(sampler, e.functionals, mode);
    e.exact = false;
    e.non_negative = sampler.non_negative();
    e.submartingale = sampler.is_submartingale();
    e.martingale = sampler.is_martingale();
    return e;
}

Ensemble Ensemble::from_stopped_bm(const AlphaConfig& config, std::size_t n, batch::Mode mode) {
    std::vector<batch::StoppedStats> stats(n);
    batch::simulate_stopped_bm(config, stats, mode);
    Ensemble e;
    e.functionals.reserve(n);
    for (const auto& s : stats) {
        if (s.capped) {
            ++e.n_excluded;
            continue;
        }
        e.functionals.push_back({1.0, s.terminal, s.max_value});
    }
    e.exact = false;
    e.non_negative = true;
    e.submartingale = true;
    e.martingale = true;
    return e;
}

Estimate expect(const Ensemble& source,
                const std::function<double(const PathFunctionals&)>& transform) {
    const std::size_t n = source.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = transform(source.functionals[i]);
    if (source.exact) {
        for (std::size_t i = 0; i < n; ++i) values[i] *= source.weights[i];
        return {batch::pairwise_sum(values), 0.0};
    }
    const double m = batch::mean(values);
    const double var = batch::variance(values, m);
    return {m, std::sqrt(var / static_cast<double>(n))};
}

Estimate norm_p(const Ensemble& source,
                const std::function<double(const PathFunctionals&)>& transform, double p) {
    const Estimate moment = expect(
        source, [&](const PathFunctionals& f) { return std::pow(std::abs(transform(f)), p); });
    if (moment.value <= 0.0) return {0.0, 0.0};
    const double norm = std::pow(moment.value, 1.0 / p);
    return {norm, std::pow(moment.value, 1.0 / p - 1.0) / p * moment.stderr};
}

MCReport verify_doob_lp(const Ensemble& source, double p) {
    require_source(source, "verify_doob_lp");
    require_exponent(p, "verify_doob_lp");
    const double qp = std::pow(p / (p - 1.0), p);
    auto lhs_f = [p](const PathFunctionals& f) { return std::pow(f.max_value, p); };
    auto rhs_f = [=](const PathFunctionals& f) { return qp * std::pow(f.terminal, p); };
    const Estimate lhs = expect(source, lhs_f);
    const Estimate rhs = expect(source, rhs_f);
    const Estimate gap =
        expect(source, [&](const PathFunctionals& f) { return rhs_f(f) - lhs_f(f); });
    return make_report("doob-lp", p, lhs, rhs, gap, source);
}

MCReport verify_doob_l1(const Ensemble& source) {
    require_source(source, "verify_doob_l1");
    for (const PathFunctionals& f : source.functionals)
        if (!(f.start > 0.0))
            throw std::invalid_argument(
                "verify_doob_l1: requires S_0 > 0 on every path (log S_0 in the bound)");
    const double c = std::exp(1.0) / (std::exp(1.0) - 1.0);
    auto lhs_f = [](const PathFunctionals& f) { return f.max_value; };
    auto rhs_f = [=](const PathFunctionals& f) {
        return c * (xlogx(f.terminal) + f.start * (1.0 - std::log(f.start)));
    };
    const Estimate lhs = expect(source, lhs_f);
    const Estimate rhs = expect(source, rhs_f);
    const Estimate gap =
        expect(source, [&](const PathFunctionals& f) { return rhs_f(f) - lhs_f(f); });
    return make_report("doob-l1", std::nullopt, lhs, rhs, gap, source);
}

namespace {

MCReport strong_doob_impl(const Ensemble& source, double p, const char* id) {
    require_source(source, "verify_strong_doob");
    require_exponent(p, "verify_strong_doob");
    const double q = p / (p - 1.0);
    const double qp = std::pow(q, p);
    auto lhs_f = [p](const PathFunctionals& f) { return std::pow(f.max_value, p); };
    auto rhs_f = [=](const PathFunctionals& f) {
        return qp * std::pow(f.terminal, p) - q * std::pow(f.start, p);
    };
    const Estimate lhs = expect(source, lhs_f);
    const Estimate rhs = expect(source, rhs_f);
    const Estimate gap =
        expect(source, [&](const PathFunctionals& f) { return rhs_f(f) - lhs_f(f); });
    return make_report(id, p, lhs, rhs, gap, source);
}

} // namespace

MCReport verify_strong_doob(const Ensemble& source, double p) {
    return strong_doob_impl(source, p, "strong-doob");
}

MCReport verify_cbp(const Ensemble& source) {
    return strong_doob_impl(source, 2.0, "cbp");
}

MCReport verify_optimal1(const Ensemble& source) {
    require_source(source, "verify_optimal1");
    const Estimate lhs = norm_p(source, [](const PathFunctionals& f) { return f.max_value; }, 2.0);
    const Estimate nt = norm_p(source, [](const PathFunctionals& f) { return f.terminal; }, 2.0);
    const Estimate nd = norm_p(
        source, [](const PathFunctionals& f) { return f.terminal - f.start; }, 2.0);
    const Estimate rhs{nt.value + nd.value,
                       std::sqrt(nt.stderr * nt.stderr + nd.stderr * nd.stderr)};
    return make_report("optimal1", 2.0, lhs, rhs, combine_gap(lhs, rhs), source);
}

MCReport verify_sharp_doob_lp(const Ensemble& source, double p) {
    require_source(source, "verify_sharp_doob_lp");
    require_exponent(p, "verify_sharp_doob_lp");
    const Estimate lhs = norm_p(source, [](const PathFunctionals& f) { return f.max_value; }, p);
    if (lhs.value <= 0.0)
        throw std::invalid_argument("verify_sharp_doob_lp: identically-zero source (needs S != 0)");
    const Estimate nt = norm_p(source, [](const PathFunctionals& f) { return f.terminal; }, p);
    const Estimate m0 =
        expect(source, [p](const PathFunctionals& f) { return std::pow(f.start, p); });

    const double q = p / (p - 1.0);
    const double denom = std::pow(lhs.value, p - 1.0);
    const double rhs_val = q * nt.value - m0.value / ((p - 1.0) * denom);
    // delta method, treating the three moment estimates as independent
    const double d_dm0 = 1.0 / ((p - 1.0) * denom);
    const double d_dlhs = m0.value / denom / lhs.value; // d/dlhs of m0/((p-1) lhs^(p-1))
    const double rhs_se = std::sqrt(q * q * nt.stderr * nt.stderr +
                                    d_dm0 * d_dm0 * m0.stderr * m0.stderr +
                                    d_dlhs * d_dlhs * lhs.stderr * lhs.stderr);
    const Estimate rhs{rhs_val, rhs_se};

    MCReport r = make_report("sharp-doob-lp", p, lhs, rhs, combine_gap(lhs, rhs), source);
    if (p == 2.0) {
        r.psi_lhs = 0.5 * lhs.value + m0.value / (2.0 * lhs.value);
        r.psi_rhs = nt.value;
    }
    return r;
}

MCReport verify_quallp(const Ensemble& source, double p) {
    require_source(source, "verify_quallp");
    require_exponent(p, "verify_quallp");
    if (!source.exact || source.compensator.size() != source.size())
        throw std::invalid_argument(
            "verify_quallp: tree model required (the compensator A_T comes from the exact "
            "Doob decomposition)");
    const double q = p / (p - 1.0);
    std::vector<double> gaps(source.size()), lhss(source.size()), rhss(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        const PathFunctionals& f = source.functionals[i];
        const double w = source.weights[i];
        const double lhs_i = std::pow(f.max_value, p);
        const double rhs_i = -q * std::pow(f.start, p - 1.0) * source.compensator[i] +
                             q * std::pow(f.max_value, p - 1.0) * f.terminal -
                             std::pow(f.start, p) / (p - 1.0);
        lhss[i] = w * lhs_i;
        rhss[i] = w * rhs_i;
        gaps[i] = w * (rhs_i - lhs_i);
    }
    const Estimate lhs{batch::pairwise_sum(lhss), 0.0};
    const Estimate rhs{batch::pairwise_sum(rhss), 0.0};
    const Estimate gap{batch::pairwise_sum(gaps), 0.0};
    return make_report("quallp", p, lhs, rhs, gap, source);
}

double psi_eval(double x, double x0, double p) {
    if (!(x0 > 0.0) || !(x >= x0))
        throw std::invalid_argument("psi_eval: needs x >= x0 > 0");
    require_exponent(p, "psi_eval");
    return (p - 1.0) / p * x + std::pow(x0, p) / (p * std::pow(x, p - 1.0));
}

namespace {

// real roots of t^3 + a t + b = 0 (all-real branch handled by the trig form)
void depressed_cubic_roots(double a, double b, std::vector<double>& out) {
    out.clear();
    const double disc = b * b / 4.0 + a * a * a / 27.0;
    if (disc <= 0.0) {
        const double r = 2.0 * std::sqrt(-a / 3.0);
        const double arg = std::clamp(3.0 * b / (a * r), -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            out.push_back(r * std::cos(theta / 3.0 - 2.0 * std::numbers::pi * k / 3.0));
    } else {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-b / 2.0 + s);
        const double v = std::cbrt(-b / 2.0 - s);
        out.push_back(u + v);
    }
}

double invert_p3(double y, double x0) {
    // 2x^3 - 3y x^2 + x0^3 = 0, largest root; depressed via x = u + y/2
    const double a = -0.75 * y * y;
    const double b = 0.5 * x0 * x0 * x0 - 0.25 * y * y * y;
    std::vector<double> roots;
    depressed_cubic_roots(a, b, roots);
    double best = -std::numeric_limits<double>::infinity();
    for (double u : roots) best = std::max(best, u + 0.5 * y);
    return best;
}

double invert_p4(double y, double x0) {
    // 3x^4 - 4y x^3 + x0^4 = 0, largest root; depressed via x = z + y/3:
    // z^4 + P z^2 + Q z + R = 0
    const double P = -2.0 / 3.0 * y * y;
    const double Q = -8.0 / 27.0 * y * y * y;
    const double R = (std::pow(x0, 4) - std::pow(y, 4) / 9.0) / 3.0;
    // Ferrari resolvent: 8m^3 + 8P m^2 + (2P^2 - 8R) m - Q^2 = 0
    // in depressed form m = t - P/3
    const double c2 = P;
    const double c1 = (2.0 * P * P - 8.0 * R) / 8.0;
    const double c0 = -Q * Q / 8.0;
    const double a = c1 - c2 * c2 / 3.0;
    const double b = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    std::vector<double> ms;
    depressed_cubic_roots(a, b, ms);
    double best = -std::numeric_limits<double>::infinity();
    for (double t : ms) {
        const double m = t - c2 / 3.0;
        if (!(m > 0.0)) continue;
        const double s = std::sqrt(2.0 * m);
        const double shift = Q / (4.0 * m);
        // (z^2 + s z + (P/2 + m - s*shift)) (z^2 - s z + (P/2 + m + s*shift))
        for (int sign = -1; sign <= 1; sign += 2) {
            const double bq = sign * s;
            const double cq = P / 2.0 + m - sign * s * shift;
            const double disc = bq * bq - 4.0 * cq;
            if (disc < 0.0) continue;
            const double sq = std::sqrt(disc);
            best = std::max({best, (-bq + sq) / 2.0, (-bq - sq) / 2.0});
        }
    }
    return best + y / 3.0;
}

} // namespace

double psi_invert(double y, double x0, double p) {
    if (!(x0 > 0.0)) throw std::invalid_argument("psi_invert: needs x0 > 0");
    require_exponent(p, "psi_invert");
    if (y < x0 * (1.0 - 1e-12))
        throw std::invalid_argument("psi_invert: y below x0, outside the range of psi");
    if (y <= x0) return x0;

    const double q = p / (p - 1.0);
    double x;
    if (p == 2.0) {
        x = y + std::sqrt(std::max(y * y - x0 * x0, 0.0));
    } else if (p == 3.0) {
        x = invert_p3(y, x0);
    } else if (p == 4.0) {
        x = invert_p4(y, x0);
    } else {
        double lo = std::max(x0, y), hi = q * y;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (psi_eval(mid, x0, p) < y ? lo : hi) = mid;
        }
        x = 0.5 * (lo + hi);
    }

    // Newton polish; psi' vanishes at x0, so only step where it is safe
    x = std::clamp(x, std::max(x0, y), q * y);
    for (int it = 0; it < 3; ++it) {
        const double deriv = (p - 1.0) / p * (1.0 - std::pow(x0 / x, p));
        if (!(deriv > 1e-12)) break;
        const double step = (psi_eval(x, x0, p) - y) / deriv;
        const double next = std::clamp(x - step, std::max(x0, y), q * y);
        if (next == x) break;
        x = next;
    }
    return x;
}

} // namespace maxineq
