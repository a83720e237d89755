#include "maxineq/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace maxineq {

namespace {

// rng stream ids; keep distinct across the project so one seed never feeds
// two purposes with the same counters
constexpr std::uint64_t kStreamSampler = 1;

struct Stepper {
    const PathSampler& s;
    CounterRng rng;
    double dt, sdt;

    explicit Stepper(const PathSampler& sampler)
        : s(sampler), rng{sampler.seed, kStreamSampler},
          dt(sampler.horizon / static_cast<double>(sampler.steps)), sdt(std::sqrt(dt)) {}

    double next(double prev, std::uint64_t index, std::uint64_t step,
                std::size_t& tree_node) const {
        switch (s.model) {
            case PathSampler::Model::Gbm: {
                const double z = rng.normal(index, step);
                return prev * std::exp(s.sigma * sdt * z +
                                       (s.mu - 0.5 * s.sigma * s.sigma) * dt);
            }
            case PathSampler::Model::Walk:
                return prev + s.drift * dt + sdt * rng.normal(index, step);
            case PathSampler::Model::WalkReflected:
                return std::abs(prev + s.drift * dt + sdt * rng.normal(index, step));
            case PathSampler::Model::WalkAbsorbed: {
                if (prev == 0.0) return 0.0;
                const double x = prev + s.drift * dt + sdt * rng.normal(index, step);
                return x > 0.0 ? x : 0.0;
            }
            case PathSampler::Model::WalkPm1:
                return prev + (rng.uniform(index, step) < 0.5 ? -1.0 : 1.0);
            case PathSampler::Model::Tree: {
                const auto& level = s.tree->levels[step];
                const auto& node = level[tree_node];
                double u = rng.uniform(index, step);
                for (const TreeModel::Edge& e : node.children) {
                    u -= e.prob;
                    if (u <= 0.0) {
                        tree_node = e.node;
                        break;
                    }
                }
                // u > 0 after the loop only through rounding; keep the last child
                if (u > 0.0) tree_node = node.children.back().node;
                return s.tree->levels[step + 1][tree_node].value;
            }
        }
        throw std::logic_error("sample step: unknown model");
    }
};

} // namespace

void PathSampler::validate() const {
    if (model == Model::Tree) {
        if (!tree) throw std::invalid_argument("PathSampler: tree model without a tree");
        tree->validate();
        return;
    }
    if (steps == 0) throw std::invalid_argument("PathSampler: steps must be >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("PathSampler: horizon must be > 0");
    if (!std::isfinite(start)) throw std::invalid_argument("PathSampler: bad start value");
    if (model == Model::Gbm && (!(sigma >= 0.0) || start < 0.0))
        throw std::invalid_argument("PathSampler: gbm needs sigma >= 0 and start >= 0");
}

bool PathSampler::non_negative() const {
    switch (model) {
        case Model::Tree:
        case Model::Gbm:
        case Model::WalkReflected:
        case Model::WalkAbsorbed: return true;
        case Model::Walk:
        case Model::WalkPm1: return false;
    }
    return false;
}

bool PathSampler::is_martingale() const {
    switch (model) {
        case Model::Tree: return tree && tree->is_martingale();
        case Model::Gbm: return mu == 0.0;
        case Model::Walk: return drift == 0.0;
        case Model::WalkPm1: return true;
        // reflection/absorption only push upward, never make a martingale
        case Model::WalkReflected:
        case Model::WalkAbsorbed: return false;
    }
    return false;
}

bool PathSampler::is_submartingale() const {
    switch (model) {
        case Model::Tree: return tree && tree->is_submartingale();
        case Model::Gbm: return mu >= 0.0;
        case Model::Walk: return drift >= 0.0;
        case Model::WalkPm1: return true;
        case Model::WalkReflected:
        case Model::WalkAbsorbed: return drift >= 0.0;
    }
    return false;
}

PathSampler::Model PathSampler::parse_model(const std::string& name) {
    if (name == "tree") return Model::Tree;
    if (name == "gbm") return Model::Gbm;
    if (name == "walk") return Model::Walk;
    if (name == "walk-reflected") return Model::WalkReflected;
    if (name == "walk-absorbed") return Model::WalkAbsorbed;
    if (name == "walk-pm1") return Model::WalkPm1;
    throw std::invalid_argument("unknown model '" + name +
                                "' (tree|gbm|walk|walk-reflected|walk-absorbed|walk-pm1)");
}

const char* PathSampler::model_name(Model m) {
    switch (m) {
        case Model::Tree: return "tree";
        case Model::Gbm: return "gbm";
        case Model::Walk: return "walk";
        case Model::WalkReflected: return "walk-reflected";
        case Model::WalkAbsorbed: return "walk-absorbed";
        case Model::WalkPm1: return "walk-pm1";
    }
    return "?";
}

Path sample_path(const PathSampler& sampler, std::uint64_t index) {
    sampler.validate();
    const Stepper step(sampler);
    const std::size_t n_steps =
        sampler.model == PathSampler::Model::Tree ? sampler.tree->depth() : sampler.steps;
    std::vector<double> values;
    values.reserve(n_steps + 1);
    std::size_t tree_node = 0;
    double x = sampler.model == PathSampler::Model::Tree ? sampler.tree->root_value()
                                                         : sampler.start;
    values.push_back(x);
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        x = step.next(x, index, k, tree_node);
        values.push_back(x);
    }
    return Path(std::move(values));
}

PathFunctionals sample_functionals(const PathSampler& sampler, std::uint64_t index) {
    sampler.validate();
    const Stepper step(sampler);
    const std::size_t n_steps =
        sampler.model == PathSampler::Model::Tree ? sampler.tree->depth() : sampler.steps;
    std::size_t tree_node = 0;
    double x = sampler.model == PathSampler::Model::Tree ? sampler.tree->root_value()
                                                         : sampler.start;
    PathFunctionals f{x, x, x};
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        x = step.next(x, index, k, tree_node);
        if (x > f.max_value) f.max_value = x;
    }
    f.terminal = x;
    return f;
}

DriftEstimate empirical_submartingale_drift(std::span<const Path> paths) {
    if (paths.size() < 2)
        throw std::invalid_argument("empirical_submartingale_drift: need at least 2 paths");
    const std::size_t T = paths.front().steps();
    for (const Path& p : paths)
        if (p.steps() != T)
            throw std::invalid_argument("empirical_submartingale_drift: unequal path lengths");

    DriftEstimate est;
    est.n_paths = paths.size();
    est.per_step_mean.assign(T, 0.0);
    double sum = 0.0, sumsq = 0.0;
    for (const Path& p : paths) {
        const auto s = p.values();
        const auto m = p.running_max();
        double total = 0.0;
        for (std::size_t k = 0; k < T; ++k) {
            const double term = m[k] * (s[k + 1] - s[k]);
            est.per_step_mean[k] += term;
            total += term;
        }
        sum += total;
        sumsq += total * total;
    }
    const double n = static_cast<double>(paths.size());
    for (double& v : est.per_step_mean) v /= n;
    est.total_mean = sum / n;
    const double var = (sumsq - sum * sum / n) / (n - 1.0);
    est.total_stderr = std::sqrt(std::max(var, 0.0) / n);
    return est;
}

} // namespace maxineq
