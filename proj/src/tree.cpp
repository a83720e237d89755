#include "maxineq/tree.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maxineq {

namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

std::string node_name(std::size_t level, std::size_t node) {
    return "level " + std::to_string(level) + " node " + std::to_string(node);
}

} // namespace

void TreeModel::validate() const {
    if (levels.empty() || levels.front().size() != 1)
        throw std::invalid_argument("TreeModel: need a single root node at level 0");
    for (std::size_t l = 0; l < levels.size(); ++l) {
        if (levels[l].empty())
            throw std::invalid_argument("TreeModel: empty level " + std::to_string(l));
        for (std::size_t n = 0; n < levels[l].size(); ++n) {
            const Node& node = levels[l][n];
            if (!std::isfinite(node.value) || node.value < 0.0)
                throw std::invalid_argument("TreeModel: bad value at " + node_name(l, n));
            const bool last = l + 1 == levels.size();
            if (last) {
                if (!node.children.empty())
                    throw std::invalid_argument("TreeModel: leaf with children at " +
                                                node_name(l, n));
                continue;
            }
            if (node.children.empty())
                throw std::invalid_argument("TreeModel: interior node without children at " +
                                            node_name(l, n));
            double total = 0.0;
            for (const Edge& e : node.children) {
                if (e.node >= levels[l + 1].size())
                    throw std::invalid_argument("TreeModel: child index out of range at " +
                                                node_name(l, n));
                if (!(e.prob >= 0.0) || !std::isfinite(e.prob))
                    throw std::invalid_argument("TreeModel: bad probability at " +
                                                node_name(l, n));
                total += e.prob;
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw std::invalid_argument("TreeModel: probabilities sum to " +
                                            std::to_string(total) + " at " + node_name(l, n));
        }
    }
}

double TreeModel::drift(std::size_t level, std::size_t node) const {
    const Node& v = levels[level][node];
    double mean = 0.0;
    for (const Edge& e : v.children) mean += e.prob * levels[level + 1][e.node].value;
    return mean - v.value;
}

std::pair<std::size_t, std::size_t> TreeModel::submartingale_violation(double tol) const {
    for (std::size_t l = 0; l + 1 < levels.size(); ++l)
        for (std::size_t n = 0; n < levels[l].size(); ++n)
            if (drift(l, n) < -tol) return {l, n};
    return {kNpos, kNpos};
}

bool TreeModel::is_submartingale(double tol) const {
    return submartingale_violation(tol).first == kNpos;
}

bool TreeModel::is_martingale(double tol) const {
    for (std::size_t l = 0; l + 1 < levels.size(); ++l)
        for (std::size_t n = 0; n < levels[l].size(); ++n)
            if (std::abs(drift(l, n)) > tol) return false;
    return true;
}

bool TreeModel::has_unique_parents() const {
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
        std::vector<int> refs(levels[l + 1].size(), 0);
        for (const Node& node : levels[l])
            for (const Edge& e : node.children) ++refs[e.node];
        for (int r : refs)
            if (r != 1) return false;
    }
    return true;
}

std::size_t TreeModel::leaf_path_count() const {
    // forward pass counting paths into each node, saturating on overflow
    std::vector<double> in(levels.front().size(), 1.0);
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
        std::vector<double> next(levels[l + 1].size(), 0.0);
        for (std::size_t n = 0; n < levels[l].size(); ++n)
            for (const TreeModel::Edge& e : levels[l][n].children) next[e.node] += in[n];
        in = std::move(next);
    }
    double total = 0.0;
    for (double x : in) total += x;
    return total > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(total);
}

std::vector<WeightedPath> enumerate_paths(const TreeModel& model, std::size_t max_paths) {
    model.validate();
    if (model.leaf_path_count() > max_paths)
        throw std::invalid_argument(
            "enumerate_paths: model exceeds " + std::to_string(max_paths) +
            " leaf paths; use Monte Carlo sampling instead");

    std::vector<WeightedPath> out;
    std::vector<double> values;
    values.reserve(model.levels.size());

    // depth-first over (level, node, accumulated probability)
    struct Frame {
        std::size_t level, node, edge;
        double prob;
    };
    std::vector<Frame> stack{{0, 0, 0, 1.0}};
    values.push_back(model.root_value());
    while (!stack.empty()) {
        Frame& f = stack.back();
        const TreeModel::Node& node = model.levels[f.level][f.node];
        if (node.children.empty()) {
            out.push_back({Path(values), f.prob});
            stack.pop_back();
            values.pop_back();
            continue;
        }
        if (f.edge == node.children.size()) {
            stack.pop_back();
            values.pop_back();
            continue;
        }
        const TreeModel::Edge& e = node.children[f.edge++];
        // copy out of the frame first: pushing may reallocate the stack
        const std::size_t next_level = f.level + 1;
        const double next_prob = f.prob * e.prob;
        const std::size_t next_node = e.node;
        values.push_back(model.levels[next_level][next_node].value);
        stack.push_back({next_level, next_node, 0, next_prob});
    }
    return out;
}

DoobDecomposition doob_decompose(const TreeModel& model) {
    model.validate();
    const auto [bl, bn] = model.submartingale_violation();
    if (bl != kNpos)
        throw std::invalid_argument("doob_decompose: not a submartingale, drift " +
                                    std::to_string(model.drift(bl, bn)) + " at " +
                                    node_name(bl, bn));
    if (!model.has_unique_parents())
        throw std::invalid_argument(
            "doob_decompose: recombining tree; the compensator is path-dependent unless "
            "every node has a unique parent");

    DoobDecomposition d;
    d.martingale.resize(model.levels.size());
    d.compensator.resize(model.levels.size());
    for (std::size_t l = 0; l < model.levels.size(); ++l) {
        d.martingale[l].resize(model.levels[l].size());
        d.compensator[l].resize(model.levels[l].size());
    }
    d.compensator[0][0] = 0.0;
    d.martingale[0][0] = model.root_value();
    for (std::size_t l = 0; l + 1 < model.levels.size(); ++l) {
        for (std::size_t n = 0; n < model.levels[l].size(); ++n) {
            // A_{n+1} is fixed one step ahead: same increment for every child
            const double anext = d.compensator[l][n] + model.drift(l, n);
            for (const TreeModel::Edge& e : model.levels[l][n].children) {
                d.compensator[l + 1][e.node] = anext;
                d.martingale[l + 1][e.node] =
                    model.levels[l + 1][e.node].value - anext;
            }
        }
    }
    return d;
}

std::vector<double> compensator_at_leaves(const TreeModel& model,
                                          const DoobDecomposition& decomposition) {
    const auto paths = enumerate_paths(model);
    // leaves in enumeration order: walk the same DFS and read A at the leaf.
    // With unique parents the leaf node identifies the path, so matching the
    // terminal value level by level is enough.
    std::vector<double> out;
    out.reserve(paths.size());
    // rebuild leaf indices by DFS identical to enumerate_paths
    struct Frame {
        std::size_t level, node, edge;
    };
    std::vector<Frame> stack{{0, 0, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        const TreeModel::Node& node = model.levels[f.level][f.node];
        if (node.children.empty()) {
            out.push_back(decomposition.compensator[f.level][f.node]);
            stack.pop_back();
            continue;
        }
        if (f.edge == node.children.size()) {
            stack.pop_back();
            continue;
        }
        const TreeModel::Edge& e = node.children[f.edge++];
        const std::size_t next_level = f.level + 1;
        stack.push_back({next_level, e.node, 0});
    }
    return out;
}

} // namespace maxineq
