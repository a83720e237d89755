#pragma once

#include "maxineq/path.hpp"

#include <cstdint>
#include <vector>

namespace maxineq {

// Finite-horizon Markov tree with per-node transition probabilities. Node
// values are non-negative; probabilities out of each non-leaf node sum to 1.
// Children reference node indices in the next level, so recombining lattices
// are representable; the Doob decomposition additionally needs every node to
// have a unique parent (the compensator is path-dependent otherwise).
struct TreeModel {
    struct Edge {
        std::size_t node; // index into the next level
        double prob;
    };
    struct Node {
        double value = 0.0;
        std::vector<Edge> children;
    };

    std::vector<std::vector<Node>> levels;

    double root_value() const { return levels.front().front().value; }
    std::size_t depth() const { return levels.size() - 1; } // T

    void validate() const;

    // one-step drift sum p_child * value_child - value_node (node must not be a leaf)
    double drift(std::size_t level, std::size_t node) const;

    bool is_submartingale(double tol = 1e-12) const;
    bool is_martingale(double tol = 1e-12) const;

    // index of a node violating the submartingale property, as (level, node),
    // or {npos, npos}
    std::pair<std::size_t, std::size_t> submartingale_violation(double tol = 1e-12) const;

    // true when every node of levels 1..T is referenced by exactly one parent
    bool has_unique_parents() const;

    std::size_t leaf_path_count() const;
};

struct WeightedPath {
    Path path;
    double probability;
};

// All root-to-leaf paths with product probabilities. Guarded at 10^6 paths;
// larger models must be sampled instead.
std::vector<WeightedPath> enumerate_paths(const TreeModel& model,
                                          std::size_t max_paths = 1'000'000);

// Doob decomposition S = M + A on a non-recombining submartingale tree:
// per-node martingale part and predictable non-decreasing compensator with
// A = 0 at the root.
struct DoobDecomposition {
    std::vector<std::vector<double>> martingale;  // M_n per node
    std::vector<std::vector<double>> compensator; // A_n per node
};

DoobDecomposition doob_decompose(const TreeModel& model);

// Compensator value at the leaf of an enumerated path (same order as
// enumerate_paths); requires unique parents.
std::vector<double> compensator_at_leaves(const TreeModel& model,
                                          const DoobDecomposition& decomposition);

} // namespace maxineq
