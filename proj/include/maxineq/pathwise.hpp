#pragma once

#include "maxineq/path.hpp"

#include <optional>
#include <string>

namespace maxineq {

enum class PathInequality { L2, Lp, L1 };

const char* to_string(PathInequality ineq);

// Verdict for one deterministic inequality on one path. slack = rhs - lhs,
// holds <=> slack >= -eps with eps = tol_scale * 1e-9 * (1 + |lhs| + |rhs|).
// Reports with non-finite sides are flagged degenerate (only the L1 checker
// produces them, when the path starts at zero).
struct PathIneqReport {
    PathInequality inequality;
    std::optional<double> p; // exponent for Lp, nullopt for L2/L1
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
    bool degenerate = false;
};

double check_tolerance(double lhs, double rhs, double tol_scale = 1.0);

// Smallest exponent accepted by the Lp checkers; p/(p-1) blows up below it.
inline constexpr double kMinExponent = 1.0 + 1e-6;

// max_T^2 + 4 sum max_n (s_{n+1}-s_n) <= 4 s_T^2, valid for real paths.
PathIneqReport check_path_l2(const Path& path, double tol_scale = 1.0);

// max_T^p <= sum h(max_i)(s_{i+1}-s_i) - p/(p-1) s_0^p + (p/(p-1))^p s_T^p
// with h(x) = -p^2/(p-1) x^(p-1); requires a non-negative path and p > 1.
PathIneqReport check_path_lp(const Path& path, double p, double tol_scale = 1.0);

// max_T <= e/(e-1) (sum -log(max_i)(s_{i+1}-s_i) + s_T log s_T + s_0(1 - log s_0)),
// requires non-negative path; s_0 = 0 yields a degenerate report (the
// integrand -log(0) is infinite; the inequality holds in the limit).
PathIneqReport check_path_l1(const Path& path, double tol_scale = 1.0);

// Gain of the strategy that holds h(max_n) units over (n, n+1].
double hedge_value(const Path& path, const std::function<double(double)>& h);

// Hedging reading of the Lp path inequality: gain of the h-strategy plus the
// European-option leg (p/(p-1))^p s_T^p minus the premium (p/(p-1)) s_0^p
// dominates the lookback claim max_T^p. slack is the super-replication
// surplus and equals check_path_lp's slack.
PathIneqReport super_replication_check(const Path& path, double p, double tol_scale = 1.0);

// g(c) = (p-1) - p^2/(p-1) c + (p/(p-1))^p c^p, the scalar inequality behind
// the Lp checker; non-negative with minimum 0 at c = (p-1)/p.
double eval_g(double c, double p);

} // namespace maxineq
