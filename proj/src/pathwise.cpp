#include "maxineq/pathwise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_non_negative(const Path& path, const char* op) {
    const std::size_t bad = path.first_negative();
    if (bad != Path::npos)
        throw std::invalid_argument(std::string(op) + ": negative value at index " +
                                    std::to_string(bad));
}

void require_exponent(double p, const char* op) {
    if (!(p > 1.0))
        throw std::invalid_argument(std::string(op) + ": requires p > 1 (use the L1 checker for p = 1)");
    if (p < kMinExponent)
        throw std::invalid_argument(std::string(op) +
                                    ": p too close to 1, p/(p-1) overflows; use the L1 checker");
}

PathIneqReport finish(PathIneqReport r, double tol_scale) {
    r.slack = r.rhs - r.lhs;
    if (std::isfinite(r.lhs) && std::isfinite(r.rhs)) {
        r.holds = r.slack >= -check_tolerance(r.lhs, r.rhs, tol_scale);
    } else {
        r.holds = r.slack > 0.0; // +inf slack: holds trivially
        r.degenerate = true;
    }
    return r;
}

// x log x with the limit convention 0 log 0 = 0
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

} // namespace

const char* to_string(PathInequality ineq) {
    switch (ineq) {
        case PathInequality::L2: return "path-l2";
        case PathInequality::Lp: return "path-lp";
        case PathInequality::L1: return "path-l1";
    }
    return "?";
}

double check_tolerance(double lhs, double rhs, double tol_scale) {
    return tol_scale * 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs));
}

PathIneqReport check_path_l2(const Path& path, double tol_scale) {
    const auto s = path.values();
    const auto m = path.running_max();
    double sum = 0.0;
    for (std::size_t i = 0; i < path.steps(); ++i)
        sum += m[i] * (s[i + 1] - s[i]);

    PathIneqReport r;
    r.inequality = PathInequality::L2;
    r.lhs = m.back() * m.back() + 4.0 * sum;
    r.rhs = 4.0 * s.back() * s.back();
    return finish(r, tol_scale);
}

PathIneqReport check_path_lp(const Path& path, double p, double tol_scale) {
    require_exponent(p, "check_path_lp");
    require_non_negative(path, "check_path_lp");

    const auto s = path.values();
    const auto m = path.running_max();
    const double q = p / (p - 1.0);
    const double hcoef = -p * p / (p - 1.0);

    double sum = 0.0;
    for (std::size_t i = 0; i < path.steps(); ++i)
        sum += hcoef * std::pow(m[i], p - 1.0) * (s[i + 1] - s[i]);

    PathIneqReport r;
    r.inequality = PathInequality::Lp;
    r.p = p;
    r.lhs = std::pow(m.back(), p);
    r.rhs = sum - q * std::pow(s.front(), p) + std::pow(q, p) * std::pow(s.back(), p);
    return finish(r, tol_scale);
}

PathIneqReport check_path_l1(const Path& path, double tol_scale) {
    require_non_negative(path, "check_path_l1");

    const auto s = path.values();
    const auto m = path.running_max();
    const double e = std::exp(1.0);
    const double c = e / (e - 1.0);

    PathIneqReport r;
    r.inequality = PathInequality::L1;
    r.lhs = m.back();

    // s_0 = 0 makes -log(max_i) infinite while the path sits at zero. The
    // first positive increment then contributes +inf to the sum; an
    // identically-zero path has no increments at all and both sides vanish.
    double sum = 0.0;
    bool infinite = false;
    for (std::size_t i = 0; i < path.steps(); ++i) {
        const double ds = s[i + 1] - s[i];
        if (m[i] == 0.0) {
            if (ds > 0.0) infinite = true;
            // ds == 0 contributes nothing (path still at zero)
        } else {
            sum += -std::log(m[i]) * ds;
        }
    }

    if (infinite) {
        r.rhs = kInf;
        return finish(r, tol_scale);
    }
    r.rhs = c * (sum + xlogx(s.back()) + s.front() * (1.0 - std::log(s.front())));
    if (s.front() == 0.0) {
        // identically-zero path: rhs reduces to 0 via the 0 log 0 convention
        r.rhs = 0.0;
        r.slack = 0.0;
        r.holds = true;
        r.degenerate = true;
        return r;
    }
    return finish(r, tol_scale);
}

double hedge_value(const Path& path, const std::function<double(double)>& h) {
    return summation_by_parts(path, h).lhs;
}

PathIneqReport super_replication_check(const Path& path, double p, double tol_scale) {
    require_exponent(p, "super_replication_check");
    require_non_negative(path, "super_replication_check");

    const double q = p / (p - 1.0);
    const double hcoef = -p * p / (p - 1.0);
    const double gain = hedge_value(path, [=](double x) { return hcoef * std::pow(x, p - 1.0); });

    PathIneqReport r;
    r.inequality = PathInequality::Lp;
    r.p = p;
    r.lhs = std::pow(path.max(), p);
    r.rhs = gain + std::pow(q, p) * std::pow(path.back(), p) - q * std::pow(path.front(), p);
    return finish(r, tol_scale);
}

double eval_g(double c, double p) {
    if (!(p > 1.0))
        throw std::invalid_argument("eval_g: requires p > 1");
    if (c < 0.0)
        throw std::invalid_argument("eval_g: requires c >= 0");
    const double q = p / (p - 1.0);
    return (p - 1.0) - p * p / (p - 1.0) * c + std::pow(q, p) * std::pow(c, p);
}

} // namespace maxineq
