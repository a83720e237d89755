#pragma once

#include "maxineq/azema_yor.hpp"
#include "maxineq/batch.hpp"
#include "maxineq/sampler.hpp"
#include "maxineq/tree.hpp"

#include <optional>
#include <string>

namespace maxineq {

enum class Verdict { Holds, HoldsWithEquality, Violated, Inconclusive };

const char* to_string(Verdict v);

// One expectation-level inequality on one source. Exact reports come from
// tree enumeration and carry zero stderr; Monte Carlo reports carry plug-in
// moment estimates with delta-method standard errors. The verdict uses the
// stderr of the gap itself (per-sample differences where the two sides share
// samples), with k = 4: a one-sided theorem should essentially never trip it.
struct MCReport {
    std::string inequality;
    std::optional<double> p;
    double lhs = 0.0;
    double lhs_stderr = 0.0;
    double rhs = 0.0;
    double rhs_stderr = 0.0;
    double gap = 0.0; // rhs - lhs
    Verdict verdict = Verdict::Holds;
    std::size_t n = 0;
    bool exact = false;

    // sharp-doob-lp at p = 2 carries the rearranged psi form as a cross-check
    std::optional<double> psi_lhs;
    std::optional<double> psi_rhs;
};

// Weighted collection of per-path functionals: exact (tree enumeration,
// probability weights) or Monte Carlo (uniform weights). The compensator
// column exists only for decomposable trees.
struct Ensemble {
    std::vector<PathFunctionals> functionals;
    std::vector<double> weights;     // empty for Monte Carlo
    std::vector<double> compensator; // A_T per path, tree sources only
    bool exact = false;
    bool non_negative = false;
    bool submartingale = false;
    bool martingale = false;
    std::size_t n_excluded = 0; // capped stopped-BM samples dropped

    std::size_t size() const { return functionals.size(); }

    static Ensemble from_tree(const TreeModel& model);
    static Ensemble from_sampler(const PathSampler& sampler, std::size_t n,
                                 batch::Mode mode = batch::Mode::Parallel);
    static Ensemble from_stopped_bm(const AlphaConfig& config, std::size_t n,
                                    batch::Mode mode = batch::Mode::Parallel);
};

struct Estimate {
    double value = 0.0;
    double stderr = 0.0;
};

// E[transform(path functionals)] over the ensemble
Estimate expect(const Ensemble& source,
                const std::function<double(const PathFunctionals&)>& transform);

// ||transform||_p via the p-th moment with a delta-method stderr
Estimate norm_p(const Ensemble& source,
                const std::function<double(const PathFunctionals&)>& transform, double p);

// --- suites -------------------------------------------------------------------

// E[max^p] <= (p/(p-1))^p E[S_T^p]
MCReport verify_doob_lp(const Ensemble& source, double p);

// E[max] <= e/(e-1) (E[S_T log S_T] + E[S_0 (1 - log S_0)])
MCReport verify_doob_l1(const Ensemble& source);

// E[max^p] <= (p/(p-1))^p E[S_T^p] - p/(p-1) E[S_0^p]
MCReport verify_strong_doob(const Ensemble& source, double p);

// E[max^2] <= 4 E[S_T^2] - 2 E[S_0^2]; strong Doob pinned at p = 2, kept as a
// separately named suite
MCReport verify_cbp(const Ensemble& source);

// ||max||_2 <= ||S_T||_2 + ||S_T - S_0||_2
MCReport verify_optimal1(const Ensemble& source);

// ||max||_p <= p/(p-1) ||S_T||_p - 1/(p-1) E[S_0^p] / ||max||_p^(p-1)
MCReport verify_sharp_doob_lp(const Ensemble& source, double p);

// E[max^p] <= -p/(p-1) E[S_0^(p-1) A_T] + p/(p-1) E[max^(p-1) S_T]
//             - 1/(p-1) E[S_0^p]; exact tree sources only
MCReport verify_quallp(const Ensemble& source, double p);

// --- psi ------------------------------------------------------------------------

// psi(x) = (p-1)/p x + x0^p / (p x^(p-1)), strictly increasing on [x0, inf)
double psi_eval(double x, double x0, double p);

// inverse of psi on [x0, inf): closed form for p in {2, 3, 4}, monotone
// bisection otherwise; round-trips to 1e-12
double psi_invert(double y, double x0, double p = 2.0);

} // namespace maxineq
