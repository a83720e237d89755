// Batch front end: pathwise checks, verification suites, sharpness sweeps,
// convergence diagnostics. Emits JSON lines (reports) or CSV (sweep tables).
// Exit codes: 0 all holds, 1 some violated/inconclusive/failed check,
// 2 usage or validation error.
#include "maxineq/batch.hpp"
#include "maxineq/io.hpp"
#include "maxineq/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace maxineq;

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string out;
    std::string format; // "json" or "csv"; empty = per-command default
    double tol_scale = 1.0;
};

// all output is assembled in memory and written once, so runs are
// byte-comparable and --out behaves exactly like stdout redirection
int emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << g.out << "\n";
        return 2;
    }
    f << text;
    return 0;
}

std::string format_or(const GlobalOpts& g, const char* fallback) {
    return g.format.empty() ? fallback : g.format;
}

std::string report_csv_header() {
    return "inequality,p,lhs,lhs_stderr,rhs,rhs_stderr,gap,verdict,n,exact";
}

std::string to_csv(const MCReport& r) {
    std::ostringstream os;
    os << r.inequality << ',' << (r.p ? io::format_double(*r.p) : "") << ','
       << io::format_double(r.lhs) << ',' << io::format_double(r.lhs_stderr) << ','
       << io::format_double(r.rhs) << ',' << io::format_double(r.rhs_stderr) << ','
       << io::format_double(r.gap) << ',' << to_string(r.verdict) << ',' << r.n << ','
       << (r.exact ? "true" : "false");
    return os.str();
}

std::string to_csv(const PathIneqReport& r) {
    std::ostringstream os;
    os << to_string(r.inequality) << ',' << (r.p ? io::format_double(*r.p) : "") << ','
       << io::format_double(r.lhs) << ',' << io::format_double(r.rhs) << ','
       << io::format_double(r.slack) << ',' << (r.holds ? "true" : "false") << ','
       << (r.degenerate ? "true" : "false");
    return os.str();
}

// ---------------------------------------------------------------------------
// check-path
// ---------------------------------------------------------------------------

struct CheckPathOpts {
    std::string file;
    std::vector<double> exponents;
    bool l1 = false;
    bool l2 = false;
};

int run_check_path(const GlobalOpts& g, const CheckPathOpts& o) {
    if (!o.l1 && !o.l2 && o.exponents.empty()) {
        std::cerr << "error: request at least one of --l2, --l1, --p\n";
        return 2;
    }
    const Path path = io::load_path(o.file);

    std::vector<PathIneqReport> reports;
    if (o.l2) reports.push_back(check_path_l2(path, g.tol_scale));
    if (o.l1) reports.push_back(check_path_l1(path, g.tol_scale));
    std::vector<double> ps = o.exponents;
    std::sort(ps.begin(), ps.end());
    for (double p : ps) reports.push_back(check_path_lp(path, p, g.tol_scale));

    std::ostringstream os;
    const bool csv = format_or(g, "json") == "csv";
    if (csv) os << "inequality,p,lhs,rhs,slack,holds,degenerate\n";
    bool all_hold = true;
    for (const auto& r : reports) {
        all_hold = all_hold && r.holds;
        if (csv)
            os << to_csv(r) << "\n";
        else
            os << io::to_json(r).dump() << "\n";
    }
    const int rc = emit(g, os.str());
    return rc != 0 ? rc : (all_hold ? 0 : 1);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
    std::string model = "gbm";
    std::string tree_file;
    std::string sampler_file;
    std::vector<std::string> suites{"all"};
    std::vector<double> exponents{2.0};
    std::size_t n = 10000;
    std::size_t steps = 100;
    double horizon = 1.0;
    double start = 1.0;
    double sigma = 0.2;
    double mu = 0.0;
    double drift = 0.0;
    bool serial = false;
};

const std::vector<std::string> kAllSuites = {"doob-lp",  "doob-l1",  "strong-doob",
                                             "cbp",      "optimal1", "sharp-doob"};

int run_verify(const GlobalOpts& g, const VerifyOpts& o) {
    // assemble the source ensemble
    Ensemble src;
    bool is_tree = false;
    if (!o.tree_file.empty()) {
        src = Ensemble::from_tree(io::load_tree(o.tree_file));
        is_tree = true;
    } else {
        PathSampler s;
        if (!o.sampler_file.empty()) {
            s = io::load_sampler(o.sampler_file);
        } else {
            s.model = PathSampler::parse_model(o.model);
            s.steps = o.steps;
            s.horizon = o.horizon;
            s.start = o.start;
            s.sigma = o.sigma;
            s.mu = o.mu;
            s.drift = o.drift;
            if (s.model == PathSampler::Model::Tree) {
                std::cerr << "error: tree model requires --tree FILE\n";
                return 2;
            }
        }
        s.seed = g.seed;
        src = Ensemble::from_sampler(s, o.n,
                                     o.serial ? batch::Mode::Serial : batch::Mode::Parallel);
    }

    // expand suite list, keep canonical order, p ascending
    std::vector<std::string> suites;
    for (const std::string& name : o.suites) {
        if (name == "all") {
            suites.insert(suites.end(), kAllSuites.begin(), kAllSuites.end());
        } else {
            suites.push_back(name);
        }
    }
    std::vector<double> ps = o.exponents;
    std::sort(ps.begin(), ps.end());

    std::vector<MCReport> reports;
    for (const std::string& suite : suites) {
        if (suite == "doob-lp") {
            for (double p : ps) reports.push_back(verify_doob_lp(src, p));
        } else if (suite == "doob-l1") {
            reports.push_back(verify_doob_l1(src));
        } else if (suite == "strong-doob") {
            for (double p : ps) reports.push_back(verify_strong_doob(src, p));
        } else if (suite == "cbp") {
            reports.push_back(verify_cbp(src));
        } else if (suite == "optimal1") {
            reports.push_back(verify_optimal1(src));
        } else if (suite == "sharp-doob") {
            for (double p : ps) reports.push_back(verify_sharp_doob_lp(src, p));
        } else if (suite == "quallp") {
            if (!is_tree) {
                std::cerr << "error: suite quallp needs an exact Doob decomposition; "
                             "tree model required\n";
                return 2;
            }
            for (double p : ps) reports.push_back(verify_quallp(src, p));
        } else {
            std::cerr << "error: unknown suite '" << suite
                      << "' (all|doob-lp|doob-l1|strong-doob|cbp|optimal1|sharp-doob|quallp)\n";
            return 2;
        }
    }

    std::ostringstream os;
    const bool csv = format_or(g, "json") == "csv";
    if (csv) os << report_csv_header() << "\n";
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.verdict != Verdict::Violated && r.verdict != Verdict::Inconclusive;
        if (csv)
            os << to_csv(r) << "\n";
        else
            os << io::to_json(r).dump() << "\n";
    }
    const int rc = emit(g, os.str());
    return rc != 0 ? rc : (ok ? 0 : 1);
}

// ---------------------------------------------------------------------------
// sharpness
// ---------------------------------------------------------------------------

struct SharpnessOpts {
    std::string alpha_spec = "1.5";
    double p = 2.0;
    std::size_t n = 10000;
    double dt = 1e-4;
    double t_max = 1e3;
    bool no_bridge = false;
    bool closed_form_only = false;
};

std::vector<double> parse_alpha_spec(const std::string& spec) {
    // "a", "a,b,c" or "a:b:step" (inclusive)
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream is(spec);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::runtime_error("bad --alpha range '" + spec + "', want a:b:step");
        for (double x = a; x <= b + 1e-12; x += step) out.push_back(x);
        return out;
    }
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::runtime_error("empty --alpha");
    return out;
}

int run_sharpness(const GlobalOpts& g, const SharpnessOpts& o) {
    const std::vector<double> alphas = parse_alpha_spec(o.alpha_spec);
    const double limit = o.p / (o.p - 1.0);
    for (double a : alphas) {
        if (!(a > 1.0) || !(a < limit)) {
            std::cerr << "error: alpha = " << a << " outside (1, p/(p-1)) = (1, " << limit
                      << "); the stopped value is p-integrable only inside\n";
            return 2;
        }
    }

    std::vector<SharpnessReport> rows;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (o.closed_form_only) {
            rows.push_back(sharpness_closed_form(alphas[i], o.p));
            continue;
        }
        AlphaConfig cfg;
        cfg.alpha = alphas[i];
        cfg.p = o.p;
        cfg.dt = o.dt;
        cfg.t_max = o.t_max;
        // per-row seed offset keeps rows independent yet reproducible
        cfg.seed = g.seed + 1000003 * i;
        cfg.bridge_correction = !o.no_bridge;
        rows.push_back(equality_attainment_report(cfg, o.n));
    }

    std::ostringstream os;
    if (format_or(g, "csv") == "json") {
        for (const auto& r : rows) {
            nlohmann::json j;
            j["alpha"] = r.alpha;
            j["p"] = r.p;
            j["norm_ST"] = r.norm_terminal;
            j["norm_SbarT"] = r.norm_max;
            j["rhs_sharkdoob"] = r.rhs_sharp;
            j["gap"] = r.gap;
            j["mc_norm_ST"] = r.mc_norm_terminal;
            j["mc_norm_SbarT"] = r.mc_norm_max;
            j["mc_stderr"] = r.mc_stderr;
            j["capped_fraction"] =
                r.n_samples ? double(r.n_capped) / double(r.n_samples) : 0.0;
            os << j.dump() << "\n";
        }
    } else {
        os << io::kSharpnessHeader << "\n";
        for (const auto& r : rows) os << io::sharpness_csv_row(r) << "\n";
    }
    return emit(g, os.str());
}

// ---------------------------------------------------------------------------
// integral
// ---------------------------------------------------------------------------

struct IntegralOpts {
    std::string f_file;
    std::string g_file;
    std::size_t depth_min = 4;
    std::size_t depth_max = 12;
};

int run_integral(const GlobalOpts& g, const IntegralOpts& o) {
    const SampledFunction f = io::load_sampled(o.f_file);
    const SampledFunction gg = o.g_file.empty() ? f : io::load_sampled(o.g_file);
    auto [gr, fr] = resample_to_union(gg, f);
    const auto parts = dyadic_partitions(fr.size(), o.depth_min, o.depth_max);
    const auto est = pathwise_integral(gr, fr, parts);

    // integration-by-parts residual per depth
    std::vector<double> residuals;
    residuals.reserve(parts.partitions.size());
    for (const auto& part : parts.partitions) {
        const auto sides = integration_by_parts_discrete(gr, fr, part);
        residuals.push_back(sides.lhs - sides.rhs);
    }

    std::ostringstream os;
    if (format_or(g, "json") == "csv") {
        os << "depth,points,value,ibp_residual\n";
        for (std::size_t i = 0; i < parts.partitions.size(); ++i)
            os << o.depth_min + i << ',' << parts.partitions[i].size() << ','
               << io::format_double(est.partition_values[i]) << ','
               << io::format_double(residuals[i]) << "\n";
    } else {
        nlohmann::json j = io::to_json(est);
        j["ibp_residuals"] = residuals;
        os << j.dump() << "\n";
    }
    return emit(g, os.str());
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

struct SampleOpts {
    std::string model = "gbm";
    std::string tree_file;
    std::string sampler_file;
    std::uint64_t index = 0;
    std::size_t steps = 100;
    double horizon = 1.0;
    double start = 1.0;
    double sigma = 0.2;
    double mu = 0.0;
    double drift = 0.0;
};

int run_sample(const GlobalOpts& g, const SampleOpts& o) {
    PathSampler s;
    if (!o.sampler_file.empty()) {
        s = io::load_sampler(o.sampler_file);
    } else {
        s.model = PathSampler::parse_model(o.model);
        if (s.model == PathSampler::Model::Tree) {
            if (o.tree_file.empty()) {
                std::cerr << "error: tree model requires --tree FILE\n";
                return 2;
            }
            s.tree = io::load_tree(o.tree_file);
        }
        s.steps = o.steps;
        s.horizon = o.horizon;
        s.start = o.start;
        s.sigma = o.sigma;
        s.mu = o.mu;
        s.drift = o.drift;
    }
    s.seed = g.seed;
    const Path path = sample_path(s, o.index);
    std::ostringstream os;
    if (format_or(g, "csv") == "json")
        io::write_path_json(os, path);
    else
        io::write_path_csv(os, path);
    return emit(g, os.str());
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

int run_decompose(const GlobalOpts& g, const std::string& tree_file) {
    const TreeModel model = io::load_tree(tree_file);
    const auto d = doob_decompose(model);
    nlohmann::json j = io::to_json(d);
    j["martingale"] = model.is_martingale();
    return emit(g, j.dump() + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectorial maximal-inequality toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML config file mirroring the flags (flags win)");

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base RNG seed");
    app.add_option("--out", g.out, "write output to this file instead of stdout");
    app.add_option("--format", g.format, "json or csv (default depends on the command)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol-scale", g.tol_scale, "scale factor on the holds tolerance");

    CheckPathOpts cp;
    auto* ccp = app.add_subcommand("check-path", "pathwise inequality checks on a stored path");
    ccp->fallthrough();
    ccp->add_option("file", cp.file, "path file (.csv with header s, or .json)")->required();
    ccp->add_option("--p", cp.exponents, "exponents for the Lp check (repeatable)");
    ccp->add_flag("--l1", cp.l1, "run the L1 (log) check");
    ccp->add_flag("--l2", cp.l2, "run the real-valued L2 check");

    VerifyOpts vo;
    auto* cv = app.add_subcommand("verify", "expectation-level inequality suites");
    cv->fallthrough();
    cv->add_option("--model", vo.model, "gbm|walk|walk-reflected|walk-absorbed|walk-pm1");
    cv->add_option("--tree", vo.tree_file, "tree model JSON (exact enumeration)");
    cv->add_option("--sampler-config", vo.sampler_file, "sampler config JSON");
    cv->add_option("--suite", vo.suites,
                   "all|doob-lp|doob-l1|strong-doob|cbp|optimal1|sharp-doob|quallp");
    cv->add_option("--p", vo.exponents, "exponents (repeatable)");
    cv->add_option("--n", vo.n, "Monte Carlo sample count");
    cv->add_option("--steps", vo.steps, "steps per sampled path");
    cv->add_option("--horizon", vo.horizon, "time horizon");
    cv->add_option("--start", vo.start, "start value");
    cv->add_option("--sigma", vo.sigma, "gbm volatility");
    cv->add_option("--mu", vo.mu, "gbm drift");
    cv->add_option("--drift", vo.drift, "walk drift");
    cv->add_flag("--serial", vo.serial, "use the serial reference kernels");

    SharpnessOpts so;
    auto* cs = app.add_subcommand("sharpness", "equality attainment sweep over alpha");
    cs->fallthrough();
    cs->add_option("--alpha", so.alpha_spec, "alpha, list a,b,c or range a:b:step");
    cs->add_option("--p", so.p, "exponent");
    cs->add_option("--n", so.n, "samples per alpha");
    cs->add_option("--dt", so.dt, "time step");
    cs->add_option("--t-max", so.t_max, "simulation cap per sample");
    cs->add_flag("--no-bridge", so.no_bridge,
                 "disable the Brownian-bridge crossing correction");
    cs->add_flag("--closed-form-only", so.closed_form_only, "skip the Monte Carlo columns");

    IntegralOpts io_opts;
    auto* ci = app.add_subcommand("integral", "partition-limit pathwise integral diagnostics");
    ci->fallthrough();
    ci->add_option("--f", io_opts.f_file, "integrator f as t,value CSV")->required();
    ci->add_option("--g", io_opts.g_file, "monotone integrand g (defaults to f)");
    ci->add_option("--depth-min", io_opts.depth_min, "coarsest dyadic depth");
    ci->add_option("--depth-max", io_opts.depth_max, "finest dyadic depth");

    SampleOpts smo;
    auto* csm = app.add_subcommand("sample", "draw one path from a model and write it out");
    csm->fallthrough();
    csm->add_option("--model", smo.model, "gbm|walk|walk-reflected|walk-absorbed|walk-pm1|tree");
    csm->add_option("--tree", smo.tree_file, "tree model JSON");
    csm->add_option("--sampler-config", smo.sampler_file, "sampler config JSON");
    csm->add_option("--index", smo.index, "path index within the seed's stream");
    csm->add_option("--steps", smo.steps, "steps per path");
    csm->add_option("--horizon", smo.horizon, "time horizon");
    csm->add_option("--start", smo.start, "start value");
    csm->add_option("--sigma", smo.sigma, "gbm volatility");
    csm->add_option("--mu", smo.mu, "gbm drift");
    csm->add_option("--drift", smo.drift, "walk drift");

    std::string decompose_file;
    auto* cd = app.add_subcommand("decompose", "Doob decomposition of a tree model");
    cd->fallthrough();
    cd->add_option("file", decompose_file, "tree model JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ccp->parsed()) return run_check_path(g, cp);
        if (cv->parsed()) return run_verify(g, vo);
        if (cs->parsed()) return run_sharpness(g, so);
        if (ci->parsed()) return run_integral(g, io_opts);
        if (csm->parsed()) return run_sample(g, smo);
        if (cd->parsed()) return run_decompose(g, decompose_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
