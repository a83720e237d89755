#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maxineq/azema_yor.hpp"
#include "maxineq/batch.hpp"
#include "testutil.hpp"

#include <algorithm>
#include <cmath>

using namespace maxineq;

TEST_CASE("config validation enforces the integrability window") {
    AlphaConfig c;
    c.alpha = 1.5;
    c.p = 2.0;
    CHECK_NOTHROW(c.validate());
    c.alpha = 2.5;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("p-integrable"),
                         std::invalid_argument);
    c.alpha = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.alpha = 1.4;
    c.p = 3.0; // p/(p-1) = 1.5
    CHECK_NOTHROW(c.validate());
    c.alpha = 1.6;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("density vanishes below the support") {
    // support starts at 1/alpha = 2/3
    CHECK(mu_density(0.5, 1.5) == 0.0);
    CHECK(mu_density(0.66, 1.5) == 0.0);
    CHECK(mu_density(0.7, 1.5) > 0.0);
    CHECK_THROWS_AS(mu_density(1.0, 0.9), std::invalid_argument);
}

TEST_CASE("density integrates to one and has unit mean (quadrature oracle)") {
    for (double alpha : {1.2, 1.5, 1.9, 3.0}) {
        const double mass =
            testutil::integrate_to_inf([=](double x) { return mu_density(x, alpha); },
                                       1.0 / alpha);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
        const double mean =
            testutil::integrate_to_inf([=](double x) { return x * mu_density(x, alpha); },
                                       1.0 / alpha);
        CHECK(mean == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("cdf matches quadrature of the density") {
    const double alpha = 1.5;
    for (double x : {0.7, 1.0, 2.0, 5.0}) {
        const double ref = testutil::integrate(
            [=](double t) { return mu_density(t, alpha); }, 1.0 / alpha, x);
        CHECK(mu_cdf(x, alpha) == doctest::Approx(ref).epsilon(1e-8));
    }
    CHECK(mu_cdf(1.0 / alpha, alpha) == 0.0);
    CHECK(mu_cdf(0.1, alpha) == 0.0);
}

TEST_CASE("quantile inverts the cdf") {
    for (double alpha : {1.2, 1.5, 2.5}) {
        CHECK(mu_quantile(0.0, alpha) == doctest::Approx(1.0 / alpha));
        for (double u : {0.1, 0.5, 0.9, 0.999}) {
            const double x = mu_quantile(u, alpha);
            CHECK(mu_cdf(x, alpha) == doctest::Approx(u).epsilon(1e-12));
        }
        CHECK_THROWS_AS(mu_quantile(1.0, alpha), std::invalid_argument);
        CHECK_THROWS_AS(mu_quantile(-0.1, alpha), std::invalid_argument);
    }
}

TEST_CASE("p-th moments: closed form vs quadrature across (p, alpha)") {
    for (double p : {1.5, 2.0, 3.0}) {
        for (double frac : {0.2, 0.5, 0.8}) {
            const double alpha = 1.0 + frac * (p / (p - 1.0) - 1.0);
            const double ref = testutil::integrate_to_inf(
                [=](double x) { return std::pow(x, p) * mu_density(x, alpha); }, 1.0 / alpha);
            CHECK(mu_moment(p, alpha) == doctest::Approx(ref).epsilon(1e-8));
        }
    }
}

TEST_CASE("worked second moment at alpha = 1.5") {
    CHECK(mu_moment(2.0, 1.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(mu_pnorm(2.0, 1.5) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
    CHECK(mu_pnorm(2.0, 1.5) == doctest::Approx(1.1547).epsilon(1e-4));
    CHECK_THROWS_WITH_AS(mu_moment(2.0, 2.0), doctest::Contains("diverges"),
                         std::invalid_argument);
}

TEST_CASE("p-norm is strictly increasing in alpha and spans (1, inf)") {
    CHECK(mu_pnorm(2.0, 1.2) < mu_pnorm(2.0, 1.5));
    CHECK(mu_pnorm(2.0, 1.5) < mu_pnorm(2.0, 1.8));
    // alpha -> 1: the law degenerates at 1
    CHECK(mu_pnorm(2.0, 1.0 + 1e-9) == doctest::Approx(1.0).epsilon(1e-7));
    // scan: the norm runs through (1, X] for any tested X
    for (double target : {1.05, 2.0, 10.0, 100.0}) {
        const double alpha = alpha_for_pnorm(target, 2.0);
        CHECK(mu_pnorm(2.0, alpha) == doctest::Approx(target).epsilon(1e-9));
    }
}

TEST_CASE("equality attainment in closed form across the alpha range") {
    for (double p : {1.5, 2.0, 3.0}) {
        for (double frac : {0.1, 0.5, 0.9}) {
            const double alpha = 1.0 + frac * (p / (p - 1.0) - 1.0);
            const auto r = sharpness_closed_form(alpha, p);
            CHECK(std::abs(r.gap) <= 1e-12 * (1.0 + r.norm_max));
            if (p == 2.0) CHECK(std::abs(r.gap_two_norm) <= 1e-12 * (1.0 + r.norm_max));
        }
    }
    // alpha = 1.5, p = 2 anchors: ||S_T|| = 2/sqrt(3), ||max|| = sqrt(3)
    const auto r = sharpness_closed_form(1.5, 2.0);
    CHECK(r.norm_terminal == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r.norm_max == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r.rhs_sharp == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(r.rhs_two_norm == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("simulated samples respect the stopping geometry") {
    AlphaConfig c;
    c.alpha = 1.5;
    c.p = 2.0;
    c.dt = 1e-3;
    c.seed = 7;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto s = simulate_tau_alpha(c, i, /*keep_path=*/true);
        REQUIRE_FALSE(s.capped);
        // raw grid scheme: terminal at or below the barrier, overshoot >= 0
        CHECK(s.terminal <= s.max_value / c.alpha + 1e-12);
        CHECK(s.overshoot >= 0.0);
        CHECK(s.path.size() == s.stop_step + 1);
        // before stopping the path stays strictly above the barrier
        double m = 1.0;
        for (std::size_t k = 0; k + 1 < s.path.size(); ++k) {
            m = std::max(m, s.path[k]);
            CHECK(s.path[k] > m / c.alpha);
        }
        CHECK(s.max_value == doctest::Approx(std::max(m, s.path.back())));
    }
}

TEST_CASE("bridge-corrected samples sit exactly on the barrier") {
    AlphaConfig c;
    c.alpha = 1.5;
    c.p = 2.0;
    c.dt = 1e-3;
    c.seed = 9;
    c.bridge_correction = true;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto s = simulate_tau_alpha(c, i);
        REQUIRE_FALSE(s.capped);
        CHECK(s.terminal == doctest::Approx(s.max_value / c.alpha).epsilon(1e-12));
    }
}

TEST_CASE("stopped value law: moderate-n distribution sanity") {
    AlphaConfig c;
    c.alpha = 1.5;
    c.p = 2.0;
    c.dt = 1e-3;
    c.seed = 11;
    c.t_max = 1e4;
    c.bridge_correction = true;
    const std::size_t n = 4000;
    std::vector<batch::StoppedStats> stats(n);
    batch::simulate_stopped_bm(c, stats, batch::Mode::Parallel);
    std::vector<double> terminal;
    double mean = 0.0;
    for (const auto& s : stats) {
        if (s.capped) continue;
        terminal.push_back(s.terminal);
        mean += s.terminal;
    }
    REQUIRE(terminal.size() > 3900);
    mean /= double(terminal.size());
    CHECK(std::abs(mean - 1.0) < 0.03); // martingale mean, loose 4-sigma band

    std::sort(terminal.begin(), terminal.end());
    double ks = 0.0;
    const double cnt = double(terminal.size());
    for (std::size_t i = 0; i < terminal.size(); ++i) {
        const double F = mu_cdf(terminal[i], c.alpha);
        ks = std::max(ks, std::abs(F - double(i + 1) / cnt));
        ks = std::max(ks, std::abs(F - double(i) / cnt));
    }
    // bias at dt = 1e-3 with the bridge correction is well under the
    // sampling noise; 2.5/sqrt(n) is a generous band
    CHECK(ks < 2.5 / std::sqrt(cnt));
}

TEST_CASE("equality attainment report combines closed form and simulation") {
    AlphaConfig c;
    c.alpha = 1.5;
    c.p = 2.0;
    c.dt = 1e-3;
    c.seed = 13;
    c.t_max = 1e4;
    c.bridge_correction = true;
    const auto r = equality_attainment_report(c, 20000);
    CHECK(r.n_samples == 20000);
    CHECK(std::abs(r.gap) <= 1e-12 * (1.0 + r.norm_max));
    CHECK(r.mc_norm_terminal == doctest::Approx(r.norm_terminal).epsilon(0.05));
    CHECK(r.mc_norm_max == doctest::Approx(r.norm_max).epsilon(0.05));
    CHECK(r.mc_mean_terminal == doctest::Approx(1.0).epsilon(0.02));
    // the snap discards the overshoot; the mean of what was discarded is the
    // O(sqrt(dt)) bias the correction removes
    CHECK(r.mean_overshoot > 0.0);
    CHECK(r.mean_overshoot < 2.0 * std::sqrt(c.dt));
    // max = alpha * terminal per sample carries over to the norms
    CHECK(r.mc_norm_max == doctest::Approx(c.alpha * r.mc_norm_terminal).epsilon(1e-12));
}

TEST_CASE("alpha -> 1 degenerates to the constant martingale") {
    // all four quantities approach 1 and the gaps vanish in the limit; the
    // two-norm gap computes sqrt(m2 - 1) with m2 - 1 ~ eps^2, so cancellation
    // leaves a rounding floor of about ulp / eps
    for (double eps : {1e-4, 1e-6, 1e-8}) {
        const auto r = sharpness_closed_form(1.0 + eps, 2.0);
        CHECK(r.norm_terminal == doctest::Approx(1.0).epsilon(10 * eps));
        CHECK(r.norm_max == doctest::Approx(1.0).epsilon(10 * eps));
        CHECK(std::abs(r.gap) <= 1e-10);
        CHECK(std::abs(r.gap_two_norm) <= 2e-16 / eps + 1e-14);
    }
}
