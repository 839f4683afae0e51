#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "scaling_lab/experiments.hpp"
#include "scaling_lab/relay.hpp"
#include "scaling_lab/rng.hpp"

using namespace scaling_lab;

namespace {

ExperimentConfig small_relay_config() {
    ExperimentConfig cfg;
    cfg.scheme = Scheme::opportunistic_two_hop;
    cfg.model.family = Family::rayleigh;
    cfg.n_grid = {8, 16};
    cfg.m_rule.kind = MRule::Kind::sqrt_opt;
    cfg.trials = 10;
    cfg.base_seed = 42;
    cfg.workers = 1;
    return cfg;
}

}  // namespace

TEST_CASE("name round trips for schemes and families") {
    for (Scheme s : {Scheme::genie_single, Scheme::genie_two_hop, Scheme::opportunistic_two_hop,
                     Scheme::pareto_linear, Scheme::distribution_diagnostics,
                     Scheme::bound_overlay})
        CHECK(scheme_from_name(scheme_name(s)) == s);
    for (Family f : {Family::rayleigh, Family::log_normal, Family::nakagami,
                     Family::extremal_mv, Family::pareto_pathloss, Family::pareto_general})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_THROWS_AS(scheme_from_name("nope"), std::invalid_argument);
    CHECK_THROWS_AS(family_from_name("nope"), std::invalid_argument);
}

TEST_CASE("model spec instantiation tracks n for the extremal family") {
    ModelSpec spec;
    spec.family = Family::extremal_mv;
    spec.mu = 1.0;
    spec.sigma = 1.0;
    spec.population = 0;
    CHECK(spec.instantiate(64).population() == 64);
    spec.population = 100;
    CHECK(spec.instantiate(64).population() == 100);

    ModelSpec ray;
    CHECK(ray.instantiate(10).family() == Family::rayleigh);
}

TEST_CASE("relay-count rules") {
    MRule sqrt_rule;
    sqrt_rule.kind = MRule::Kind::sqrt_opt;
    CHECK(sqrt_rule.m_for(1024) == 23);
    MRule equal;
    equal.kind = MRule::Kind::equal_n;
    CHECK(equal.m_for(77) == 77);
    MRule fixed;
    fixed.kind = MRule::Kind::fixed;
    fixed.fixed_m = 5;
    CHECK(fixed.m_for(1000) == 5);
    CHECK(sqrt_rule.describe() == "sqrt-opt");
    CHECK(equal.describe() == "equal-n");
    CHECK(fixed.describe() == "fixed:5");
}

TEST_CASE("config validation names the offending field") {
    ExperimentConfig cfg = small_relay_config();
    cfg.n_grid = {};
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n_grid"), std::invalid_argument);

    cfg = small_relay_config();
    cfg.n_grid = {16, 8};
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n_grid"), std::invalid_argument);

    cfg = small_relay_config();
    cfg.trials = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("trials"), std::invalid_argument);

    cfg = small_relay_config();
    cfg.rho = 0.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("rho"), std::invalid_argument);

    cfg = small_relay_config();
    cfg.workers = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("workers"), std::invalid_argument);

    cfg = small_relay_config();
    cfg.scheme = Scheme::pareto_linear;  // model family must be pareto_pathloss
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = small_relay_config();
    cfg.scheme = Scheme::genie_single;
    cfg.n_grid = {8, 20};  // beyond the exhaustive-search guard
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.genie_limits.accept_exponential_cost = true;
    CHECK_NOTHROW(cfg.validate());

    CHECK_NOTHROW(small_relay_config().validate());
}

TEST_CASE("runs are deterministic and independent of worker count") {
    ExperimentConfig cfg = small_relay_config();
    ExperimentResult a = run(cfg);
    ExperimentResult b = run(cfg);
    cfg.workers = 4;
    ExperimentResult c = run(cfg);

    REQUIRE(a.trials.size() == 20);
    REQUIRE(b.trials.size() == 20);
    REQUIRE(c.trials.size() == 20);
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].throughput_bits == b.trials[i].throughput_bits);
        CHECK(a.trials[i].throughput_bits == c.trials[i].throughput_bits);
        CHECK(a.trials[i].n == c.trials[i].n);
        CHECK(a.trials[i].trial_index == c.trials[i].trial_index);
        CHECK(a.trials[i].distinct_event == c.trials[i].distinct_event);
    }
    REQUIRE(a.summaries.size() == 2);
    CHECK(a.summaries[0].n == 8);
    CHECK(a.summaries[1].n == 16);
    CHECK(a.summaries[0].mean_throughput == c.summaries[0].mean_throughput);
    CHECK_FALSE(a.fit.has_value());  // only two grid points
}

TEST_CASE("per-n summaries aggregate the right trials") {
    ExperimentConfig cfg = small_relay_config();
    cfg.n_grid = {16};
    cfg.trials = 50;
    ExperimentResult r = run(cfg);
    REQUIRE(r.summaries.size() == 1);
    const NSummary& s = r.summaries[0];
    CHECK(s.trials == 50);
    CHECK(s.m == doctest::Approx(optimal_sqrt_relay_count(16)));
    double mean = 0.0;
    for (const TrialResult& t : r.trials) mean += t.throughput_bits;
    mean /= 50.0;
    CHECK(s.mean_throughput == doctest::Approx(mean).epsilon(1e-12));
    CHECK(s.distinct_event_rate >= 0.0);
    CHECK(s.distinct_event_rate <= 1.0);
    CHECK(s.mean_link_success >= 0.0);
    CHECK(s.mean_link_success <= 1.0);
}

TEST_CASE("run rejects diagnostics-only schemes") {
    ExperimentConfig cfg = small_relay_config();
    cfg.scheme = Scheme::distribution_diagnostics;
    CHECK_THROWS_AS(run(cfg), std::invalid_argument);
    cfg.scheme = Scheme::bound_overlay;
    CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("genie scheme records per-trial maximum valid sets") {
    ExperimentConfig cfg;
    cfg.scheme = Scheme::genie_single;
    cfg.model.family = Family::rayleigh;
    cfg.n_grid = {6};
    cfg.trials = 8;
    cfg.base_seed = 7;
    ExperimentResult r = run(cfg);
    REQUIRE(r.trials.size() == 8);
    double mean_m = 0.0;
    for (const TrialResult& t : r.trials) {
        CHECK(t.m >= 0);
        CHECK(t.m <= 6);
        CHECK(t.throughput_bits == doctest::Approx(t.m * std::log(2.0)).epsilon(1e-12));
        mean_m += t.m;
    }
    CHECK(r.summaries[0].m == doctest::Approx(mean_m / 8.0).epsilon(1e-12));
}

TEST_CASE("binomial probability estimate") {
    ProbEstimate zero = estimate_probability(0, 100);
    CHECK(zero.p == 0.0);
    CHECK(zero.std_err == 0.0);
    ProbEstimate half = estimate_probability(50, 100);
    CHECK(half.p == doctest::Approx(0.5));
    CHECK(half.std_err == doctest::Approx(0.05).epsilon(1e-12));
    ProbEstimate one = estimate_probability(100, 100);
    CHECK(one.p == 1.0);
    CHECK(one.std_err == 0.0);
    CHECK_THROWS_AS(estimate_probability(-1, 100), std::domain_error);
    CHECK_THROWS_AS(estimate_probability(5, 0), std::domain_error);
    CHECK_THROWS_AS(estimate_probability(11, 10), std::domain_error);
}

TEST_CASE("power-law fit recovers exact exponents") {
    std::vector<double> n{100, 200, 400, 800, 1600};
    std::vector<double> sqrt_law, linear_law, scaled;
    for (double x : n) {
        sqrt_law.push_back(2.0 * std::sqrt(x));
        linear_law.push_back(3.0 * x);
        scaled.push_back(14.0 * std::sqrt(x));
    }
    ScalingFit f = fit_scaling(n, sqrt_law);
    CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(f.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.ci_low <= f.slope);
    CHECK(f.ci_high >= f.slope);

    CHECK(fit_scaling(n, linear_law).slope == doctest::Approx(1.0).epsilon(1e-10));
    // multiplying y by a constant shifts the intercept, not the slope
    CHECK(fit_scaling(n, scaled).slope == doctest::Approx(0.5).epsilon(1e-10));

    CHECK_THROWS_AS(fit_scaling({100, 200}, {1.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(fit_scaling({100, 200, 400}, {1.0, 0.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(fit_scaling({100, 200, 400}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling({100, 100, 100}, {1.0, 2.0, 3.0}), std::domain_error);
}

TEST_CASE("power-law fit tolerates multiplicative noise") {
    Rng rng(31337);
    std::vector<double> n, y;
    for (double x = 64; x <= 16384; x *= 2) {
        n.push_back(x);
        y.push_back(std::pow(x, 0.5) * std::exp(0.05 * (2.0 * rng.uniform() - 1.0)));
    }
    ScalingFit f = fit_scaling(n, y);
    CHECK(f.slope > 0.45);
    CHECK(f.slope < 0.55);
    CHECK(f.ci_low <= f.slope);
    CHECK(f.ci_high >= f.slope);
    CHECK(f.r_squared > 0.99);
}

TEST_CASE("standard error shrinks like one over sqrt(trials)") {
    ExperimentConfig cfg = small_relay_config();
    cfg.n_grid = {32};
    cfg.trials = 100;
    double se_small = run(cfg).summaries[0].std_err_throughput;
    cfg.trials = 400;
    double se_large = run(cfg).summaries[0].std_err_throughput;
    CHECK(se_small / se_large == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("scaling run produces a fit once three grid points exist") {
    ExperimentConfig cfg = small_relay_config();
    cfg.n_grid = {16, 32, 64};
    cfg.trials = 30;
    ExperimentResult r = run(cfg);
    REQUIRE(r.fit.has_value());
    CHECK(r.fit->ci_low <= r.fit->slope);
    CHECK(r.fit->ci_high >= r.fit->slope);
}
