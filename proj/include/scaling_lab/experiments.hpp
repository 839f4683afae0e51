#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scaling_lab/channel.hpp"
#include "scaling_lab/fading.hpp"
#include "scaling_lab/genie.hpp"
#include "scaling_lab/rng.hpp"

namespace scaling_lab {

enum class Scheme {
    genie_single,
    genie_two_hop,
    opportunistic_two_hop,
    pareto_linear,
    distribution_diagnostics,
    bound_overlay,
};

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

std::string family_name(Family family);
Family family_from_name(const std::string& name);

// Deferred fading-model description: instantiate(n) builds the model, with
// population 0 meaning "track n" for the extremal family.
struct ModelSpec {
    Family family = Family::rayleigh;
    double mean_power = 1.0;  // rayleigh, nakagami
    double sigma_db = 8.0;    // log_normal
    double shape = 1.0;       // nakagami
    double mu = 1.0;          // extremal_mv, unit mean power like the others
    double sigma = 1.0;       // extremal_mv
    int population = 0;       // extremal_mv; 0 tracks n
    double alpha = 4.0;       // pareto_pathloss
    double nu = 0.5;          // pareto_general
    double c0 = 1.0;          // pareto_general

    FadingModel instantiate(int n) const;
    std::string describe() const;
};

// Relay-count rule applied per grid point.
struct MRule {
    enum class Kind { fixed, sqrt_opt, equal_n };
    Kind kind = Kind::sqrt_opt;
    int fixed_m = 1;

    int m_for(int n) const;
    std::string describe() const;
};

struct ExperimentConfig {
    Scheme scheme = Scheme::opportunistic_two_hop;
    ModelSpec model;
    std::vector<int> n_grid;
    MRule m_rule;
    double rho = 10.0;
    double beta0 = 1.0;
    int trials = 100;
    std::uint64_t base_seed = 1;
    int workers = 1;
    GenieLimits genie_limits;

    // Throws invalid_argument naming the offending field.  pareto_linear
    // derives beta0 and m from alpha and n, so m_rule must be equal_n and
    // the model family pareto_pathloss.
    void validate() const;
};

struct TrialResult {
    int n = 0;
    int m = 0;  // active count; for genie schemes this is the trial's m_star
    int trial_index = 0;
    double throughput_bits = 0.0;
    bool distinct_event = true;
    double per_link_success_rate = 0.0;     // hop-1 successes / m
    double hop1_distinct_fraction = 0.0;    // distinct hop-1 sources / m
    double hop2_scheduled_fraction = 0.0;   // distinct hop-2 relays / m
};

struct NSummary {
    int n = 0;
    double m = 0.0;  // configured m; mean m_star for genie schemes
    int trials = 0;
    double mean_throughput = 0.0;
    double median_throughput = 0.0;
    double std_err_throughput = 0.0;
    // Mean over only the trials where every hop-1 selection was distinct
    // (the conditional quantity the lower-bound analysis credits); 0 when no
    // trial qualified.
    double mean_throughput_distinct_only = 0.0;
    double distinct_event_rate = 0.0;
    double mean_link_success = 0.0;
    double mean_hop1_distinct_fraction = 0.0;
    double mean_hop2_scheduled_fraction = 0.0;
};

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;  // in ln y = slope * ln n + intercept
    double ci_low = 0.0;     // bootstrap 95% interval, clamped to contain slope
    double ci_high = 0.0;
    double r_squared = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialResult> trials;  // ordered by (n, trial_index)
    std::vector<NSummary> summaries;
    std::optional<ScalingFit> fit;  // set when >= 3 grid points with positive mean throughput
};

// Runs the configured scheme over the n grid.  Per-trial seed is
// mix_seed(base_seed, n, trial_index), so any trial is re-runnable in
// isolation and results are independent of worker count.  Rejects the
// diagnostics-only schemes (distribution_diagnostics, bound_overlay), which
// are served by the sample and bounds commands instead.
ExperimentResult run(const ExperimentConfig& config);

struct ProbEstimate {
    double p = 0.0;
    double std_err = 0.0;
};

// p_hat = successes/trials with the binomial standard error.
ProbEstimate estimate_probability(long long successes, long long trials);

// OLS of ln(y) on ln(x) with a 200-resample bootstrap percentile interval.
// Requires >= 3 points, all coordinates positive.
ScalingFit fit_scaling(const std::vector<double>& n_values,
                       const std::vector<double>& mean_throughputs);

// --- Monte Carlo diagnostics used by tests, the verifier, and `sample` ---

struct ExtremeValueStats {
    double mean_max = 0.0;
    double std_err = 0.0;
    double exceed_mean_fraction = 0.0;  // fraction of block maxima >= threshold
    double threshold = 0.0;             // population mean of the block maximum
};

// Per trial draws `population` samples from the extremal model and records
// the block maximum; threshold is the exact mean of that maximum.
ExtremeValueStats extreme_value_stats(const FadingModel& model, int trials, Rng& rng);

// Pr[ sum of k draws <= s ].
ProbEstimate lower_tail_prob(const FadingModel& model, int k, double s, int trials, Rng& rng);

// Pr[ SINR >= beta0 ] for one desired link against m-1 i.i.d. interferers.
ProbEstimate sinr_success_prob(const FadingModel& model, int m, const LinkParams& params,
                               int trials, Rng& rng);

// Pr[ max / total >= 1 - nu ] over `count` draws (total includes the max).
ProbEstimate max_ratio_prob(const FadingModel& model, int count, double nu, int trials, Rng& rng);

}  // namespace scaling_lab
