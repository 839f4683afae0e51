#include "scaling_lab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "scaling_lab/numeric.hpp"
#include "scaling_lab/relay.hpp"

namespace scaling_lab {

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::genie_single: return "genie_single";
        case Scheme::genie_two_hop: return "genie_two_hop";
        case Scheme::opportunistic_two_hop: return "opportunistic_two_hop";
        case Scheme::pareto_linear: return "pareto_linear";
        case Scheme::distribution_diagnostics: return "distribution_diagnostics";
        case Scheme::bound_overlay: return "bound_overlay";
    }
    throw std::invalid_argument("scheme_name: unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
    for (Scheme s : {Scheme::genie_single, Scheme::genie_two_hop, Scheme::opportunistic_two_hop,
                     Scheme::pareto_linear, Scheme::distribution_diagnostics,
                     Scheme::bound_overlay}) {
        if (scheme_name(s) == name) return s;
    }
    throw std::invalid_argument("scheme_from_name: unknown scheme \"" + name + "\"");
}

std::string family_name(Family family) {
    switch (family) {
        case Family::rayleigh: return "rayleigh";
        case Family::log_normal: return "log_normal";
        case Family::nakagami: return "nakagami";
        case Family::extremal_mv: return "extremal_mv";
        case Family::pareto_pathloss: return "pareto_pathloss";
        case Family::pareto_general: return "pareto_general";
    }
    throw std::invalid_argument("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::rayleigh, Family::log_normal, Family::nakagami, Family::extremal_mv,
                     Family::pareto_pathloss, Family::pareto_general}) {
        if (family_name(f) == name) return f;
    }
    throw std::invalid_argument("family_from_name: unknown family \"" + name + "\"");
}

FadingModel ModelSpec::instantiate(int n) const {
    switch (family) {
        case Family::rayleigh: return FadingModel::rayleigh(mean_power);
        case Family::log_normal: return FadingModel::log_normal(sigma_db);
        case Family::nakagami: return FadingModel::nakagami(shape, mean_power);
        case Family::extremal_mv:
            return FadingModel::extremal_mv(mu, sigma, population == 0 ? n : population);
        case Family::pareto_pathloss: return FadingModel::pareto_pathloss(alpha);
        case Family::pareto_general: return FadingModel::pareto_general(nu, c0);
    }
    throw std::invalid_argument("ModelSpec: unknown family");
}

std::string ModelSpec::describe() const {
    std::ostringstream os;
    switch (family) {
        case Family::rayleigh: os << "rayleigh(mean_power=" << mean_power << ")"; break;
        case Family::log_normal: os << "log_normal(sigma_db=" << sigma_db << ")"; break;
        case Family::nakagami:
            os << "nakagami(shape=" << shape << ", mean_power=" << mean_power << ")";
            break;
        case Family::extremal_mv:
            os << "extremal_mv(mu=" << mu << ", sigma=" << sigma << ", population=";
            if (population == 0) {
                os << "track-n";
            } else {
                os << population;
            }
            os << ")";
            break;
        case Family::pareto_pathloss: os << "pareto_pathloss(alpha=" << alpha << ")"; break;
        case Family::pareto_general:
            os << "pareto_general(nu=" << nu << ", c0=" << c0 << ")";
            break;
    }
    return os.str();
}

int MRule::m_for(int n) const {
    switch (kind) {
        case Kind::fixed: return fixed_m;
        case Kind::sqrt_opt: return optimal_sqrt_relay_count(n);
        case Kind::equal_n: return n;
    }
    throw std::invalid_argument("MRule: unknown kind");
}

std::string MRule::describe() const {
    switch (kind) {
        case Kind::fixed: return "fixed:" + std::to_string(fixed_m);
        case Kind::sqrt_opt: return "sqrt-opt";
        case Kind::equal_n: return "equal-n";
    }
    throw std::invalid_argument("MRule: unknown kind");
}

void ExperimentConfig::validate() const {
    if (n_grid.empty()) throw std::invalid_argument("ExperimentConfig.n_grid: must be nonempty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 1)
            throw std::invalid_argument("ExperimentConfig.n_grid: entries must be >= 1");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("ExperimentConfig.n_grid: must be strictly increasing");
    }
    if (trials < 1) throw std::invalid_argument("ExperimentConfig.trials: must be >= 1");
    if (workers < 1) throw std::invalid_argument("ExperimentConfig.workers: must be >= 1");
    if (!(rho > 0.0)) throw std::invalid_argument("ExperimentConfig.rho: must be > 0");
    if (!(beta0 > 0.0)) throw std::invalid_argument("ExperimentConfig.beta0: must be > 0");
    if (m_rule.kind == MRule::Kind::fixed && m_rule.fixed_m < 1)
        throw std::invalid_argument("ExperimentConfig.m_rule: fixed m must be >= 1");

    if (scheme == Scheme::pareto_linear) {
        if (model.family != Family::pareto_pathloss)
            throw std::invalid_argument(
                "ExperimentConfig.model.family: pareto_linear requires pareto_pathloss");
        if (!(model.alpha > 2.0))
            throw std::invalid_argument(
                "ExperimentConfig.model.alpha: pareto_linear requires alpha > 2");
        if (m_rule.kind != MRule::Kind::equal_n)
            throw std::invalid_argument(
                "ExperimentConfig.m_rule: pareto_linear deploys one relay per pair (equal-n)");
    }
    if (scheme == Scheme::genie_single || scheme == Scheme::genie_two_hop) {
        int limit = scheme == Scheme::genie_single ? genie_limits.single_hop_max_n
                                                   : genie_limits.two_hop_max_n;
        if (!genie_limits.accept_exponential_cost && n_grid.back() > limit)
            throw std::invalid_argument(
                "ExperimentConfig.n_grid: exceeds the exhaustive-search limit " +
                std::to_string(limit) + " (see genie_limits)");
        if (scheme == Scheme::genie_two_hop && beta0 < 1.0)
            throw std::invalid_argument(
                "ExperimentConfig.beta0: the two-hop exhaustive search requires beta0 >= 1");
    }

    try {
        (void)model.instantiate(std::max(2, n_grid.front()));
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("ExperimentConfig.model: ") + e.what());
    }
}

namespace {

// Runs body(0..count-1) on up to `workers` threads.  Each index is handed
// out once; the first exception wins and drains the remaining work.
void parallel_for(int count, int workers, const std::function<void(int)>& body) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

NSummary summarize(int n, double m, const TrialResult* slice, int trials) {
    NSummary s;
    s.n = n;
    s.m = m;
    s.trials = trials;
    std::vector<double> throughputs(static_cast<std::size_t>(trials));
    CompensatedSum link_sum, hop1_sum, hop2_sum, distinct_only_sum;
    int distinct_count = 0;
    for (int t = 0; t < trials; ++t) {
        const TrialResult& r = slice[t];
        throughputs[static_cast<std::size_t>(t)] = r.throughput_bits;
        link_sum.add(r.per_link_success_rate);
        hop1_sum.add(r.hop1_distinct_fraction);
        hop2_sum.add(r.hop2_scheduled_fraction);
        if (r.distinct_event) {
            ++distinct_count;
            distinct_only_sum.add(r.throughput_bits);
        }
    }
    SampleStats st = sample_stats(throughputs);
    s.mean_throughput = st.mean;
    s.std_err_throughput = st.std_err;
    s.median_throughput = median(throughputs);
    s.distinct_event_rate = static_cast<double>(distinct_count) / trials;
    s.mean_throughput_distinct_only =
        distinct_count > 0 ? distinct_only_sum.value() / distinct_count : 0.0;
    s.mean_link_success = link_sum.value() / trials;
    s.mean_hop1_distinct_fraction = hop1_sum.value() / trials;
    s.mean_hop2_scheduled_fraction = hop2_sum.value() / trials;
    return s;
}

}  // namespace

ExperimentResult run(const ExperimentConfig& config) {
    if (config.scheme == Scheme::distribution_diagnostics ||
        config.scheme == Scheme::bound_overlay) {
        throw std::invalid_argument("run: scheme " + scheme_name(config.scheme) +
                                    " is served by the sample/bounds commands, not the "
                                    "experiment harness");
    }
    config.validate();

    ExperimentResult result;
    result.config = config;
    result.trials.resize(config.n_grid.size() * static_cast<std::size_t>(config.trials));

    for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
        const int n = config.n_grid[gi];
        TrialResult* slice = result.trials.data() + gi * static_cast<std::size_t>(config.trials);

        if (config.scheme == Scheme::opportunistic_two_hop ||
            config.scheme == Scheme::pareto_linear) {
            const RelayConfig cfg =
                config.scheme == Scheme::pareto_linear
                    ? pareto_linear_config(n, config.model.alpha, config.rho)
                    : RelayConfig(n, config.m_rule.m_for(n), LinkParams(config.rho, config.beta0),
                                  config.model.instantiate(n));
            parallel_for(config.trials, config.workers, [&](int t) {
                Rng trial_rng(mix_seed(config.base_seed, static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(t)));
                TwoHopOutcome o = two_hop_trial(cfg, trial_rng);
                TrialResult& r = slice[t];
                r.n = n;
                r.m = cfg.m;
                r.trial_index = t;
                r.throughput_bits = o.throughput_bits;
                r.distinct_event = o.first.distinct_event;
                r.per_link_success_rate = static_cast<double>(o.first.successes) / cfg.m;
                r.hop1_distinct_fraction = static_cast<double>(o.first_distinct_sources) / cfg.m;
                r.hop2_scheduled_fraction = static_cast<double>(o.second_scheduled) / cfg.m;
            });
            result.summaries.push_back(summarize(n, cfg.m, slice, config.trials));
        } else {
            const LinkParams params(config.rho, config.beta0);
            const FadingModel model = config.model.instantiate(n);
            parallel_for(config.trials, config.workers, [&](int t) {
                Rng trial_rng(mix_seed(config.base_seed, static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(t)));
                ChannelMatrix h = draw_channel(n, n, model, trial_rng);
                GenieResult g = config.scheme == Scheme::genie_single
                                    ? max_valid_single_hop(h, params, config.genie_limits)
                                    : max_valid_two_hop(h, params, config.genie_limits);
                TrialResult& r = slice[t];
                r.n = n;
                r.m = g.m_star;
                r.trial_index = t;
                r.throughput_bits = g.m_star * params.r0;
            });
            CompensatedSum m_sum;
            for (int t = 0; t < config.trials; ++t) m_sum.add(slice[t].m);
            result.summaries.push_back(
                summarize(n, m_sum.value() / config.trials, slice, config.trials));
        }
    }

    if (result.summaries.size() >= 3) {
        bool all_positive = true;
        std::vector<double> xs, ys;
        for (const NSummary& s : result.summaries) {
            if (!(s.mean_throughput > 0.0)) {
                all_positive = false;
                break;
            }
            xs.push_back(static_cast<double>(s.n));
            ys.push_back(s.mean_throughput);
        }
        if (all_positive) result.fit = fit_scaling(xs, ys);
    }
    return result;
}

ProbEstimate estimate_probability(long long successes, long long trials) {
    if (trials < 1) throw std::domain_error("estimate_probability: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::domain_error("estimate_probability: successes outside [0, trials]");
    ProbEstimate e;
    e.p = static_cast<double>(successes) / static_cast<double>(trials);
    e.std_err = std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(trials));
    return e;
}

namespace {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

OlsFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t k = xs.size();
    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < k; ++i) {
        sx.add(xs[i]);
        sy.add(ys[i]);
    }
    double mx = sx.value() / k;
    double my = sy.value() / k;
    CompensatedSum sxx, sxy;
    for (std::size_t i = 0; i < k; ++i) {
        sxx.add((xs[i] - mx) * (xs[i] - mx));
        sxy.add((xs[i] - mx) * (ys[i] - my));
    }
    OlsFit f;
    if (!(sxx.value() > 0.0)) throw std::domain_error("fit_scaling: all x values identical");
    f.slope = sxy.value() / sxx.value();
    f.intercept = my - f.slope * mx;
    CompensatedSum ss_res, ss_tot;
    for (std::size_t i = 0; i < k; ++i) {
        double e = ys[i] - (f.intercept + f.slope * xs[i]);
        ss_res.add(e * e);
        ss_tot.add((ys[i] - my) * (ys[i] - my));
    }
    f.r_squared = ss_tot.value() > 0.0 ? 1.0 - ss_res.value() / ss_tot.value() : 1.0;
    return f;
}

}  // namespace

ScalingFit fit_scaling(const std::vector<double>& n_values,
                       const std::vector<double>& mean_throughputs) {
    if (n_values.size() != mean_throughputs.size())
        throw std::invalid_argument("fit_scaling: coordinate lists differ in length");
    if (n_values.size() < 3) throw std::domain_error("fit_scaling: need at least 3 points");
    std::vector<double> lx(n_values.size()), ly(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (!(n_values[i] > 0.0) || !(mean_throughputs[i] > 0.0))
            throw std::domain_error("fit_scaling: coordinates must be positive for a log-log fit");
        lx[i] = std::log(n_values[i]);
        ly[i] = std::log(mean_throughputs[i]);
    }

    OlsFit base = ols(lx, ly);
    ScalingFit fit;
    fit.slope = base.slope;
    fit.intercept = base.intercept;
    fit.r_squared = base.r_squared;

    constexpr int resamples = 200;
    const std::size_t k = lx.size();
    Rng boot(0x9E3779B97F4A7C15ULL);  // fixed stream: the interval is part of the output
    std::vector<double> slopes;
    slopes.reserve(resamples);
    std::vector<double> bx(k), by(k);
    for (int b = 0; b < resamples; ++b) {
        while (true) {
            bool varied = false;
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t pick = static_cast<std::size_t>(boot.uniform_index(k));
                bx[i] = lx[pick];
                by[i] = ly[pick];
                if (bx[i] != bx[0]) varied = true;
            }
            if (varied) break;  // a one-point resample has no slope; redraw
        }
        slopes.push_back(ols(bx, by).slope);
    }
    std::sort(slopes.begin(), slopes.end());
    auto lo_idx = static_cast<std::size_t>(std::floor(0.025 * (resamples - 1)));
    auto hi_idx = static_cast<std::size_t>(std::ceil(0.975 * (resamples - 1)));
    fit.ci_low = std::min(slopes[lo_idx], fit.slope);
    fit.ci_high = std::max(slopes[hi_idx], fit.slope);
    return fit;
}

ExtremeValueStats extreme_value_stats(const FadingModel& model, int trials, Rng& rng) {
    if (model.family() != Family::extremal_mv)
        throw std::invalid_argument("extreme_value_stats: needs an extremal_mv model");
    if (trials < 1) throw std::invalid_argument("extreme_value_stats: trials must be >= 1");
    const int pop = model.population();
    ExtremeValueStats out;
    out.threshold = extreme_mean(model);
    std::vector<double> maxima(static_cast<std::size_t>(trials));
    long long exceed = 0;
    for (int t = 0; t < trials; ++t) {
        double mx = model.sample(rng);
        for (int i = 1; i < pop; ++i) mx = std::max(mx, model.sample(rng));
        maxima[static_cast<std::size_t>(t)] = mx;
        if (mx >= out.threshold) ++exceed;
    }
    SampleStats st = sample_stats(maxima);
    out.mean_max = st.mean;
    out.std_err = st.std_err;
    out.exceed_mean_fraction = static_cast<double>(exceed) / trials;
    return out;
}

ProbEstimate lower_tail_prob(const FadingModel& model, int k, double s, int trials, Rng& rng) {
    if (k < 1) throw std::invalid_argument("lower_tail_prob: k must be >= 1");
    if (trials < 1) throw std::invalid_argument("lower_tail_prob: trials must be >= 1");
    long long hits = 0;
    for (int t = 0; t < trials; ++t) {
        CompensatedSum total;
        for (int i = 0; i < k; ++i) total.add(model.sample(rng));
        if (total.value() <= s) ++hits;
    }
    return estimate_probability(hits, trials);
}

ProbEstimate sinr_success_prob(const FadingModel& model, int m, const LinkParams& params,
                               int trials, Rng& rng) {
    if (m < 1) throw std::invalid_argument("sinr_success_prob: m must be >= 1");
    if (trials < 1) throw std::invalid_argument("sinr_success_prob: trials must be >= 1");
    long long hits = 0;
    for (int t = 0; t < trials; ++t) {
        double signal = model.sample(rng);
        CompensatedSum interference;
        for (int i = 1; i < m; ++i) interference.add(model.sample(rng));
        double value = signal / (1.0 / params.rho + interference.value());
        if (link_succeeds(value, params.beta0)) ++hits;
    }
    return estimate_probability(hits, trials);
}

ProbEstimate max_ratio_prob(const FadingModel& model, int count, double nu, int trials, Rng& rng) {
    if (count < 1) throw std::invalid_argument("max_ratio_prob: count must be >= 1");
    if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("max_ratio_prob: nu outside (0, 1)");
    if (trials < 1) throw std::invalid_argument("max_ratio_prob: trials must be >= 1");
    if (model.support_min() < 0.0)
        throw std::invalid_argument("max_ratio_prob: needs a nonnegative-support model");
    long long hits = 0;
    for (int t = 0; t < trials; ++t) {
        CompensatedSum total;
        double mx = 0.0;
        for (int i = 0; i < count; ++i) {
            double g = model.sample(rng);
            total.add(g);
            mx = std::max(mx, g);
        }
        if (mx >= (1.0 - nu) * total.value()) ++hits;
    }
    return estimate_probability(hits, trials);
}

}  // namespace scaling_lab
