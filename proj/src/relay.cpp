#include "scaling_lab/relay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "scaling_lab/bounds.hpp"
#include "scaling_lab/numeric.hpp"

namespace scaling_lab {

namespace {

std::vector<int> sorted_distinct(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_power_gains(const FadingModel& model) {
    if (model.support_min() < 0.0)
        throw std::domain_error("relay: power gains must be nonnegative");
}

}  // namespace

RelayConfig::RelayConfig(int n_in, int m_in, LinkParams params_in, FadingModel model_in)
    : n(n_in), m(m_in), params(params_in), model(std::move(model_in)) {
    if (n < 1) throw std::invalid_argument("RelayConfig: n must be >= 1");
    if (m < 1) throw std::invalid_argument("RelayConfig: m must be >= 1");
}

ChannelMatrix draw_hop_matrix(int n_tx, int n_rx, const FadingModel& model, const Rng& trial_rng,
                              std::uint64_t tag) {
    require_power_gains(model);
    ChannelMatrix h(n_tx, n_rx);
    for (int j = 0; j < n_rx; ++j) {
        Rng col = trial_rng.child(tag, static_cast<std::uint64_t>(j));
        for (int i = 0; i < n_tx; ++i) h.gains[static_cast<std::size_t>(i) * n_rx + j] = model.sample(col);
    }
    return h;
}

std::vector<int> schedule_first_hop(const ChannelMatrix& h_sr) {
    std::vector<int> selections(h_sr.n_rx);
    for (int j = 0; j < h_sr.n_rx; ++j) {
        int best = 0;
        double best_gain = h_sr(0, j);
        for (int i = 1; i < h_sr.n_tx; ++i) {
            if (h_sr(i, j) > best_gain) {
                best = i;
                best_gain = h_sr(i, j);
            }
        }
        selections[j] = best;
    }
    return selections;
}

HopReport first_hop_throughput(const ChannelMatrix& h_sr, const LinkParams& params) {
    HopReport report;
    report.selections = schedule_first_hop(h_sr);
    std::vector<int> active = sorted_distinct(report.selections);
    report.distinct_event = active.size() == report.selections.size();
    std::vector<int> delivered;
    for (int j = 0; j < h_sr.n_rx; ++j) {
        if (link_succeeds(sinr(h_sr, active, report.selections[j], j, params.rho), params.beta0)) {
            ++report.successes;
            delivered.push_back(report.selections[j]);
        }
    }
    report.throughput_bits =
        params.r0 * static_cast<double>(sorted_distinct(std::move(delivered)).size());
    return report;
}

HopReport schedule_second_hop(const ChannelMatrix& h_rd, const LinkParams& params) {
    HopReport report;
    report.selections.assign(h_rd.n_rx, -1);
    std::vector<int> all_relays(h_rd.n_tx);
    for (int k = 0; k < h_rd.n_tx; ++k) all_relays[k] = k;
    std::vector<int> scheduled;
    for (int j = 0; j < h_rd.n_rx; ++j) {
        int best = 0;
        double best_gain = h_rd(0, j);
        for (int k = 1; k < h_rd.n_tx; ++k) {
            if (h_rd(k, j) > best_gain) {
                best = k;
                best_gain = h_rd(k, j);
            }
        }
        // Under a common interference total the SINR is increasing in the
        // gain, so the argmax-gain relay is also the argmax-SINR relay and
        // it passes iff any relay passes.
        if (link_succeeds(sinr(h_rd, all_relays, best, j, params.rho), params.beta0)) {
            report.selections[j] = best;
            ++report.successes;
            scheduled.push_back(best);
        }
    }
    std::vector<int> distinct = sorted_distinct(std::move(scheduled));
    report.distinct_event = static_cast<int>(distinct.size()) == report.successes;
    report.throughput_bits = params.r0 * static_cast<double>(distinct.size());
    return report;
}

TwoHopOutcome two_hop_trial(const RelayConfig& cfg, const Rng& trial_rng) {
    require_power_gains(cfg.model);
    const int n = cfg.n;
    const int m = cfg.m;
    TwoHopOutcome out;

    // Hop 1, pass A: per relay column, track the argmax source only.
    HopReport& h1 = out.first;
    h1.selections.resize(m);
    for (int j = 0; j < m; ++j) {
        Rng col = trial_rng.child(first_hop_stream_tag, static_cast<std::uint64_t>(j));
        int best = 0;
        double best_gain = cfg.model.sample(col);
        for (int i = 1; i < n; ++i) {
            double g = cfg.model.sample(col);
            if (g > best_gain) {
                best = i;
                best_gain = g;
            }
        }
        h1.selections[j] = best;
    }
    std::vector<int> active = sorted_distinct(h1.selections);
    h1.distinct_event = active.size() == h1.selections.size();
    out.first_distinct_sources = static_cast<int>(active.size());
    std::vector<char> is_active(n, 0);
    for (int i : active) is_active[i] = 1;

    // Hop 1, pass B: replay each column stream to rebuild signal and
    // interference; rows arrive in ascending order, matching the evaluation
    // order of sinr() on a materialized matrix.
    std::vector<int> delivered;
    for (int j = 0; j < m; ++j) {
        Rng col = trial_rng.child(first_hop_stream_tag, static_cast<std::uint64_t>(j));
        CompensatedSum interference;
        double signal = 0.0;
        for (int i = 0; i < n; ++i) {
            double g = cfg.model.sample(col);
            if (i == h1.selections[j]) {
                signal = g;
            } else if (is_active[i]) {
                interference.add(g);
            }
        }
        double s = signal / (1.0 / cfg.params.rho + interference.value());
        if (link_succeeds(s, cfg.params.beta0)) {
            ++h1.successes;
            delivered.push_back(h1.selections[j]);
        }
    }
    h1.throughput_bits =
        cfg.params.r0 * static_cast<double>(sorted_distinct(std::move(delivered)).size());

    // Hop 2: per destination column, one pass over the m stored gains.
    HopReport& h2 = out.second;
    h2.selections.assign(n, -1);
    std::vector<double> gains(m);
    std::vector<int> scheduled;
    for (int j = 0; j < n; ++j) {
        Rng col = trial_rng.child(second_hop_stream_tag, static_cast<std::uint64_t>(j));
        for (int k = 0; k < m; ++k) gains[k] = cfg.model.sample(col);
        int best = 0;
        for (int k = 1; k < m; ++k) {
            if (gains[k] > gains[best]) best = k;
        }
        CompensatedSum interference;
        for (int k = 0; k < m; ++k) {
            if (k != best) interference.add(gains[k]);
        }
        double s = gains[best] / (1.0 / cfg.params.rho + interference.value());
        if (link_succeeds(s, cfg.params.beta0)) {
            h2.selections[j] = best;
            ++h2.successes;
            scheduled.push_back(best);
        }
    }
    std::vector<int> distinct = sorted_distinct(std::move(scheduled));
    h2.distinct_event = static_cast<int>(distinct.size()) == h2.successes;
    h2.throughput_bits = cfg.params.r0 * static_cast<double>(distinct.size());
    out.second_scheduled = static_cast<int>(distinct.size());

    out.throughput_bits = 0.5 * std::min(h1.throughput_bits, h2.throughput_bits);
    return out;
}

double two_hop_throughput(const RelayConfig& cfg, const Rng& rng) {
    return two_hop_trial(cfg, rng).throughput_bits;
}

int optimal_sqrt_relay_count(int n) {
    if (n < 1) throw std::invalid_argument("optimal_sqrt_relay_count: n must be >= 1");
    long m = std::lround((n - 1.0) / std::sqrt(2.0 * n - 1.0));
    return static_cast<int>(std::max(1L, m));
}

RelayConfig pareto_linear_config(int n, double alpha, double rho) {
    if (!(alpha > 2.0))
        throw std::domain_error(
            "pareto_linear_config: alpha must be > 2 so the tail index 2/alpha is below 1");
    double nu = 2.0 / alpha;
    return RelayConfig(n, n, LinkParams(rho, 1.0 - nu), FadingModel::pareto_pathloss(alpha));
}

DistinctProbEstimate estimate_distinct_prob(int n, int m, int trials, Rng& rng) {
    if (n < 1) throw std::invalid_argument("estimate_distinct_prob: n must be >= 1");
    if (m < 1 || m > n) throw std::invalid_argument("estimate_distinct_prob: m outside [1, n]");
    if (trials < 1) throw std::invalid_argument("estimate_distinct_prob: trials must be >= 1");

    DistinctProbEstimate out;
    out.exact = prob_all_distinct(n, m);
    std::vector<int> stamp(n, 0);
    int hits = 0;
    for (int t = 1; t <= trials; ++t) {
        bool distinct = true;
        for (int k = 0; k < m; ++k) {
            auto idx = rng.uniform_index(static_cast<std::uint64_t>(n));
            if (stamp[idx] == t) {
                distinct = false;
                break;
            }
            stamp[idx] = t;
        }
        if (distinct) ++hits;
    }
    out.estimate = static_cast<double>(hits) / trials;
    out.std_err = std::sqrt(out.estimate * (1.0 - out.estimate) / trials);
    return out;
}

double scheduled_fraction(const RelayConfig& cfg, int trials, Rng& rng) {
    if (cfg.m != cfg.n)
        throw std::invalid_argument("scheduled_fraction: requires one relay per pair (m == n)");
    if (trials < 1) throw std::invalid_argument("scheduled_fraction: trials must be >= 1");
    const int n = cfg.n;
    std::vector<int> stamp(n, 0);
    CompensatedSum total;
    for (int t = 1; t <= trials; ++t) {
        int distinct = 0;
        for (int k = 0; k < n; ++k) {
            auto idx = rng.uniform_index(static_cast<std::uint64_t>(n));
            if (stamp[idx] != t) {
                stamp[idx] = t;
                ++distinct;
            }
        }
        total.add(static_cast<double>(distinct) / n);
    }
    return total.value() / trials;
}

void write_trial_records_csv(const std::vector<TwoHopOutcome>& outcomes, int m,
                             std::ostream& os) {
    os << "trial,hop,m,distinct_event,successes,throughput_bits\n";
    char buf[64];
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        const TwoHopOutcome& o = outcomes[t];
        for (int hop = 1; hop <= 2; ++hop) {
            const HopReport& r = hop == 1 ? o.first : o.second;
            std::snprintf(buf, sizeof buf, "%.17g", r.throughput_bits);
            os << t << ',' << hop << ',' << m << ',' << (r.distinct_event ? 1 : 0) << ','
               << r.successes << ',' << buf << '\n';
        }
    }
}

}  // namespace scaling_lab
