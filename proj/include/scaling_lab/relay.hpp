#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "scaling_lab/channel.hpp"
#include "scaling_lab/fading.hpp"
#include "scaling_lab/rng.hpp"

namespace scaling_lab {

// Two-hop opportunistic relaying: n source-destination pairs assisted by m
// relays.  Hop 1: every relay listens and schedules the source it hears
// best.  Hop 2: every destination measures all m relays and, when the best
// one clears the threshold, feeds its index back so that relay transmits.
struct RelayConfig {
    int n = 0;  // source-destination pair count
    int m = 0;  // relay count
    LinkParams params;
    FadingModel model;

    RelayConfig(int n_in, int m_in, LinkParams params_in, FadingModel model_in);
};

struct HopReport {
    // Per receiver: chosen transmitter index, or -1 when it made no
    // selection (second hop, no relay cleared the threshold).
    std::vector<int> selections;
    bool distinct_event = true;  // all selections made are distinct
    int successes = 0;           // receivers whose selected link passed
    double throughput_bits = 0.0;
};

struct TwoHopOutcome {
    HopReport first;
    HopReport second;
    double throughput_bits = 0.0;   // 0.5 * min(first, second)
    int first_distinct_sources = 0; // distinct sources scheduled in hop 1
    int second_scheduled = 0;       // distinct relays scheduled in hop 2
};

// Stream tags: column j of a hop matrix is drawn from
// trial_rng.child(tag, j), one gain per row in row order.  Fixed so matrix
// and streaming evaluations of the same trial agree bit for bit.
inline constexpr std::uint64_t first_hop_stream_tag = 1;
inline constexpr std::uint64_t second_hop_stream_tag = 2;

// Materializes a hop matrix from the per-column child streams (testing and
// diagnostics; the trial path never builds it).
ChannelMatrix draw_hop_matrix(int n_tx, int n_rx, const FadingModel& model, const Rng& trial_rng,
                              std::uint64_t tag);

// Per relay column j: the source with the largest gain, lowest index on
// ties.  h_sr is sources x relays.
std::vector<int> schedule_first_hop(const ChannelMatrix& h_sr);

// Runs the first hop on a drawn matrix: distinct selected sources transmit,
// relay j succeeds iff its selected link clears the threshold under that
// active set.  Duplicate decodes of one source count once toward
// throughput_bits.
HopReport first_hop_throughput(const ChannelMatrix& h_sr, const LinkParams& params);

// Runs the second hop: h_rd is relays x destinations.  Destination j picks
// the relay with the best SINR under all-m interference (equivalently the
// largest gain) and feeds back its index iff that SINR clears the
// threshold.  A relay picked by several destinations serves the lowest
// destination index; throughput credits each scheduled relay once.
HopReport schedule_second_hop(const ChannelMatrix& h_rd, const LinkParams& params);

// One fading realization of the full scheme, drawing both hops from the
// trial stream without materializing either matrix (hop 1 replays each
// column's stream to rebuild the interference sum).  Bit-identical to
// running the matrix operations above on draw_hop_matrix outputs.
TwoHopOutcome two_hop_trial(const RelayConfig& cfg, const Rng& trial_rng);

// throughput_bits of one realization: 0.5 * min(hop throughputs).
double two_hop_throughput(const RelayConfig& cfg, const Rng& rng);

// Relay count that maximizes the extremal-fading two-hop rate: the
// interference budget supports about sqrt(n/2) concurrent streams.
int optimal_sqrt_relay_count(int n);

// Heavy-tail linear-rate operating point: every pair gets a relay (m = n)
// and the threshold is backed off to beta0 = 1 - 2/alpha so that a constant
// fraction of links clears it.  Requires alpha > 2.
RelayConfig pareto_linear_config(int n, double alpha, double rho = 10.0);

// Pr[first-hop selections all distinct].  exact is the product formula
// prod_{k<m}(1 - k/n); estimate simulates selections directly (for i.i.d.
// continuous gains each relay's argmax source is uniform on the n sources,
// so the selection law needs no gain draws).
struct DistinctProbEstimate {
    double exact = 1.0;
    double estimate = 1.0;
    double std_err = 0.0;
};

DistinctProbEstimate estimate_distinct_prob(int n, int m, int trials, Rng& rng);

// Monte Carlo mean of (distinct selected sources)/n in the first hop when
// every pair gets a relay (requires cfg.m == cfg.n); tends to 1 - 1/e.
// Uses the same uniform-selection law as estimate_distinct_prob.
double scheduled_fraction(const RelayConfig& cfg, int trials, Rng& rng);

// Per-trial record stream: columns trial,hop,m,distinct_event,successes,
// throughput_bits (two rows per trial).
void write_trial_records_csv(const std::vector<TwoHopOutcome>& outcomes, int m, std::ostream& os);

}  // namespace scaling_lab
