#pragma once

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "scaling_lab/fading.hpp"
#include "scaling_lab/rng.hpp"

namespace scaling_lab {

// Dense gain matrix, gains(i,j) = power gain from transmitter i to receiver j.
struct ChannelMatrix {
    int n_tx = 0;
    int n_rx = 0;
    std::vector<double> gains;  // row-major, size n_tx * n_rx

    ChannelMatrix() = default;
    ChannelMatrix(int tx, int rx) : n_tx(tx), n_rx(rx), gains(static_cast<std::size_t>(tx) * rx) {}

    double operator()(int i, int j) const { return gains[static_cast<std::size_t>(i) * n_rx + j]; }
    double& operator()(int i, int j) { return gains[static_cast<std::size_t>(i) * n_rx + j]; }
};

struct LinkParams {
    double rho;    // linear SNR P/sigma_N^2
    double beta0;  // SINR threshold
    double r0;     // rate per successful link, ln(1+beta0)

    LinkParams(double rho_in, double beta0_in);
};

// Outcome of evaluating a fixed schedule (active transmitter set plus the
// links each receiver listens to) on one channel realization.
struct ScheduleOutcome {
    std::vector<int> active_tx;                    // ascending
    std::vector<std::pair<int, int>> successes;    // (tx, rx) links meeting the threshold
    double delivered_bits = 0.0;                   // r0 * distinct successful packets
};

// n_tx * n_rx i.i.d. draws in row-major order from a single stream; rejects
// models whose support dips below zero (gains are powers).
ChannelMatrix draw_channel(int n_tx, int n_rx, const FadingModel& model, Rng& rng);

// gamma_{i,j} / (1/rho + sum_{t in active, t != i} gamma_{t,j}); the
// interference sum uses compensated accumulation.  i must be in active.
double sinr(const ChannelMatrix& h, const std::vector<int>& active, int i, int j, double rho);

inline bool link_succeeds(double sinr_value, double beta0) { return sinr_value >= beta0; }

// Evaluates each (tx, rx) link in `links` under interference from the full
// active set; delivered_bits credits each distinct tx at most once.
ScheduleOutcome evaluate_schedule(const ChannelMatrix& h, const std::vector<int>& active,
                                  const std::vector<std::pair<int, int>>& links,
                                  const LinkParams& params);

// CSV dump: one row per transmitter, full round-trip precision.
void write_csv(const ChannelMatrix& h, std::ostream& os);

}  // namespace scaling_lab
