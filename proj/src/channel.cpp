#include "scaling_lab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "scaling_lab/numeric.hpp"

namespace scaling_lab {

LinkParams::LinkParams(double rho_in, double beta0_in) : rho(rho_in), beta0(beta0_in) {
    if (!(rho > 0.0)) throw std::invalid_argument("LinkParams: rho must be > 0");
    if (!(beta0 > 0.0)) throw std::invalid_argument("LinkParams: beta0 must be > 0");
    r0 = std::log1p(beta0);
}

ChannelMatrix draw_channel(int n_tx, int n_rx, const FadingModel& model, Rng& rng) {
    if (n_tx < 1 || n_rx < 1) throw std::invalid_argument("draw_channel: dimensions must be >= 1");
    if (model.support_min() < 0.0)
        throw std::domain_error("draw_channel: model support extends below zero; "
                                "power gains must be nonnegative");
    ChannelMatrix h(n_tx, n_rx);
    for (double& g : h.gains) g = model.sample(rng);
    return h;
}

double sinr(const ChannelMatrix& h, const std::vector<int>& active, int i, int j, double rho) {
    if (std::find(active.begin(), active.end(), i) == active.end())
        throw std::domain_error("sinr: transmitter i not in the active set");
    CompensatedSum interference;
    for (int t : active) {
        if (t != i) interference.add(h(t, j));
    }
    return h(i, j) / (1.0 / rho + interference.value());
}

ScheduleOutcome evaluate_schedule(const ChannelMatrix& h, const std::vector<int>& active,
                                  const std::vector<std::pair<int, int>>& links,
                                  const LinkParams& params) {
    ScheduleOutcome out;
    out.active_tx = active;
    std::sort(out.active_tx.begin(), out.active_tx.end());
    std::vector<int> delivered;  // distinct transmitters with a successful link
    for (const auto& [tx, rx] : links) {
        if (link_succeeds(sinr(h, active, tx, rx, params.rho), params.beta0)) {
            out.successes.emplace_back(tx, rx);
            delivered.push_back(tx);
        }
    }
    std::sort(delivered.begin(), delivered.end());
    delivered.erase(std::unique(delivered.begin(), delivered.end()), delivered.end());
    out.delivered_bits = params.r0 * static_cast<double>(delivered.size());
    return out;
}

void write_csv(const ChannelMatrix& h, std::ostream& os) {
    char buf[32];
    for (int j = 0; j < h.n_rx; ++j) {
        if (j > 0) os << ',';
        os << "rx" << j;
    }
    os << '\n';
    for (int i = 0; i < h.n_tx; ++i) {
        for (int j = 0; j < h.n_rx; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", h(i, j));
            if (j > 0) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace scaling_lab
