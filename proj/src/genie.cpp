#include "scaling_lab/genie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scaling_lab/numeric.hpp"

namespace scaling_lab {

namespace {

void check_limit(int n, int limit, const char* what, const GenieLimits& limits) {
    if (limits.accept_exponential_cost) return;
    if (n > limit) {
        throw std::length_error(std::string(what) + ": n=" + std::to_string(n) +
                                " exceeds the exhaustive-search limit " + std::to_string(limit) +
                                " (set accept_exponential_cost to proceed anyway)");
    }
}

// Walks all size-m subsets of {0..n-1} in lexicographic order; visit returns
// true to keep the subset walk going, false to stop early.
template <typename Visit>
void for_each_subset(int n, int m, Visit visit) {
    if (m > n) return;
    std::vector<int> idx(m);
    for (int k = 0; k < m; ++k) idx[k] = k;
    while (true) {
        if (!visit(idx)) return;
        int k = m - 1;
        while (k >= 0 && idx[k] == n - m + k) --k;
        if (k < 0) return;
        ++idx[k];
        for (int t = k + 1; t < m; ++t) idx[t] = idx[t - 1] + 1;
    }
}

bool single_hop_valid(const ChannelMatrix& h, const std::vector<int>& subset,
                      const LinkParams& params) {
    for (int i : subset) {
        if (!link_succeeds(sinr(h, subset, i, i, params.rho), params.beta0)) return false;
    }
    return true;
}

// Success graph for a fixed source subset: adj[k] lists the relays that can
// decode subset[k] while all of subset transmits.
std::vector<std::vector<int>> success_graph(const ChannelMatrix& h, const std::vector<int>& subset,
                                            const LinkParams& params) {
    std::vector<std::vector<int>> adj(subset.size());
    for (std::size_t k = 0; k < subset.size(); ++k) {
        for (int j = 0; j < h.n_rx; ++j) {
            if (link_succeeds(sinr(h, subset, subset[k], j, params.rho), params.beta0))
                adj[k].push_back(j);
        }
    }
    return adj;
}

// Augmenting-path maximum bipartite matching; returns match size and fills
// relay_of (source slot -> relay index, -1 when unmatched).
int max_matching(const std::vector<std::vector<int>>& adj, int n_right,
                 std::vector<int>& relay_of) {
    const int n_left = static_cast<int>(adj.size());
    std::vector<int> owner(n_right, -1);  // relay -> source slot
    std::vector<char> visited(n_right);
    relay_of.assign(n_left, -1);

    auto augment = [&](auto&& self, int k) -> bool {
        for (int j : adj[k]) {
            if (visited[j]) continue;
            visited[j] = 1;
            if (owner[j] < 0 || self(self, owner[j])) {
                owner[j] = k;
                relay_of[k] = j;
                return true;
            }
        }
        return false;
    };

    int matched = 0;
    for (int k = 0; k < n_left; ++k) {
        std::fill(visited.begin(), visited.end(), 0);
        if (augment(augment, k)) ++matched;
    }
    return matched;
}

bool two_hop_valid(const ChannelMatrix& h, const std::vector<int>& subset,
                   const LinkParams& params, std::vector<int>& relay_of) {
    auto adj = success_graph(h, subset, params);
    for (const auto& v : adj) {
        if (v.empty()) return false;
    }
    return max_matching(adj, h.n_rx, relay_of) == static_cast<int>(subset.size());
}

}  // namespace

GenieResult max_valid_single_hop(const ChannelMatrix& h, const LinkParams& params,
                                 const GenieLimits& limits) {
    if (h.n_tx != h.n_rx) throw std::invalid_argument("max_valid_single_hop: matrix must be square");
    const int n = h.n_tx;
    check_limit(n, limits.single_hop_max_n, "max_valid_single_hop", limits);

    GenieResult result;
    for (int m = n; m >= 1; --m) {
        bool found = false;
        for_each_subset(n, m, [&](const std::vector<int>& subset) {
            if (single_hop_valid(h, subset, params)) {
                result.m_star = m;
                result.witness_set = subset;
                found = true;
                return false;
            }
            return true;
        });
        if (found) return result;
    }
    return result;  // m_star = 0: even singletons fail
}

GenieResult max_valid_two_hop(const ChannelMatrix& h, const LinkParams& params,
                              const GenieLimits& limits) {
    if (params.beta0 < 1.0)
        throw std::domain_error("max_valid_two_hop: beta0 >= 1 required (below 1 bit/s/Hz a relay "
                                "could decode several sources and the one-source-per-relay "
                                "assignment model breaks down)");
    check_limit(std::max(h.n_tx, h.n_rx), limits.two_hop_max_n, "max_valid_two_hop", limits);

    GenieResult result;
    std::vector<int> relay_of;
    const int max_m = std::min(h.n_tx, h.n_rx);
    for (int m = max_m; m >= 1; --m) {
        bool found = false;
        for_each_subset(h.n_tx, m, [&](const std::vector<int>& subset) {
            if (two_hop_valid(h, subset, params, relay_of)) {
                result.m_star = m;
                result.witness_set = subset;
                result.witness_assignment = relay_of;
                found = true;
                return false;
            }
            return true;
        });
        if (found) return result;
    }
    return result;
}

long long count_valid_sets(const ChannelMatrix& h, int m, const LinkParams& params,
                           GenieMode mode, const GenieLimits& limits) {
    if (m < 0) throw std::invalid_argument("count_valid_sets: m must be >= 0");
    if (m == 0) return 1;  // the empty set is vacuously valid
    if (m > h.n_tx) return 0;
    if (mode == GenieMode::single_hop) {
        if (h.n_tx != h.n_rx)
            throw std::invalid_argument("count_valid_sets: single-hop matrix must be square");
        check_limit(h.n_tx, limits.single_hop_max_n, "count_valid_sets", limits);
    } else {
        if (params.beta0 < 1.0)
            throw std::domain_error("count_valid_sets: beta0 >= 1 required in two-hop mode");
        if (m > h.n_rx) return 0;
        check_limit(std::max(h.n_tx, h.n_rx), limits.two_hop_max_n, "count_valid_sets", limits);
    }

    long long count = 0;
    std::vector<int> relay_of;
    for_each_subset(h.n_tx, m, [&](const std::vector<int>& subset) {
        bool ok = mode == GenieMode::single_hop ? single_hop_valid(h, subset, params)
                                                : two_hop_valid(h, subset, params, relay_of);
        if (ok) ++count;
        return true;
    });
    return count;
}

double expected_valid_sets_log(double n, double m, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("expected_valid_sets: p outside [0,1]");
    if (m > n) throw std::domain_error("expected_valid_sets: m > n");
    if (m == 0.0) return 0.0;
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    return log_choose(n, m) + m * std::log(p);
}

double expected_valid_sets(double n, double m, double p) {
    return std::exp(expected_valid_sets_log(n, m, p));
}

}  // namespace scaling_lab
