#pragma once

#include <optional>
#include <vector>

#include "scaling_lab/channel.hpp"

namespace scaling_lab {

enum class GenieMode { single_hop, two_hop };

// Exhaustive-search size guards.  The subset walk is exponential in n; the
// defaults keep a full test run in minutes.  Set accept_exponential_cost to
// lift the caps deliberately.
struct GenieLimits {
    int single_hop_max_n = 16;
    int two_hop_max_n = 12;
    bool accept_exponential_cost = false;
};

struct GenieResult {
    int m_star = 0;
    std::vector<int> witness_set;         // transmitter indices, ascending
    std::vector<int> witness_assignment;  // relay per witness entry; empty for single-hop
    std::optional<long long> valid_count;
};

// Largest S with every pair link i->i passing the threshold under
// interference from all of S.  Subset walk descends in size and stops at the
// first valid set.  H must be square (pair i talks to receiver i).
GenieResult max_valid_single_hop(const ChannelMatrix& h, const LinkParams& params,
                                 const GenieLimits& limits = {});

// Largest source subset S admitting an injective relay assignment with every
// assigned link passing under interference from all of S.  Feasibility of a
// link depends only on S, so per subset it suffices to test the bipartite
// success graph for a perfect matching instead of walking all |S|!
// assignments.  Requires beta0 >= 1 (at rates of 1 bit/s/Hz and up, a relay
// can decode at most one source, which is what makes the injective
// assignment the right model).
GenieResult max_valid_two_hop(const ChannelMatrix& h, const LinkParams& params,
                              const GenieLimits& limits = {});

// X(m): number of valid size-m sets.  two_hop counts subsets that admit at
// least one perfect matching (not subset-assignment pairs).
long long count_valid_sets(const ChannelMatrix& h, int m, const LinkParams& params,
                           GenieMode mode, const GenieLimits& limits = {});

// E[X(m)] = C(n,m) * p^m under i.i.d. per-link success; log-space evaluation.
double expected_valid_sets(double n, double m, double p);
double expected_valid_sets_log(double n, double m, double p);  // ln E[X(m)], -inf when p = 0

}  // namespace scaling_lab
