#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scaling_lab/channel.hpp"
#include "scaling_lab/fading.hpp"
#include "scaling_lab/genie.hpp"
#include "scaling_lab/rng.hpp"

using namespace scaling_lab;

namespace {

ChannelMatrix make(const std::vector<std::vector<double>>& rows) {
    ChannelMatrix h(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < h.n_tx; ++i)
        for (int j = 0; j < h.n_rx; ++j) h(i, j) = rows[i][j];
    return h;
}

// Reference single-hop search: test every subset directly.
int brute_force_single_hop(const ChannelMatrix& h, const LinkParams& params) {
    const int n = h.n_tx;
    int best = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> active;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) active.push_back(i);
        bool ok = true;
        for (int i : active)
            if (!link_succeeds(sinr(h, active, i, i, params.rho), params.beta0)) {
                ok = false;
                break;
            }
        if (ok) best = std::max(best, static_cast<int>(active.size()));
    }
    return best;
}

// Reference two-hop search: every source subset, every ordered assignment of
// distinct relays.
int brute_force_two_hop(const ChannelMatrix& h, const LinkParams& params) {
    const int n_src = h.n_tx;
    const int n_rel = h.n_rx;
    int best = 0;
    for (unsigned mask = 1; mask < (1u << n_src); ++mask) {
        std::vector<int> sources;
        for (int i = 0; i < n_src; ++i)
            if (mask & (1u << i)) sources.push_back(i);
        const int m = static_cast<int>(sources.size());
        if (m > n_rel || m <= best) continue;
        std::vector<int> relays(n_rel);
        for (int r = 0; r < n_rel; ++r) relays[r] = r;
        std::sort(relays.begin(), relays.end());
        bool found = false;
        // walk ordered m-subsets of relays via permutations of the first m
        std::vector<int> perm(relays);
        do {
            bool ok = true;
            for (int k = 0; k < m && ok; ++k)
                ok = link_succeeds(sinr(h, sources, sources[k], perm[k], params.rho),
                                   params.beta0);
            if (ok) {
                found = true;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (found) best = m;
    }
    return best;
}

}  // namespace

TEST_CASE("single-hop search finds the obvious sets") {
    LinkParams params(10.0, 1.0);

    // strong diagonal: both pairs can run together (SINR 25 each)
    ChannelMatrix good = make({{5.0, 0.1}, {0.1, 5.0}});
    GenieResult r = max_valid_single_hop(good, params);
    CHECK(r.m_star == 2);
    CHECK(r.witness_set == std::vector<int>{0, 1});
    CHECK(r.witness_assignment.empty());

    // strong cross gains kill the pair: only singletons are valid
    ChannelMatrix cross = make({{1.0, 2.0}, {2.0, 1.0}});
    CHECK(max_valid_single_hop(cross, params).m_star == 1);

    // nothing passes when every gain is tiny
    ChannelMatrix dead = make({{0.01, 0.0}, {0.0, 0.01}});
    GenieResult none = max_valid_single_hop(dead, params);
    CHECK(none.m_star == 0);
    CHECK(none.witness_set.empty());

    CHECK_THROWS_AS(max_valid_single_hop(make({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}), params),
                    std::invalid_argument);
}

TEST_CASE("two-hop search matches distinct relays to sources") {
    LinkParams params(10.0, 1.0);
    ChannelMatrix h = make({{5.0, 0.1}, {0.1, 5.0}});
    GenieResult r = max_valid_two_hop(h, params);
    CHECK(r.m_star == 2);
    REQUIRE(r.witness_set.size() == 2);
    REQUIRE(r.witness_assignment.size() == 2);
    // each witness link must individually clear the threshold
    for (std::size_t k = 0; k < r.witness_set.size(); ++k)
        CHECK(link_succeeds(
            sinr(h, r.witness_set, r.witness_set[k], r.witness_assignment[k], params.rho),
            params.beta0));
    // assigned relays are distinct
    std::vector<int> relays = r.witness_assignment;
    std::sort(relays.begin(), relays.end());
    CHECK(std::adjacent_find(relays.begin(), relays.end()) == relays.end());

    // threshold below one breaks the one-source-per-relay argument
    CHECK_THROWS_AS(max_valid_two_hop(h, LinkParams(10.0, 0.5)), std::domain_error);
}

TEST_CASE("exhaustive searches agree with the reference implementations") {
    LinkParams params(10.0, 1.0);
    FadingModel model = FadingModel::rayleigh(1.0);
    for (int inst = 0; inst < 25; ++inst) {
        int n = 2 + inst % 4;
        Rng rng(mix_seed(777, inst, n));
        ChannelMatrix h = draw_channel(n, n, model, rng);
        CHECK(max_valid_single_hop(h, params).m_star == brute_force_single_hop(h, params));
        CHECK(max_valid_two_hop(h, params).m_star == brute_force_two_hop(h, params));
        // relaying can only help: the diagonal assignment is one candidate
        CHECK(max_valid_two_hop(h, params).m_star >= max_valid_single_hop(h, params).m_star);
    }
}

TEST_CASE("count_valid_sets handles edges and matches m_star") {
    LinkParams params(10.0, 1.0);
    ChannelMatrix h = make({{5.0, 0.1}, {0.1, 5.0}});

    CHECK(count_valid_sets(h, 0, params, GenieMode::single_hop) == 1);  // empty set
    CHECK(count_valid_sets(h, 1, params, GenieMode::single_hop) == 2);
    CHECK(count_valid_sets(h, 2, params, GenieMode::single_hop) == 1);
    CHECK(count_valid_sets(h, 3, params, GenieMode::single_hop) == 0);
    CHECK_THROWS_AS(count_valid_sets(h, -1, params, GenieMode::single_hop),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_valid_sets(h, 1, LinkParams(10.0, 0.5), GenieMode::two_hop),
                    std::domain_error);

    // dropping a transmitter from a valid set leaves a valid set, so a
    // positive count at m implies a positive count at every smaller size
    FadingModel model = FadingModel::rayleigh(1.0);
    for (int inst = 0; inst < 10; ++inst) {
        Rng rng(mix_seed(778, inst, 5));
        ChannelMatrix g = draw_channel(5, 5, model, rng);
        GenieResult r = max_valid_single_hop(g, params);
        for (int m = 1; m <= r.m_star; ++m)
            CHECK(count_valid_sets(g, m, params, GenieMode::single_hop) > 0);
        for (int m = r.m_star + 1; m <= 5; ++m)
            CHECK(count_valid_sets(g, m, params, GenieMode::single_hop) == 0);
    }
}

TEST_CASE("size limits guard the exponential walk") {
    LinkParams params(10.0, 1.0);
    // diagonal-dominant 17x17: every pair valid, found in one subset check
    ChannelMatrix big(17, 17);
    for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 17; ++j) big(i, j) = (i == j) ? 1000.0 : 0.001;

    CHECK_THROWS_AS(max_valid_single_hop(big, params), std::length_error);
    GenieLimits lifted;
    lifted.accept_exponential_cost = true;
    CHECK(max_valid_single_hop(big, params, lifted).m_star == 17);

    ChannelMatrix thirteen(13, 13);
    for (int i = 0; i < 13; ++i)
        for (int j = 0; j < 13; ++j) thirteen(i, j) = (i == j) ? 1000.0 : 0.001;
    CHECK_THROWS_AS(max_valid_two_hop(thirteen, params), std::length_error);
}

TEST_CASE("expected count of valid sets: binomial first moment") {
    CHECK(expected_valid_sets(4, 2, 0.5) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(expected_valid_sets_log(4, 2, 0.5) ==
          doctest::Approx(std::log(1.5)).epsilon(1e-13));
    CHECK(expected_valid_sets(10, 3, 0.0) == 0.0);
    CHECK(std::isinf(expected_valid_sets_log(10, 3, 0.0)));
    CHECK(expected_valid_sets(10, 0, 0.3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(expected_valid_sets(10, 3, 1.5), std::domain_error);
    CHECK_THROWS_AS(expected_valid_sets(10, 11, 0.5), std::domain_error);
}
