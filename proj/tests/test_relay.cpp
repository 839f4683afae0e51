#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "scaling_lab/bounds.hpp"
#include "scaling_lab/channel.hpp"
#include "scaling_lab/fading.hpp"
#include "scaling_lab/relay.hpp"
#include "scaling_lab/rng.hpp"

using namespace scaling_lab;

namespace {

ChannelMatrix make(const std::vector<std::vector<double>>& rows) {
    ChannelMatrix h(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < h.n_tx; ++i)
        for (int j = 0; j < h.n_rx; ++j) h(i, j) = rows[i][j];
    return h;
}

}  // namespace

TEST_CASE("first hop: each relay picks its loudest source, lowest index on ties") {
    // 3 sources x 2 relays
    ChannelMatrix h = make({{1.0, 3.0}, {2.0, 1.0}, {0.5, 0.5}});
    CHECK(schedule_first_hop(h) == std::vector<int>{1, 0});

    ChannelMatrix tie = make({{2.0}, {2.0}});
    CHECK(schedule_first_hop(tie) == std::vector<int>{0});
}

TEST_CASE("first hop throughput: distinct selections all decode") {
    LinkParams params(10.0, 1.0);
    ChannelMatrix h = make({{5.0, 0.1}, {0.1, 5.0}, {0.1, 0.1}});
    HopReport r = first_hop_throughput(h, params);
    CHECK(r.selections == std::vector<int>{0, 1});
    CHECK(r.distinct_event);
    CHECK(r.successes == 2);  // both SINRs are 5 / (0.1 + 0.1) = 25
    CHECK(r.throughput_bits == doctest::Approx(2.0 * params.r0).epsilon(1e-14));
}

TEST_CASE("first hop throughput: duplicate decodes of one source count once") {
    LinkParams params(10.0, 1.0);
    // both relays pick source 0; it transmits alone, so both links succeed
    ChannelMatrix h = make({{10.0, 9.0}, {0.1, 0.1}});
    HopReport r = first_hop_throughput(h, params);
    CHECK(r.selections == std::vector<int>{0, 0});
    CHECK_FALSE(r.distinct_event);
    CHECK(r.successes == 2);
    CHECK(r.throughput_bits == doctest::Approx(params.r0).epsilon(1e-14));
}

TEST_CASE("second hop: destination schedules the best relay iff it clears the bar") {
    LinkParams params(10.0, 1.0);
    // 2 relays x 1 destination
    HopReport pass = schedule_second_hop(make({{5.0}, {0.1}}), params);
    CHECK(pass.selections == std::vector<int>{0});
    CHECK(pass.successes == 1);
    CHECK(pass.throughput_bits == doctest::Approx(params.r0).epsilon(1e-14));

    // exact dyadic tie with rho = 8: 0.5 / (0.125 + 0.375) = 1.0 passes
    LinkParams dyadic(8.0, 1.0);
    HopReport tie = schedule_second_hop(make({{0.5}, {0.375}}), dyadic);
    CHECK(tie.selections == std::vector<int>{0});
    CHECK(tie.successes == 1);

    // best relay: 0.2 / (0.1 + 0.15) = 0.8 < 1: no feedback at all
    HopReport fail = schedule_second_hop(make({{0.15}, {0.2}}), params);
    CHECK(fail.selections == std::vector<int>{-1});
    CHECK(fail.successes == 0);
    CHECK(fail.throughput_bits == 0.0);

    // one relay wanted by two destinations is credited once
    HopReport shared = schedule_second_hop(make({{5.0, 5.0}}), params);
    CHECK(shared.selections == std::vector<int>{0, 0});
    CHECK(shared.successes == 2);
    CHECK_FALSE(shared.distinct_event);
    CHECK(shared.throughput_bits == doctest::Approx(params.r0).epsilon(1e-14));
}

TEST_CASE("streaming trial is bit-identical to the matrix evaluation") {
    for (const FadingModel& model :
         {FadingModel::rayleigh(1.0), FadingModel::extremal_mv(1.0, 1.0, 64),
          FadingModel::pareto_pathloss(4.0)}) {
        RelayConfig cfg(7, 3, LinkParams(10.0, 1.0), model);
        for (std::uint64_t seed : {1ULL, 12345ULL, 0xDEADBEEFULL}) {
            Rng trial_rng(seed);
            TwoHopOutcome out = two_hop_trial(cfg, trial_rng);

            ChannelMatrix h_sr = draw_hop_matrix(7, 3, model, trial_rng, first_hop_stream_tag);
            ChannelMatrix h_rd = draw_hop_matrix(3, 7, model, trial_rng, second_hop_stream_tag);
            HopReport hop1 = first_hop_throughput(h_sr, cfg.params);
            HopReport hop2 = schedule_second_hop(h_rd, cfg.params);

            CHECK(out.first.selections == hop1.selections);
            CHECK(out.second.selections == hop2.selections);
            CHECK(out.first.successes == hop1.successes);
            CHECK(out.second.successes == hop2.successes);
            CHECK(out.first.throughput_bits == hop1.throughput_bits);    // exact
            CHECK(out.second.throughput_bits == hop2.throughput_bits);   // exact
            CHECK(out.throughput_bits ==
                  0.5 * std::min(hop1.throughput_bits, hop2.throughput_bits));
            CHECK(out.first.distinct_event == hop1.distinct_event);

            CHECK(two_hop_throughput(cfg, trial_rng) == out.throughput_bits);
        }
    }
}

TEST_CASE("relabeling sources permutes selections but not throughput") {
    FadingModel model = FadingModel::rayleigh(1.0);
    Rng rng(99);
    ChannelMatrix h = draw_channel(6, 4, model, rng);
    ChannelMatrix swapped = h;
    for (int j = 0; j < 4; ++j) std::swap(swapped(0, j), swapped(1, j));
    LinkParams params(10.0, 1.0);
    HopReport a = first_hop_throughput(h, params);
    HopReport b = first_hop_throughput(swapped, params);
    CHECK(a.throughput_bits == b.throughput_bits);
    CHECK(a.successes == b.successes);
    CHECK(a.distinct_event == b.distinct_event);
}

TEST_CASE("scheduled second-hop links really clear the threshold") {
    FadingModel model = FadingModel::extremal_mv(1.0, 1.0, 128);
    LinkParams params(10.0, 1.0);
    Rng rng(4242);
    ChannelMatrix h_rd = draw_channel(8, 128, model, rng);
    HopReport hop2 = schedule_second_hop(h_rd, params);
    std::vector<int> all_relays;
    for (int r = 0; r < 8; ++r) all_relays.push_back(r);
    for (int j = 0; j < 128; ++j) {
        int sel = hop2.selections[j];
        if (sel < 0) continue;
        CHECK(link_succeeds(sinr(h_rd, all_relays, sel, j, params.rho), params.beta0));
        // and it is the gain argmax of the column
        for (int r = 0; r < 8; ++r) CHECK(h_rd(sel, j) >= h_rd(r, j));
    }
}

TEST_CASE("relay config validation") {
    FadingModel model = FadingModel::rayleigh(1.0);
    CHECK_THROWS_AS(RelayConfig(0, 1, LinkParams(10.0, 1.0), model), std::invalid_argument);
    CHECK_THROWS_AS(RelayConfig(4, 0, LinkParams(10.0, 1.0), model), std::invalid_argument);
}

TEST_CASE("square-root relay rule") {
    CHECK(optimal_sqrt_relay_count(256) == 11);
    CHECK(optimal_sqrt_relay_count(512) == 16);
    CHECK(optimal_sqrt_relay_count(1024) == 23);
    CHECK(optimal_sqrt_relay_count(2048) == 32);
    CHECK(optimal_sqrt_relay_count(4096) == 45);
    CHECK(optimal_sqrt_relay_count(8192) == 64);
    CHECK(optimal_sqrt_relay_count(16384) == 91);
    CHECK(optimal_sqrt_relay_count(2) == 1);
    CHECK(optimal_sqrt_relay_count(1) == 1);
}

TEST_CASE("heavy-tail linear operating point") {
    RelayConfig cfg = pareto_linear_config(100, 4.0);
    CHECK(cfg.n == 100);
    CHECK(cfg.m == 100);
    CHECK(cfg.params.beta0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cfg.params.r0 == doctest::Approx(std::log(1.5)).epsilon(1e-14));
    CHECK(cfg.params.rho == 10.0);
    CHECK(cfg.model.family() == Family::pareto_pathloss);
    CHECK(cfg.model.alpha() == 4.0);
    CHECK_THROWS_AS(pareto_linear_config(100, 2.0), std::domain_error);
    CHECK(pareto_linear_config(10, 3.0).params.beta0 ==
          doctest::Approx(1.0 - 2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("distinct-selection probability: exact product plus simulation") {
    Rng rng(0xD15);
    DistinctProbEstimate small = estimate_distinct_prob(3, 2, 50000, rng);
    CHECK(small.exact == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(small.estimate - small.exact) <= 3.0 * small.std_err + 1e-12);

    DistinctProbEstimate one = estimate_distinct_prob(10, 1, 100, rng);
    CHECK(one.exact == 1.0);
    CHECK(one.estimate == 1.0);

    DistinctProbEstimate mid = estimate_distinct_prob(100, 10, 50000, rng);
    CHECK(mid.exact == doctest::Approx(prob_all_distinct(100, 10)).epsilon(1e-14));
    CHECK(std::abs(mid.estimate - mid.exact) <= 3.0 * mid.std_err + 1e-12);
}

TEST_CASE("fraction of sources scheduled when every pair gets a relay") {
    FadingModel model = FadingModel::rayleigh(1.0);
    LinkParams params(10.0, 1.0);

    Rng rng(0x5CED);
    RelayConfig one(1, 1, params, model);
    CHECK(scheduled_fraction(one, 200, rng) == 1.0);

    RelayConfig two(2, 2, params, model);
    // distinct selections w.p. 1/2: mean fraction = (2 + 1)/2 / 2 = 3/4
    CHECK(scheduled_fraction(two, 40000, rng) == doctest::Approx(0.75).epsilon(0.02));

    RelayConfig big(1000, 1000, params, model);
    CHECK(scheduled_fraction(big, 2000, rng) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.01));

    RelayConfig lopsided(4, 2, params, model);
    CHECK_THROWS_AS(scheduled_fraction(lopsided, 10, rng), std::invalid_argument);
}

TEST_CASE("trial records csv: two rows per realization") {
    RelayConfig cfg(4, 2, LinkParams(10.0, 1.0), FadingModel::rayleigh(1.0));
    std::vector<TwoHopOutcome> outcomes;
    outcomes.push_back(two_hop_trial(cfg, Rng(1)));
    outcomes.push_back(two_hop_trial(cfg, Rng(2)));
    std::ostringstream os;
    write_trial_records_csv(outcomes, cfg.m, os);
    std::string text = os.str();
    CHECK(text.rfind("trial,hop,m,distinct_event,successes,throughput_bits\n", 0) == 0);
    int newlines = 0;
    for (char c : text)
        if (c == '\n') ++newlines;
    CHECK(newlines == 1 + 2 * 2);
}
