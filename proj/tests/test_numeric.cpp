#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "scaling_lab/numeric.hpp"

using namespace scaling_lab;

TEST_CASE("compensated sum survives catastrophic cancellation") {
    CompensatedSum s;
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 1.0);  // a naive sum returns 0 here

    s.reset();
    const int k = 1000000;
    for (int i = 0; i < k; ++i) s.add(0.1);
    CHECK(s.value() == doctest::Approx(0.1 * k).epsilon(1e-12));
}

TEST_CASE("compensated_total matches direct summation on benign data") {
    std::vector<double> xs{1.5, 2.5, 3.0, -1.0};
    CHECK(compensated_total(xs) == 6.0);
    CHECK(compensated_total(std::vector<double>{}) == 0.0);
}

TEST_CASE("log_choose reproduces small binomial coefficients") {
    CHECK(std::exp(log_choose(5, 2)) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::exp(log_choose(52, 5)) == doctest::Approx(2598960.0).epsilon(1e-10));
    CHECK(log_choose(7, 0) == doctest::Approx(0.0));
    CHECK(log_choose(7, 7) == doctest::Approx(0.0));
    CHECK_THROWS_AS(log_choose(5, 6), std::domain_error);
    CHECK_THROWS_AS(log_choose(5, -1), std::domain_error);
}

TEST_CASE("log_falling_factorial reproduces small products") {
    // 5*4*3 = 60
    CHECK(std::exp(log_falling_factorial(5, 3)) == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(log_falling_factorial(9, 0) == doctest::Approx(0.0));
}

TEST_CASE("sample_stats computes mean, sample variance and std err") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    SampleStats st = sample_stats(xs);
    CHECK(st.count == 4);
    CHECK(st.mean == doctest::Approx(2.5));
    CHECK(st.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(st.std_err == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)).epsilon(1e-12));
}

TEST_CASE("median handles odd, even and degenerate inputs") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
    CHECK(median({7.0}) == 7.0);
    CHECK_THROWS_AS(median({}), std::domain_error);
}
