#include "scaling_lab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "scaling_lab/numeric.hpp"

namespace scaling_lab {

double feige_lower(double delta) {
    if (!(delta > 0.0)) throw std::domain_error("feige_lower: delta must be > 0");
    return std::min(delta / (1.0 + delta), 1.0 / 13.0);
}

double maurer_lower_tail(double n_terms, double x, double sum_second_moment) {
    if (!(n_terms > 0.0)) throw std::domain_error("maurer_lower_tail: n_terms must be > 0");
    if (!(x > 0.0)) throw std::domain_error("maurer_lower_tail: x must be > 0");
    if (!(sum_second_moment > 0.0))
        throw std::domain_error("maurer_lower_tail: sum of second moments must be > 0");
    return std::exp(-(n_terms * n_terms * x * x) / (2.0 * sum_second_moment));
}

double chebyshev_signal_tail(double mean, double variance, double beta0, double rho, double s) {
    if (!(variance >= 0.0)) throw std::domain_error("chebyshev_signal_tail: variance must be >= 0");
    if (!(beta0 > 0.0)) throw std::domain_error("chebyshev_signal_tail: beta0 must be > 0");
    if (!(rho > 0.0)) throw std::domain_error("chebyshev_signal_tail: rho must be > 0");
    double deviation = beta0 * s + beta0 / rho - mean;
    if (!(deviation > 0.0))
        throw std::domain_error(
            "chebyshev_signal_tail: need beta0 * (1/rho + s) > mean for a one-sided bound");
    return std::min(1.0, variance / (deviation * deviation));
}

SinrUpperBound sinr_success_upper_at(double m, double mean, double variance, double beta0,
                                     double rho, double s) {
    if (!(m >= 2.0)) throw std::domain_error("sinr_success_upper: m must be >= 2");
    if (!(mean > 0.0)) throw std::domain_error("sinr_success_upper: mean must be > 0");
    if (!(s > 0.0)) throw std::domain_error("sinr_success_upper: split point s must be > 0");
    double n_terms = m - 1.0;
    double expected = n_terms * mean;
    if (!(s < expected))
        throw std::domain_error(
            "sinr_success_upper: split point must sit below the expected interference");

    SinrUpperBound b;
    b.s = s;
    // Pr[I <= s] = Pr[I <= E[I] - n_terms * x] with x = (E[I] - s)/n_terms.
    double x = (expected - s) / n_terms;
    b.exp_term = maurer_lower_tail(n_terms, x, n_terms * (mean * mean + variance));
    b.chebyshev_term = chebyshev_signal_tail(mean, variance, beta0, rho, s);
    b.raw = b.exp_term + b.chebyshev_term;
    b.value = std::min(1.0, b.raw);
    return b;
}

SinrUpperBound sinr_success_upper(double m, double mean, double variance, double beta0,
                                  double rho) {
    if (!(m >= 2.0)) throw std::domain_error("sinr_success_upper: m must be >= 2");
    return sinr_success_upper_at(m, mean, variance, beta0, rho, (m - 1.0) * mean / 2.0);
}

namespace {

double check_probability(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error(std::string(who) + ": p outside [0, 1]");
    return p;
}

}  // namespace

double genie_existence_upper_log(double n, double m, double p, GenieMode mode) {
    check_probability(p, "genie_existence_upper");
    if (m > n) throw std::domain_error("genie_existence_upper: m > n");
    if (m == 0.0) return 0.0;
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    double log_count = mode == GenieMode::single_hop
                           ? m * (std::log(n) + 1.0 - std::log(m))  // C(n,m) <= (n e / m)^m
                           : log_falling_factorial(n, m);           // C(n,m) m!
    return log_count + m * std::log(p);
}

double genie_existence_upper(double n, double m, double p, GenieMode mode) {
    return std::exp(genie_existence_upper_log(n, m, p, mode));
}

double genie_existence_upper_loose_log(double n, double m, double p) {
    check_probability(p, "genie_existence_upper_loose");
    if (m > n) throw std::domain_error("genie_existence_upper_loose: m > n");
    if (m == 0.0) return 0.0;
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    return m * std::log(n) + m * std::log(p);
}

double genie_existence_upper_loose(double n, double m, double p) {
    return std::exp(genie_existence_upper_loose_log(n, m, p));
}

double prob_all_distinct(double n, double m) {
    if (!(n >= 1.0)) throw std::domain_error("prob_all_distinct: n must be >= 1");
    if (m < 0.0 || m > n) throw std::domain_error("prob_all_distinct: m outside [0, n]");
    CompensatedSum log_prod;
    for (double k = 1.0; k < m; k += 1.0) log_prod.add(std::log1p(-k / n));
    return std::exp(log_prod.value());
}

double prob_all_distinct_lower(double n, double m) {
    if (!(n >= 1.0)) throw std::domain_error("prob_all_distinct_lower: n must be >= 1");
    if (m < 0.0 || m > n) throw std::domain_error("prob_all_distinct_lower: m outside [0, n]");
    if (m == 0.0) return 1.0;
    return std::exp(m * std::log((n - m + 1.0) / n));
}

void write_bound_curves_csv(const std::vector<BoundCurve>& curves, std::ostream& os) {
    os << "parameter,bound_value,kind\n";
    char buf[64];
    for (const auto& curve : curves) {
        for (const auto& pt : curve.points) {
            std::snprintf(buf, sizeof buf, "%.17g", pt.parameter);
            os << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", pt.value);
            os << buf << ',' << curve.kind << '\n';
        }
    }
}

}  // namespace scaling_lab
