#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scaling_lab/genie.hpp"

namespace scaling_lab {

// Lower bound on Pr[ sum_{i<=k} X_i < E[sum] + delta ] for independent
// nonnegative X_i with unit mean:
//
//   Pr[ S < k + delta ] >= min( delta / (1 + delta), 1/13 )
//
// Holds uniformly in k and in the (possibly k-dependent) distributions.
double feige_lower(double delta);

// Lower-tail bound for a sum S of n_terms independent nonnegative variables:
//
//   Pr[ S <= E[S] - n_terms * x ] <= exp( - n_terms^2 x^2 / (2 * sum E[X_i^2]) )
//
// sum_second_moment = sum of E[X_i^2] over the terms.
double maurer_lower_tail(double n_terms, double x, double sum_second_moment);

// Chebyshev bound on the signal gain being large enough to pass the
// threshold when the interference is at most s:
//
//   Pr[ G >= beta0 (1/rho + s) ] <= min(1, variance / (beta0 s + beta0/rho - mean)^2)
//
// Requires beta0 (1/rho + s) > mean so the deviation is positive.
double chebyshev_signal_tail(double mean, double variance, double beta0, double rho, double s);

// Upper bound on a single link's success probability against m-1 interferers
// drawn from the same unit-family: split at interference level s,
//
//   Pr[SINR >= beta0] <= Pr[I <= s] + Pr[G >= beta0 (1/rho + s)]
//
// with the first term bounded by maurer_lower_tail and the second by
// chebyshev_signal_tail.
struct SinrUpperBound {
    double value = 1.0;           // min(1, raw)
    double raw = 1.0;             // exp_term + chebyshev_term, can exceed 1
    double exp_term = 1.0;        // interference lower-tail piece
    double chebyshev_term = 1.0;  // signal upper-tail piece
    double s = 0.0;               // split point used
};

SinrUpperBound sinr_success_upper_at(double m, double mean, double variance, double beta0,
                                     double rho, double s);

// Same, at the canonical split s = (m-1) * mean / 2.  Requires m >= 2.
SinrUpperBound sinr_success_upper(double m, double mean, double variance, double beta0,
                                  double rho);

// Upper bounds on Pr[ some valid size-m set exists ] <= E[X(m)]:
//   single_hop: C(n,m) p^m       <= (n e / m)^m p^m
//   two_hop:    C(n,m) m! p^m  ( = n!/(n-m)! p^m, assignments counted )
double genie_existence_upper_log(double n, double m, double p, GenieMode mode);
double genie_existence_upper(double n, double m, double p, GenieMode mode);

// Looser but simpler version of the two-hop count: n^m p^m.
double genie_existence_upper_loose_log(double n, double m, double p);
double genie_existence_upper_loose(double n, double m, double p);

// Pr[ m i.i.d. uniform picks from n options are all distinct ]:
//   exact:       prod_{k<m} (1 - k/n)       (log-space product)
//   lower bound: ((n - m + 1)/n)^m
double prob_all_distinct(double n, double m);
double prob_all_distinct_lower(double n, double m);

// A named bound evaluated along a parameter sweep, e.g. the link-success
// upper bound as a function of the active-set size m.
struct BoundPoint {
    double parameter = 0.0;
    double value = 0.0;
};

struct BoundCurve {
    std::string kind;
    std::vector<BoundPoint> points;
};

// CSV with header parameter,bound_value,kind; one row per point.
void write_bound_curves_csv(const std::vector<BoundCurve>& curves, std::ostream& os);

}  // namespace scaling_lab
