#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scaling_lab {

// Neumaier's variant of compensated summation: keeps a running error term so
// long interference sums (1e5+ terms) stay accurate to the last few ulps.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

    void reset() { sum_ = comp_ = 0.0; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(const std::vector<double>& xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

// ln C(n, k) via lgamma; exact enough for n in the millions.
inline double log_choose(double n, double k) {
    if (k < 0 || k > n) throw std::domain_error("log_choose: k outside [0, n]");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// ln n!/(n-m)!  (falling factorial)
inline double log_falling_factorial(double n, double m) {
    if (m < 0 || m > n) throw std::domain_error("log_falling_factorial: m outside [0, n]");
    return std::lgamma(n + 1.0) - std::lgamma(n - m + 1.0);
}

struct SampleStats {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased (n-1 denominator); 0 for count < 2
    double std_err = 0.0;   // of the mean
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
    SampleStats st;
    st.count = xs.size();
    if (xs.empty()) return st;
    CompensatedSum s;
    for (double x : xs) s.add(x);
    st.mean = s.value() / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        CompensatedSum sq;
        for (double x : xs) {
            double d = x - st.mean;
            sq.add(d * d);
        }
        st.variance = sq.value() / static_cast<double>(xs.size() - 1);
        st.std_err = std::sqrt(st.variance / static_cast<double>(xs.size()));
    }
    return st;
}

// Median; sorts a copy.
double median(std::vector<double> xs);

}  // namespace scaling_lab
