#include "scaling_lab/numeric.hpp"

#include <algorithm>

namespace scaling_lab {

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::domain_error("median: empty sample");
    const std::size_t h = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + h, xs.end());
    if (xs.size() % 2 == 1) return xs[h];
    double hi = xs[h];
    double lo = *std::max_element(xs.begin(), xs.begin() + h);
    return lo + (hi - lo) / 2.0;
}

}  // namespace scaling_lab
