#include "mbcs/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mbcs {

double brute_force_margin(const Instance& instance, std::size_t grid_count) {
    if (instance.p() != 2) throw std::invalid_argument("brute force margin: requires p == 2");
    if (grid_count < 1000) throw std::invalid_argument("brute force margin: grid too coarse");

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid_count; ++g) {
        // theta in [0,1) covers the boundary; each quarter is one edge,
        // traversed by convex combination of consecutive vertices, so
        // |b0| + |b1| == 1 exactly.
        const double t = 4.0 * static_cast<double>(g) / static_cast<double>(grid_count);
        const int edge = static_cast<int>(t);
        const double u = t - edge;
        double b0 = 0.0, b1 = 0.0;
        switch (edge) {
            case 0: b0 = 1.0 - u; b1 = u; break;
            case 1: b0 = -u; b1 = 1.0 - u; break;
            case 2: b0 = u - 1.0; b1 = -u; break;
            default: b0 = u; b1 = u - 1.0; break;
        }
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < instance.n(); ++i) {
            const double* row = instance.features().row(i);
            worst = std::min(worst, instance.labels()[i] * (row[0] * b0 + row[1] * b1));
        }
        best = std::max(best, worst);
    }
    return best;
}

bool exhaustive_sign_check(const Instance& instance, std::span<const double> beta) {
    if (beta.size() != instance.p())
        throw std::invalid_argument("sign check: dimension mismatch");
    for (std::size_t i = 0; i < instance.n(); ++i) {
        const double proj = dot(instance.features().row(i), beta.data(), beta.size());
        if (sgn(proj) != instance.labels()[i]) return false;
    }
    return true;
}

}  // namespace mbcs
