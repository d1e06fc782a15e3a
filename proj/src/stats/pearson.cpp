#include "oapl/stats/pearson.hpp"

#include <algorithm>
#include <cmath>

#include "oapl/stats/special.hpp"

namespace oapl::stats {

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InputError("pearson: vectors differ in length (" + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
    }
    const std::size_t n = x.size();
    if (n < 3) throw InputError("pearson: need at least 3 pairs, got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw ZeroVarianceError("pearson: first vector has zero variance");
    if (syy == 0.0) throw ZeroVarianceError("pearson: second vector has zero variance");

    CorrelationResult out;
    out.n = n;
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    // t^2 = r^2 df / (1 - r^2), so df / (df + t^2) = 1 - r^2.
    const double x_beta = (1.0 - out.r) * (1.0 + out.r);
    const double df = static_cast<double>(n - 2);
    out.p = x_beta <= 0.0 ? 0.0 : incomplete_beta(0.5 * df, 0.5, x_beta);
    return out;
}

ScreeningResult screen_conditions(const std::vector<CorrelationResult>& results, double threshold) {
    ScreeningResult out;
    for (const auto& r : results) {
        (std::abs(r.r) >= threshold ? out.retained : out.eliminated).push_back(r);
    }
    return out;
}

}  // namespace oapl::stats
