#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lamehardy {

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
    std::size_t points = 0;
    bool flat = false;
};

// Least-squares power-law fit residual ~ C * separation^slope, done in
// log-log coordinates.  Pairs are (separation, residual); nonpositive
// residuals carry no information at log scale and are dropped up front.
// Requires at least 20 usable pairs whose separations span a full decade,
// so a slope is actually identified rather than extrapolated.
inline ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& data) {
    std::vector<std::pair<double, double>> usable;
    usable.reserve(data.size());
    for (const auto& [sep, res] : data) {
        if (!(sep > 0.0)) throw std::invalid_argument("fit_exponent: separations must be positive");
        if (res > 0.0) usable.emplace_back(sep, res);
    }
    if (usable.size() < 20)
        throw std::invalid_argument("fit_exponent: need at least 20 pairs with positive residuals");
    double lo = usable.front().first, hi = usable.front().first;
    for (const auto& [sep, res] : usable) {
        lo = std::min(lo, sep);
        hi = std::max(hi, sep);
    }
    if (hi < 10.0 * lo)
        throw std::invalid_argument("fit_exponent: separations must span at least one decade");

    const double n = (double)usable.size();
    double sx = 0.0, sy = 0.0;
    for (const auto& [sep, res] : usable) {
        sx += std::log(sep);
        sy += std::log(res);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [sep, res] : usable) {
        const double dx = std::log(sep) - mx;
        const double dy = std::log(res) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    ExponentFit out;
    out.points = usable.size();
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    // syy == 0 means the residuals are a perfect constant: the zero slope is
    // exact, so report a perfect fit rather than 0/0.
    out.r2 = (syy > 0.0) ? 1.0 - (syy - out.slope * sxy) / syy : 1.0;
    out.flat = std::abs(out.slope) < 0.1;
    return out;
}

} // namespace lamehardy
