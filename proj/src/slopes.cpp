#include "asydim/slopes.hpp"

#include <cmath>
#include <stdexcept>

#include "asydim/errors.hpp"

namespace asydim {

std::string to_string(Mode m) { return m == Mode::limsup ? "limsup" : "liminf"; }

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw EstimationError("ols_slope: need >= 2 paired samples");
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw EstimationError("ols_slope: degenerate abscissa");
    return sxy / sxx;
}

std::vector<WindowSlope> window_slopes(const std::vector<double>& x,
                                       const std::vector<double>& y,
                                       std::size_t window) {
    if (window < 2) throw EstimationError("window_slopes: window must be >= 2");
    if (x.size() != y.size())
        throw EstimationError("window_slopes: size mismatch");
    if (x.size() < window)
        throw EstimationError("window_slopes: fewer samples than window size");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw EstimationError("window_slopes: abscissa not strictly increasing");
    std::vector<WindowSlope> out;
    for (std::size_t lo = 0; lo + window <= x.size(); ++lo) {
        const std::size_t hi = lo + window - 1;
        std::vector<double> xs(x.begin() + lo, x.begin() + hi + 1);
        std::vector<double> ys(y.begin() + lo, y.begin() + hi + 1);
        out.push_back({lo, hi, x[lo], x[hi], ols_slope(xs, ys)});
    }
    return out;
}

double aggregate(const std::vector<WindowSlope>& slopes, Mode mode) {
    if (slopes.empty()) throw EstimationError("aggregate: no window slopes");
    double v = slopes.front().slope;
    for (const auto& w : slopes)
        v = (mode == Mode::limsup) ? std::max(v, w.slope) : std::min(v, w.slope);
    return v;
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
    if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0))
        throw std::invalid_argument("geometric_grid: need 0 < lo <= hi, ratio > 1");
    std::vector<double> g;
    for (double v = lo; v <= hi * (1.0 + 1e-9); v *= ratio) g.push_back(std::min(v, hi));
    return g;
}

std::vector<double> geometric_grid_n(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("geometric_grid_n: need 0 < lo < hi, n >= 2");
    std::vector<double> g(n);
    const double q = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(q * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace asydim
