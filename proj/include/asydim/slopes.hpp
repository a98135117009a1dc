#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace asydim {

// One least-squares slope over a window of consecutive samples.
// [lo, hi] are inclusive indices into the fitted table; x_lo/x_hi the scale
// endpoints in original (pre-log) units.
struct WindowSlope {
    std::size_t lo = 0;
    std::size_t hi = 0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double slope = 0.0;
};

enum class Mode { limsup, liminf };

std::string to_string(Mode m);

// OLS slope of y against x over all points.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

// Sliding-window OLS slopes of y vs x, window of `window` consecutive points.
// Requires x strictly increasing and at least `window` points.
std::vector<WindowSlope> window_slopes(const std::vector<double>& x,
                                       const std::vector<double>& y,
                                       std::size_t window);

// limsup -> max slope, liminf -> min slope.
double aggregate(const std::vector<WindowSlope>& slopes, Mode mode);

// Geometric grid lo, lo*ratio, ... capped at hi (hi included when the step
// lands within 1e-9 relative).
std::vector<double> geometric_grid(double lo, double hi, double ratio);

// Geometric grid with a fixed number of points, endpoints included.
std::vector<double> geometric_grid_n(double lo, double hi, std::size_t n);

}  // namespace asydim
