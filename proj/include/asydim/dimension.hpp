#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "asydim/metric_space.hpp"
#include "asydim/slopes.hpp"

namespace asydim {

enum class CountMethod { covering, packing, volume, heat };

std::string to_string(CountMethod m);

// A dimension estimate with the scale table and window diagnostics behind it.
// `value` is always the declared aggregation of `window_slopes` (max for
// limsup mode, min for liminf); `stabilization` reports the per-outer-scale
// estimates so the trend toward the outer limit can be eyeballed.
struct DimEstimate {
    double value = 0.0;
    bool infinite = false;
    Mode mode = Mode::limsup;
    CountMethod method = CountMethod::covering;
    std::vector<std::pair<double, double>> scale_table;
    std::vector<WindowSlope> window_slopes;
    std::vector<std::pair<double, double>> stabilization;
    std::string note;
};

struct ScaleGrid {
    std::vector<double> r_values;
    std::vector<double> R_values;
    std::size_t window_size = 4;

    void validate() const;
};

// Slope fit of log statistic against log scale (or log(1/scale) when
// invert_scale is set, for r -> 0 limits). Scales with nonpositive
// statistics are rejected.
DimEstimate fit_dimension(const std::vector<std::pair<double, double>>& table,
                          std::size_t window, Mode mode, bool invert_scale,
                          CountMethod method);

// Kolmogorov dimension d0: covering counts of B(base, R) at radii r -> 0,
// limsup realized as the max sliding-window slope; reported at the largest R.
DimEstimate kolmogorov_dim(const MetricSpace& space, const ScaleGrid& grid);

// Asymptotic dimension: growth of n_r(B(base, R)) in R, per fixed r; the
// value is taken at the largest r admitting a full window fit.
DimEstimate asymptotic_dim(const MetricSpace& space, const ScaleGrid& grid, Mode mode,
                           CountMethod method = CountMethod::covering);

// Volume route: slope of log volume(R) vs log R.
DimEstimate asymptotic_dim_volume(const std::function<double(double)>& volume,
                                  const ScaleGrid& grid, Mode mode);

struct DoublingReport {
    double A = 1.0;          // max over the grid of volume(2R)/volume(R)
    double bound = 0.0;      // log2 A
    std::vector<std::pair<double, double>> ratios;  // (R, volume(2R)/volume(R))
};

DoublingReport doubling_constant(const std::function<double(double)>& volume,
                                 const ScaleGrid& grid);

struct RoughIsometryReport {
    bool distortion_ok = false;   // condition (i), affine distance bounds
    bool density_ok = false;      // condition (ii), eps-dense image
    std::size_t distortion_violations = 0;
    double worst_excess = 0.0;    // largest bound violation found
    double worst_gap_to_image = 0.0;
    DimEstimate dim_x;
    DimEstimate dim_y;
    double dim_gap = 0.0;
};

// Samples the affine distortion bounds and the eps-dense-image condition
// for f, then compares asymptotic dimensions of both spaces. Violations are
// reported, not thrown.
RoughIsometryReport rough_isometry_probe(const MetricSpace& x, const MetricSpace& y,
                                         const std::vector<PointId>& f, double a,
                                         double b, double eps, const ScaleGrid& grid);

}  // namespace asydim
