#include "asydim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "asydim/errors.hpp"

namespace asydim {

std::string to_string(CountMethod m) {
    switch (m) {
        case CountMethod::covering: return "covering";
        case CountMethod::packing: return "packing";
        case CountMethod::volume: return "volume";
        case CountMethod::heat: return "heat";
    }
    return "?";
}

void ScaleGrid::validate() const {
    auto check = [](const std::vector<double>& v, const char* name) {
        for (double x : v)
            if (!(x > 0.0)) throw std::invalid_argument(std::string(name) + ": scales must be positive");
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1]))
                throw std::invalid_argument(std::string(name) + ": scales must be increasing");
    };
    check(r_values, "r_values");
    check(R_values, "R_values");
    if (window_size < 2) throw std::invalid_argument("window_size must be >= 2");
}

DimEstimate fit_dimension(const std::vector<std::pair<double, double>>& table,
                          std::size_t window, Mode mode, bool invert_scale,
                          CountMethod method) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& [scale, stat] : table) {
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw EstimationError("fit_dimension: nonpositive scale");
        if (!(stat > 0.0) || !std::isfinite(stat))
            throw EstimationError("fit_dimension: statistic not positive finite");
        rows.push_back({scale, stat});
    }
    if (rows.size() < window)
        throw EstimationError("fit_dimension: fewer valid scales than window size");
    std::vector<double> x, y;
    for (const auto& [scale, stat] : rows) {
        x.push_back(invert_scale ? std::log(1.0 / scale) : std::log(scale));
        y.push_back(std::log(stat));
    }
    if (invert_scale) {  // keep abscissa increasing
        std::reverse(x.begin(), x.end());
        std::reverse(y.begin(), y.end());
        std::reverse(rows.begin(), rows.end());
    }
    DimEstimate est;
    est.mode = mode;
    est.method = method;
    est.scale_table = rows;
    est.window_slopes = window_slopes(x, y, window);
    est.value = aggregate(est.window_slopes, mode);
    if (mode == Mode::limsup && est.window_slopes.size() >= 2) {
        const auto& w = est.window_slopes;
        if (w[w.size() - 1].slope - w[w.size() - 2].slope > 1.0) {
            est.infinite = true;
            est.value = std::numeric_limits<double>::infinity();
            est.note = "slopes not stabilizing across top windows; reporting +inf";
        }
    }
    return est;
}

namespace {

// Degenerate flat tables (constant statistic, e.g. singleton spaces) fit to
// dimension zero without enough distinct scales for a window.
bool is_flat(const std::vector<std::pair<double, double>>& table) {
    for (const auto& [s, c] : table)
        if (c != table.front().second) return false;
    return !table.empty();
}

DimEstimate flat_estimate(const std::vector<std::pair<double, double>>& table, Mode mode,
                          CountMethod method) {
    DimEstimate est;
    est.mode = mode;
    est.method = method;
    est.scale_table = table;
    est.value = 0.0;
    est.note = "constant statistic across scales";
    return est;
}

std::size_t count_for(const MetricSpace& space, const Subset& omega, double r,
                      CountMethod method) {
    if (method == CountMethod::packing) return packing_number(space, omega, r).count;
    return greedy_cover(space, omega, r);
}

}  // namespace

DimEstimate kolmogorov_dim(const MetricSpace& space, const ScaleGrid& grid) {
    grid.validate();
    if (grid.R_values.empty() || grid.r_values.empty())
        throw EstimationError("kolmogorov_dim: empty grid");
    DimEstimate final_est;
    std::vector<std::pair<double, double>> stabilization;
    bool have = false;
    for (double R : grid.R_values) {
        Subset omega = ball(space, space.basepoint(), R);
        if (omega.empty()) continue;
        std::vector<std::pair<double, double>> table;
        for (double r : grid.r_values)
            table.push_back({r, static_cast<double>(count_for(space, omega, r, CountMethod::covering))});
        DimEstimate est;
        if (is_flat(table) && table.size() < grid.window_size)
            est = flat_estimate(table, Mode::limsup, CountMethod::covering);
        else
            est = fit_dimension(table, grid.window_size, Mode::limsup, /*invert_scale=*/true,
                                CountMethod::covering);
        stabilization.push_back({R, est.value});
        final_est = est;  // largest R wins
        have = true;
    }
    if (!have) throw EstimationError("kolmogorov_dim: no nonempty ball on the R grid");
    final_est.stabilization = stabilization;
    return final_est;
}

DimEstimate asymptotic_dim(const MetricSpace& space, const ScaleGrid& grid, Mode mode,
                           CountMethod method) {
    grid.validate();
    if (grid.R_values.empty() || grid.r_values.empty())
        throw EstimationError("asymptotic_dim: empty grid");
    const double guard = space.radius_bound();
    DimEstimate final_est;
    std::vector<std::pair<double, double>> stabilization;
    bool have = false;
    for (double r : grid.r_values) {
        std::vector<std::pair<double, double>> table;
        for (double R : grid.R_values) {
            if (guard > 0.0 && R > guard) break;  // ball saturates past the space radius
            Subset omega = ball(space, space.basepoint(), R);
            if (omega.empty()) continue;
            table.push_back({R, static_cast<double>(count_for(space, omega, r, method))});
        }
        if (table.size() < grid.window_size) {
            if (is_flat(table) && !table.empty()) {
                DimEstimate est = flat_estimate(table, mode, method);
                stabilization.push_back({r, est.value});
                final_est = est;
                have = true;
            }
            continue;
        }
        DimEstimate est = fit_dimension(table, grid.window_size, mode, false, method);
        stabilization.push_back({r, est.value});
        final_est = est;  // value reported at the largest admissible r
        have = true;
    }
    if (!have) throw EstimationError("asymptotic_dim: no r admits a full window fit");
    final_est.mode = mode;
    final_est.stabilization = stabilization;
    return final_est;
}

DimEstimate asymptotic_dim_volume(const std::function<double(double)>& volume,
                                  const ScaleGrid& grid, Mode mode) {
    grid.validate();
    std::vector<std::pair<double, double>> table;
    double prev = -std::numeric_limits<double>::infinity();
    for (double R : grid.R_values) {
        const double v = volume(R);
        if (!(v > 0.0))
            throw EstimationError("asymptotic_dim_volume: nonpositive volume at scale");
        if (v < prev * (1.0 - 1e-12))
            throw EstimationError("asymptotic_dim_volume: volume not nondecreasing");
        prev = v;
        table.push_back({R, v});
    }
    return fit_dimension(table, grid.window_size, mode, false, CountMethod::volume);
}

DoublingReport doubling_constant(const std::function<double(double)>& volume,
                                 const ScaleGrid& grid) {
    grid.validate();
    DoublingReport rep;
    for (double R : grid.R_values) {
        const double v1 = volume(R), v2 = volume(2.0 * R);
        if (!(v1 > 0.0) || !(v2 > 0.0))
            throw EstimationError("doubling_constant: nonpositive volume");
        const double ratio = v2 / v1;
        rep.ratios.push_back({R, ratio});
        rep.A = std::max(rep.A, ratio);
    }
    rep.bound = std::log2(rep.A);
    return rep;
}

RoughIsometryReport rough_isometry_probe(const MetricSpace& x, const MetricSpace& y,
                                         const std::vector<PointId>& f, double a,
                                         double b, double eps, const ScaleGrid& grid) {
    if (f.size() != x.size())
        throw std::invalid_argument("rough_isometry_probe: map must be total on X");
    for (PointId img : f)
        if (img >= y.size()) throw std::invalid_argument("rough_isometry_probe: image out of range");
    if (!(a >= 1.0)) throw std::invalid_argument("rough_isometry_probe: need a >= 1");

    RoughIsometryReport rep;
    rep.distortion_ok = true;
    std::mt19937 rng(20240521);
    std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(x.size() - 1));
    const std::size_t pairs = std::min<std::size_t>(1000, x.size() * x.size());
    for (std::size_t i = 0; i < pairs; ++i) {
        const PointId p = pick(rng), q = pick(rng);
        const double dx = x.distance(p, q);
        const double dy = y.distance(f[p], f[q]);
        const double lo = dx / a - b, hi = a * dx + b;
        const double slack = 1e-9 * std::max(1.0, dx);
        if (dy < lo - slack || dy > hi + slack) {
            rep.distortion_ok = false;
            ++rep.distortion_violations;
            rep.worst_excess = std::max(rep.worst_excess, std::max(lo - dy, dy - hi));
        }
    }

    // condition (ii): every sampled y within eps of the image of f
    std::vector<PointId> image(f.begin(), f.end());
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::mt19937 rng2(987654);
    std::uniform_int_distribution<PointId> picky(0, static_cast<PointId>(y.size() - 1));
    const std::size_t ysamples = std::min<std::size_t>(1000, y.size());
    std::vector<double> drow;
    rep.density_ok = true;
    for (std::size_t i = 0; i < ysamples; ++i) {
        const PointId q = (ysamples == y.size()) ? static_cast<PointId>(i) : picky(rng2);
        y.distances_to(q, image, drow);
        const double nearest = *std::min_element(drow.begin(), drow.end());
        rep.worst_gap_to_image = std::max(rep.worst_gap_to_image, nearest);
        if (!(nearest < eps) && eps > 0.0) rep.density_ok = false;
        if (eps == 0.0 && nearest != 0.0) rep.density_ok = false;
    }

    rep.dim_x = asymptotic_dim(x, grid, Mode::limsup);
    rep.dim_y = asymptotic_dim(y, grid, Mode::limsup);
    rep.dim_gap = std::fabs(rep.dim_x.value - rep.dim_y.value);
    return rep;
}

}  // namespace asydim
