#pragma once

#include <utility>
#include <vector>

#include "asydim/heat.hpp"
#include "asydim/slopes.hpp"

namespace asydim {

enum class Interp { step_right_continuous, loglog_linear };

// A sampled non-increasing right-continuous function on [0, infinity).
//
// step_right_continuous: knots (a_i, v_i), a_0 = 0, a strictly increasing,
// v strictly decreasing after canonicalization; f(x) = v_i on [a_i, a_{i+1}).
// Only the first knot may carry the +infinity sentinel.
//
// loglog_linear: positive samples interpolated linearly in (log t, log y),
// extrapolated with the nearest segment's exponent outside the sampled range.
class MonotoneFunction {
public:
    static MonotoneFunction step(std::vector<std::pair<double, double>> knots);
    static MonotoneFunction loglog(std::vector<std::pair<double, double>> samples);

    Interp interp() const { return interp_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }
    double eval(double t) const;
    double arg_lo() const;  // first positive knot argument
    double arg_hi() const { return knots_.back().first; }
    // step functions extend to all of [0, inf); loglog tails are extrapolation
    double domain_hi() const;
    bool infinite_head() const;
    double terminal_value() const { return knots_.back().second; }

    MonotoneFunction scaled(double factor) const;  // factor * f, factor > 0

private:
    Interp interp_ = Interp::step_right_continuous;
    std::vector<std::pair<double, double>> knots_;
};

// Exact integral of f over [a, b]: rectangle sums for step mode, per-segment
// power laws for loglog mode (expm1-stable near exponent -1). Below the first
// knot the loglog head extrapolates the first segment's exponent; may return
// +infinity when the head is not integrable.
double integrate(const MonotoneFunction& f, double a, double b);

// Generalized inverse mu(t) = inf{ s >= 0 : f(s) <= t }. Exact knot algebra
// on step functions (an involution); axis swap on loglog samples.
MonotoneFunction rearrangement(const MonotoneFunction& f);

struct PowerExponentReport {
    double alpha = 0.0;           // reciprocal of the liminf slope; +inf when slope ~ 0
    double slope_liminf = 0.0;    // min window slope of log mu vs log(1/t)
    std::vector<WindowSlope> windows;
    std::vector<std::pair<double, double>> table;  // (t, mu(t)) samples used
};

// alpha(T) from mu_T: liminf realized as the min sliding-window slope over
// the sampled small-t tail. t_lo/t_hi = 0 selects the knots' variation range.
PowerExponentReport power_exponent(const MonotoneFunction& mu, double t_lo = 0.0,
                                   double t_hi = 0.0, std::size_t window = 4,
                                   std::size_t per_decade = 8);

struct DualityReport {
    double left_alpha = 0.0;   // via the rearrangement
    double right_alpha = 0.0;  // via the distribution function's tail
    bool degenerate = false;   // compact support; both sides report +inf
    double gap = 0.0;
};

DualityReport duality_check(const MonotoneFunction& lambda_fn, std::size_t window = 4);

// Discrete spectral measure: atoms (eigenvalue, weight), eigenvalues ascending.
struct SpectralMeasure {
    std::vector<std::pair<double, double>> atoms;
    double total = 0.0;

    static SpectralMeasure from_atoms(std::vector<std::pair<double, double>> atoms);
};

// Ball-averaged weights w_k = avg_{x in B(o,r)} psi_k(x)^2; with these
// weights theta(t) = sum w_k e^{-lambda_k t} equals the exhaustion average
// over the same ball exactly.
SpectralMeasure roe_spectral_measure(const LaplacianModel& model, std::uint32_t basepoint,
                                     double r);

// theta(t) = sum_k w_k e^{-lambda_k t} on the grid, as a loglog function.
MonotoneFunction spectral_to_theta(const SpectralMeasure& measure,
                                   const std::vector<double>& t_grid);

// N(lambda) = sum of weights with eigenvalue <= lambda, tabulated on the grid.
std::vector<std::pair<double, double>> counting_function(const SpectralMeasure& measure,
                                                         const std::vector<double>& lambda_grid,
                                                         bool normalize = false);

// Distribution function of the resolvent: lambda(s) = sum of weights with
// 0 < eigenvalue < 1/s, as a canonical step function (the zero mode is
// excluded; the inverse is taken on the kernel's complement).
MonotoneFunction resolvent_distribution(const SpectralMeasure& measure);

struct NovikovShubinReport {
    double alpha0 = 0.0;
    double slope = 0.0;  // limsup window slope before the factor 2
    std::vector<WindowSlope> windows;
};

// alpha0 = 2 * limsup slope of log theta vs log(1/t) over the large-t tail.
NovikovShubinReport novikov_shubin_theta(const std::vector<std::pair<double, double>>& theta,
                                         std::size_t window = 4);
// alpha0 = 2 * limsup slope of log N vs log lambda over the small-lambda tail.
NovikovShubinReport novikov_shubin_counting(const std::vector<std::pair<double, double>>& n_table,
                                            std::size_t window = 4);

enum class EccBranch { integrable, divergent, inconclusive };

struct EccentricityReport {
    EccBranch branch = EccBranch::inconclusive;
    bool eccentric = false;
    bool conclusive = false;
    double ratio_limit = 0.0;  // tail estimate of the branch's integral ratio
};

// Branch chosen by stability of int_t^1 mu under decade refinement; eccentric
// iff the branch ratio tail-estimate is within 0.02 of 1.
EccentricityReport eccentricity_test(const MonotoneFunction& mu);

// mu_{T^alpha}(t) = mu_T(t)^alpha, pointwise on values.
MonotoneFunction power_transform(const MonotoneFunction& mu, double alpha);

// Dilation-window Cesaro average of a sampled function as t -> 0.
struct GeneralizedLimitAt0 {
    double window_decades = 1.0;

    double apply(const std::vector<double>& ts, const std::vector<double>& vals) const;
    // same window shifted one decade up, for the invariance diagnostic
    double shifted(const std::vector<double>& ts, const std::vector<double>& vals) const;
};

struct SingularTraceResult {
    double value = 0.0;
    EccBranch branch = EccBranch::inconclusive;
    double window_shift_value = 0.0;  // omega on the shifted window
    std::vector<std::pair<double, double>> ratio_table;  // (t, ratio)
};

// tau_omega(A) = omega of the branch-matched integral ratio of mu_A against
// mu_T. Throws std::domain_error when mu_T is not eccentric or the branches
// are incompatible.
SingularTraceResult singular_trace(const MonotoneFunction& mu_a,
                                   const MonotoneFunction& mu_t,
                                   const GeneralizedLimitAt0& omega);

}  // namespace asydim
