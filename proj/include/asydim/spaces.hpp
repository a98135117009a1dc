#pragma once

#include <functional>
#include <vector>

#include "asydim/metric_space.hpp"

namespace asydim {

// Integer box [-halfwidth, halfwidth]^d with the chosen metric and a
// counting-measure ball-volume oracle from the center point.
MetricSpace gen_lattice(int d, int halfwidth, MetricKind metric = MetricKind::sup,
                        std::size_t budget_points = 1u << 22);

// Quasi-uniform sample of {(x,y): x >= 0, |y| <= x^alpha} with the Euclidean
// metric and the analytic area oracle area(B_R) = 2/(alpha+1) * x_R^{alpha+1},
// x_R the positive root of x^2 + x^{2 alpha} = R^2. Deterministic
// low-discrepancy (plastic-constant) sampling.
MetricSpace gen_parabolic_region(double alpha, double x_max, std::size_t n_points);

double parabolic_x_r(double alpha, double R);
double parabolic_area(double alpha, double R);

// Half-infinite warped product (1, inf) x A with profile f and volume form
// f(x)^{N-1} dx dw; radial slabs E_r stand in for metric balls.
struct StandardEnd {
    int local_dim = 2;              // N
    double cross_section = 1.0;     // total measure of A
    std::function<double(double)> profile;  // f, positive nondecreasing on [1, inf)
    // set when the profile is f(x) = x^gamma, enabling closed-form volumes
    bool power_profile = false;
    double gamma = 0.0;
};

StandardEnd constant_end(int n, double height, double cross_section);
// Davies end of local dimension N and asymptotic dimension D:
// f(x) = x^{(D-1)/(N-1)}.
StandardEnd davies_end(int n, double d, double cross_section);

// vol(E_r) = cross_section * int_1^{1+r} f(x)^{N-1} dx; closed form on power
// profiles, adaptive Simpson otherwise.
double end_volume(const StandardEnd& end, double r);

// The three-branch oscillating profile: sqrt on [1, a_1], then alternating
// linear and shifted-sqrt branches glued continuously at the doubly
// exponential breakpoints a_n (a_0 = 0, a_n - a_{n-1} = 2^{2^n}).
class OscillatingProfile {
public:
    explicit OscillatingProfile(int max_n);

    int max_n() const { return max_n_; }
    double a(int n) const;       // breakpoint; +inf when not double-representable
    double log_a(int n) const;   // natural log, valid for all n <= max_n
    double b(int n) const;
    double c(int n) const;

    double value(double x) const;  // f(x), 1 <= x <= a(max_n), double range only

    // vol(E_{a_k}) with unit cross-section: exact piecewise integral while it
    // fits a double, leading-order log-space fallback beyond (flagged).
    double log_volume_at(int k, bool* logspace_used = nullptr) const;

private:
    int max_n_;
    std::vector<double> a_, loga_, b_, c_;
    double exact_volume_at(int k) const;
};

struct OscGapRow {
    int index = 0;       // k of r = a_k
    double log_r = 0.0;
    double log_vol = 0.0;
    double slope = 0.0;  // log vol(E_{a_k}) / log a_k
    bool logspace = false;
};

struct OscGapReport {
    std::vector<OscGapRow> rows;
    std::vector<double> even_slopes;  // along r = a_{2n}
    std::vector<double> odd_slopes;   // along r = a_{2n-1}
    double limsup_estimate = 0.0;     // max slope over the merged tail (k >= 3)
    double liminf_estimate = 0.0;     // min slope over the merged tail
    bool logspace_used = false;
};

OscGapReport oscillating_dim_gap(int max_n);

}  // namespace asydim
