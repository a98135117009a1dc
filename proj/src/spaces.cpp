#include "asydim/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "asydim/errors.hpp"

namespace asydim {

MetricSpace gen_lattice(int d, int halfwidth, MetricKind metric, std::size_t budget_points) {
    if (d < 1 || halfwidth < 0) throw std::invalid_argument("gen_lattice: bad parameters");
    const std::size_t side = 2 * static_cast<std::size_t>(halfwidth) + 1;
    std::size_t n = 1;
    for (int k = 0; k < d; ++k) {
        if (n > budget_points / side + 1) throw ResourceError("gen_lattice: budget exceeded");
        n *= side;
    }
    if (n > budget_points) throw ResourceError("gen_lattice: budget exceeded");
    std::vector<double> coords(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (int k = d - 1; k >= 0; --k) {
            coords[i * d + k] = static_cast<double>(static_cast<long>(rest % side) - halfwidth);
            rest /= side;
        }
    }
    const PointId center = static_cast<PointId>(n / 2);  // all-zero point, side is odd
    MetricSpace space = MetricSpace::from_points(std::move(coords), d, metric, center);
    // counting-measure oracle: sorted distances from the center
    auto dists = std::make_shared<std::vector<double>>();
    dists->reserve(n);
    for (PointId p = 0; p < n; ++p) dists->push_back(space.distance(center, p));
    std::sort(dists->begin(), dists->end());
    space.set_volume_oracle([dists](double r) {
        return static_cast<double>(
            std::lower_bound(dists->begin(), dists->end(), r) - dists->begin());
    });
    return space;
}

double parabolic_x_r(double alpha, double R) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must be in (0,1]");
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    double lo = 0.0, hi = R;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = mid * mid + std::pow(mid, 2.0 * alpha) - R * R;
        (f < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double parabolic_area(double alpha, double R) {
    const double xr = parabolic_x_r(alpha, R);
    return 2.0 / (alpha + 1.0) * std::pow(xr, alpha + 1.0);
}

MetricSpace gen_parabolic_region(double alpha, double x_max, std::size_t n_points) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must be in (0,1]");
    if (!(x_max > 1.0) || n_points < 2)
        throw std::invalid_argument("gen_parabolic_region: bad parameters");
    // plastic-constant additive recurrence in the bounding box
    const double g = 1.32471795724474602596;
    const double a1 = 1.0 / g, a2 = 1.0 / (g * g);
    const double y_max = std::pow(x_max, alpha);
    std::vector<double> coords = {0.0, 0.0};
    std::size_t found = 1;
    double u = 0.5, v = 0.5;
    for (std::size_t it = 0; found < n_points && it < 200 * n_points; ++it) {
        u += a1;
        u -= std::floor(u);
        v += a2;
        v -= std::floor(v);
        const double x = u * x_max;
        const double y = (2.0 * v - 1.0) * y_max;
        if (std::fabs(y) <= std::pow(x, alpha)) {
            coords.push_back(x);
            coords.push_back(y);
            ++found;
        }
    }
    MetricSpace space = MetricSpace::from_points(std::move(coords), 2, MetricKind::euclidean, 0);
    space.set_volume_oracle([alpha](double r) { return parabolic_area(alpha, r); });
    return space;
}

StandardEnd constant_end(int n, double height, double cross_section) {
    if (n < 2 || !(height > 0.0)) throw std::invalid_argument("constant_end: bad parameters");
    StandardEnd e;
    e.local_dim = n;
    e.cross_section = cross_section;
    e.profile = [height](double) { return height; };
    e.power_profile = height == 1.0;  // x^0
    e.gamma = 0.0;
    return e;
}

StandardEnd davies_end(int n, double d, double cross_section) {
    if (n < 2 || !(d > 0.0)) throw std::invalid_argument("davies_end: bad parameters");
    StandardEnd e;
    e.local_dim = n;
    e.cross_section = cross_section;
    const double gamma = (d - 1.0) / (n - 1.0);
    e.profile = [gamma](double x) { return std::pow(x, gamma); };
    e.power_profile = true;
    e.gamma = gamma;
    return e;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw NumericalError("end_volume: quadrature did not converge");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double end_volume(const StandardEnd& end, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("end_volume: r must be positive");
    const double q = end.gamma * (end.local_dim - 1);
    if (end.power_profile) {
        // int_1^{1+r} x^q dx
        if (std::fabs(q + 1.0) < 1e-12) return end.cross_section * std::log(1.0 + r);
        return end.cross_section * (std::pow(1.0 + r, q + 1.0) - 1.0) / (q + 1.0);
    }
    auto integrand = [&end](double x) {
        return std::pow(end.profile(x), end.local_dim - 1);
    };
    const double rough = std::max(1.0, integrand(1.0 + r) * r);
    return end.cross_section * integrate_smooth(integrand, 1.0, 1.0 + r, 1e-12 * rough);
}

OscillatingProfile::OscillatingProfile(int max_n) : max_n_(max_n) {
    if (max_n < 1) throw std::invalid_argument("OscillatingProfile: max_n >= 1");
    a_.assign(max_n + 1, 0.0);
    loga_.assign(max_n + 1, -std::numeric_limits<double>::infinity());
    const double ln2 = std::log(2.0);
    for (int n = 1; n <= max_n; ++n) {
        const double step_log = std::pow(2.0, n) * ln2;  // ln 2^{2^n}
        if (n <= 9) {
            a_[n] = a_[n - 1] + std::pow(2.0, std::pow(2.0, n));
            loga_[n] = std::log(a_[n]);
        } else {
            a_[n] = std::numeric_limits<double>::infinity();
            // ln(a_{n-1} + 2^{2^n}) = step_log + log1p(a_{n-1}/2^{2^n})
            loga_[n] = step_log + std::log1p(std::exp(loga_[n - 1] - step_log));
        }
    }
    const int pairs = max_n / 2 + 1;
    b_.assign(pairs + 1, 0.0);
    c_.assign(pairs + 1, 0.0);
    for (int k = 1; k <= pairs; ++k) {
        const double bexp = std::pow(2.0, 2 * k + 1);  // 2^{2k+1}
        const double cexp = std::pow(2.0, 2 * k);
        b_[k] = b_[k - 1] + (bexp <= 1022.0 ? std::sqrt(std::pow(2.0, bexp) + 1.0)
                                            : std::numeric_limits<double>::infinity());
        c_[k] = c_[k - 1] + (cexp <= 1022.0 ? std::pow(2.0, cexp) - 1.0
                                            : std::numeric_limits<double>::infinity());
    }
}

double OscillatingProfile::a(int n) const {
    if (n < 0 || n > max_n_) throw std::invalid_argument("a(n) out of range");
    return a_[n];
}

double OscillatingProfile::log_a(int n) const {
    if (n < 1 || n > max_n_) throw std::invalid_argument("log_a(n) out of range");
    return loga_[n];
}

double OscillatingProfile::b(int n) const {
    if (n < 0 || n >= static_cast<int>(b_.size()))
        throw std::invalid_argument("b(n) out of range");
    return b_[n];
}

double OscillatingProfile::c(int n) const {
    if (n < 0 || n >= static_cast<int>(c_.size()))
        throw std::invalid_argument("c(n) out of range");
    return c_[n];
}

double OscillatingProfile::value(double x) const {
    if (!(x >= 1.0) || !std::isfinite(x) || (max_n_ <= 9 && x > a_[max_n_]))
        throw std::domain_error("oscillating profile: x out of tabulated range");
    if (x <= a_[1]) return std::sqrt(x);
    for (int n = 1; 2 * n <= max_n_; ++n) {
        if (x <= a_[2 * n]) return 2.0 + b_[n - 1] + c_[n - 1] + (x - a_[2 * n - 1]);
        if (2 * n + 1 <= max_n_ && x <= a_[2 * n + 1])
            return 2.0 + b_[n - 1] + c_[n] + std::sqrt(x - a_[2 * n] + 1.0);
    }
    throw std::domain_error("oscillating profile: x out of tabulated range");
}

double OscillatingProfile::exact_volume_at(int k) const {
    // int_1^{1+a_k} f, piecewise closed forms, unit cross-section
    const double inf = std::numeric_limits<double>::infinity();
    const double x = 1.0 + a_[k];
    double tot = (2.0 / 3.0) * (std::pow(std::min(x, a_[1]), 1.5) - 1.0);
    if (x <= a_[1]) return tot;
    for (int n = 1;; ++n) {
        {  // linear branch [a_{2n-1}, a_{2n}]
            const double hi = 2 * n <= max_n_ ? a_[2 * n] : inf;
            const double cst = 2.0 + b_[n - 1] + c_[n - 1];
            const double len = std::min(x, hi) - a_[2 * n - 1];
            tot += cst * len + 0.5 * len * len;
            if (x <= hi) return tot;
        }
        {  // sqrt branch [a_{2n}, a_{2n+1}]
            const double hi = 2 * n + 1 <= max_n_ ? a_[2 * n + 1] : inf;
            const double cst = 2.0 + b_[n - 1] + c_[n];
            const double len = std::min(x, hi) - a_[2 * n];
            tot += cst * len + (2.0 / 3.0) * (std::pow(len + 1.0, 1.5) - 1.0);
            if (x <= hi) return tot;
        }
    }
}

double OscillatingProfile::log_volume_at(int k, bool* logspace_used) const {
    if (k < 1 || k > max_n_) throw std::invalid_argument("log_volume_at: k out of range");
    if (logspace_used) *logspace_used = false;
    if (k <= std::min(max_n_, 8)) {
        // exact path: every quantity stays inside double range through k = 8
        return std::log(exact_volume_at(k));
    }
    if (logspace_used) *logspace_used = true;
    // leading-order volumes: ~ a^2/2 at even breakpoints, ~ (5/3) a^{3/2} at odd
    if (k % 2 == 0) return std::log(0.5) + 2.0 * loga_[k];
    return std::log(5.0 / 3.0) + 1.5 * loga_[k];
}

OscGapReport oscillating_dim_gap(int max_n) {
    if (max_n < 3) throw std::invalid_argument("oscillating_dim_gap: max_n >= 3");
    OscillatingProfile prof(max_n);
    OscGapReport rep;
    for (int k = 1; k <= max_n; ++k) {
        OscGapRow row;
        row.index = k;
        row.log_r = prof.log_a(k);
        row.log_vol = prof.log_volume_at(k, &row.logspace);
        row.slope = row.log_vol / row.log_r;
        rep.logspace_used = rep.logspace_used || row.logspace;
        rep.rows.push_back(row);
        (k % 2 == 0 ? rep.even_slopes : rep.odd_slopes).push_back(row.slope);
    }
    // merged-tail envelope; the first two breakpoints are pre-asymptotic
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& row : rep.rows) {
        if (row.index < 3) continue;
        lo = std::min(lo, row.slope);
        hi = std::max(hi, row.slope);
    }
    rep.limsup_estimate = hi;
    rep.liminf_estimate = lo;
    return rep;
}

}  // namespace asydim
