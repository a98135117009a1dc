#include "asydim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "asydim/errors.hpp"

namespace asydim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (e^{qL} - 1)/q, stable for q near 0.
double qexpm1(double q, double L) {
    if (q == 0.0) return L;
    return std::expm1(q * L) / q;
}

}  // namespace

MonotoneFunction MonotoneFunction::step(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw std::invalid_argument("step function needs knots");
    if (knots.front().first != 0.0)
        throw std::invalid_argument("step function must start at argument 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].first > knots[i - 1].first))
            throw std::invalid_argument("step knots must have strictly increasing arguments");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const double v = knots[i].second;
        if (std::isnan(v) || v < 0.0)
            throw std::invalid_argument("step values must be >= 0");
        if (std::isinf(v) && i > 0)
            throw std::invalid_argument("only the leading step value may be infinite");
        if (i > 0 && !(v <= knots[i - 1].second))
            throw std::invalid_argument("step values must be nonincreasing");
    }
    if (std::isinf(knots.back().second))
        throw std::invalid_argument("step function must take a finite value eventually");
    // canonical form: merge equal-value runs, keeping the earliest argument
    std::vector<std::pair<double, double>> canon;
    for (const auto& k : knots)
        if (canon.empty() || k.second < canon.back().second) canon.push_back(k);
    MonotoneFunction f;
    f.interp_ = Interp::step_right_continuous;
    f.knots_ = std::move(canon);
    return f;
}

MonotoneFunction MonotoneFunction::loglog(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 1) throw std::invalid_argument("loglog function needs samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0) || !(samples[i].second > 0.0) ||
            !std::isfinite(samples[i].second))
            throw std::invalid_argument("loglog samples must be positive and finite");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("loglog arguments must be strictly increasing");
        if (i > 0 && samples[i].second > samples[i - 1].second * (1.0 + 1e-12))
            throw std::invalid_argument("loglog values must be nonincreasing");
        if (i > 0 && samples[i].second > samples[i - 1].second)
            samples[i].second = samples[i - 1].second;
    }
    MonotoneFunction f;
    f.interp_ = Interp::loglog_linear;
    f.knots_ = std::move(samples);
    return f;
}

bool MonotoneFunction::infinite_head() const { return std::isinf(knots_.front().second); }

double MonotoneFunction::domain_hi() const {
    return interp_ == Interp::step_right_continuous
               ? std::numeric_limits<double>::infinity()
               : knots_.back().first;
}

double MonotoneFunction::arg_lo() const {
    for (const auto& [a, v] : knots_)
        if (a > 0.0) return a;
    return 0.0;
}

double MonotoneFunction::eval(double t) const {
    if (interp_ == Interp::step_right_continuous) {
        if (!(t >= 0.0)) throw std::invalid_argument("eval: t must be >= 0");
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double x, const auto& k) { return x < k.first; });
        return std::prev(it)->second;
    }
    if (!(t > 0.0)) throw std::invalid_argument("eval: t must be > 0 in loglog mode");
    if (knots_.size() == 1) return knots_.front().second;
    std::size_t i;
    if (t <= knots_.front().first) {
        i = 0;
    } else if (t >= knots_.back().first) {
        i = knots_.size() - 2;
    } else {
        i = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double x, const auto& k) { return x < k.first; }) -
            knots_.begin() - 1;
    }
    const auto& [t1, y1] = knots_[i];
    const auto& [t2, y2] = knots_[i + 1];
    const double p = std::log(y2 / y1) / std::log(t2 / t1);
    return y1 * std::exp(p * std::log(t / t1));
}

MonotoneFunction MonotoneFunction::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
    MonotoneFunction f = *this;
    for (auto& [a, v] : f.knots_)
        if (!std::isinf(v)) v *= factor;
    return f;
}

double integrate(const MonotoneFunction& f, double a, double b) {
    if (!(a >= 0.0) || !(b >= a)) throw std::invalid_argument("integrate: need 0 <= a <= b");
    if (a == b) return 0.0;
    const auto& ks = f.knots();
    if (f.interp() == Interp::step_right_continuous) {
        double acc = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const double lo = std::max(a, ks[i].first);
            const double hi = std::min(b, i + 1 < ks.size() ? ks[i + 1].first : b);
            if (hi <= lo) continue;
            if (std::isinf(ks[i].second)) return kInf;
            acc += ks[i].second * (hi - lo);
        }
        return acc;
    }
    // loglog: per-segment power laws, extrapolated with the edge exponents
    auto segment_exponent = [&ks](std::size_t i) {
        if (ks.size() == 1) return 0.0;
        const auto& [t1, y1] = ks[i];
        const auto& [t2, y2] = ks[i + 1];
        return std::log(y2 / y1) / std::log(t2 / t1);
    };
    auto piece = [&f](double lo, double hi, double p) {
        if (hi <= lo) return 0.0;
        const double ylo = f.eval(lo);
        return ylo * lo * qexpm1(p + 1.0, std::log(hi / lo));
    };
    double acc = 0.0;
    const double t_first = ks.front().first, t_last = ks.back().first;
    const double p_head = segment_exponent(0);
    const double p_tail = segment_exponent(ks.size() >= 2 ? ks.size() - 2 : 0);
    if (a < t_first) {
        const double hi = std::min(b, t_first);
        if (a == 0.0) {
            if (p_head > -1.0) {
                // int_0^hi c t^p = f(hi) * hi / (p+1)
                acc += f.eval(hi) * hi / (p_head + 1.0);
            } else {
                // sub-power heads (exponent -1 with slowly varying corrections):
                // extrapolate the head mass below t_first from the contraction
                // of the per-decade increments just inside the sampled range
                if (t_last < 100.0 * t_first) return kInf;
                const double d0 = integrate(f, t_first, 10.0 * t_first);
                const double d1 = integrate(f, 10.0 * t_first, 100.0 * t_first);
                if (!(d1 > 0.0)) return kInf;
                const double r = d0 / d1;
                if (r >= 0.97) return kInf;  // increments not contracting
                acc += d0 * r / (1.0 - r);
                if (hi < t_first) acc -= integrate(f, hi, t_first);
            }
        } else {
            acc += piece(a, hi, p_head);
        }
    }
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        const double lo = std::max(a, ks[i].first);
        const double hi = std::min(b, ks[i + 1].first);
        if (hi > lo) acc += piece(lo, hi, segment_exponent(i));
    }
    if (b > t_last) acc += piece(std::max(a, t_last), b, p_tail);
    return acc;
}

MonotoneFunction rearrangement(const MonotoneFunction& f) {
    const auto& ks = f.knots();
    if (f.interp() == Interp::loglog_linear) {
        // generalized inverse of a sampled continuous decreasing function:
        // swap axes, plateaus resolve to their smallest argument
        std::vector<std::pair<double, double>> out;
        for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
            if (!out.empty() && it->second == out.back().first) {
                out.back().second = it->first;  // smaller t wins the plateau
                continue;
            }
            out.push_back({it->second, it->first});
        }
        return MonotoneFunction::loglog(std::move(out));
    }
    const std::size_t m = ks.size() - 1;
    std::vector<std::pair<double, double>> out;
    const double vm = ks[m].second;
    if (vm > 0.0) {
        out.push_back({0.0, kInf});
        out.push_back({vm, ks[m].first});
    } else {
        out.push_back({0.0, ks[m].first});
    }
    for (std::size_t i = m; i-- > 1;) out.push_back({ks[i].second, ks[i].first});
    if (!std::isinf(ks[0].second) && (out.empty() || ks[0].second > out.back().first))
        out.push_back({ks[0].second, 0.0});
    return MonotoneFunction::step(std::move(out));
}

namespace {

// (t, value) samples over the function's variation range, geometric spacing
// for step mode, native knots for loglog mode.
std::vector<std::pair<double, double>> sample_table(const MonotoneFunction& f, double t_lo,
                                                    double t_hi, std::size_t per_decade) {
    const auto& ks = f.knots();
    std::vector<std::pair<double, double>> table;
    if (f.interp() == Interp::loglog_linear) {
        for (const auto& k : ks) {
            if (t_lo > 0.0 && k.first < t_lo) continue;
            if (t_hi > 0.0 && k.first > t_hi) continue;
            table.push_back(k);
        }
        return table;
    }
    double lo = t_lo, hi = t_hi;
    if (lo <= 0.0) lo = f.arg_lo();
    if (hi <= 0.0) hi = f.arg_hi();
    if (!(lo > 0.0) || !(hi > lo)) throw EstimationError("sample_table: empty range");
    const std::size_t n =
        std::max<std::size_t>(8, static_cast<std::size_t>(std::log10(hi / lo) * per_decade) + 1);
    for (double t : geometric_grid_n(lo, hi, n)) {
        const double v = f.eval(t);
        if (v > 0.0 && std::isfinite(v)) table.push_back({t, v});
    }
    return table;
}

}  // namespace

PowerExponentReport power_exponent(const MonotoneFunction& mu, double t_lo, double t_hi,
                                   std::size_t window, std::size_t per_decade) {
    auto table = sample_table(mu, t_lo, t_hi, per_decade);
    if (table.size() < window)
        throw EstimationError("power_exponent: too few samples in range");
    PowerExponentReport rep;
    rep.table = table;
    std::vector<double> x, y;
    for (auto it = table.rbegin(); it != table.rend(); ++it) {  // ascending log(1/t)
        x.push_back(std::log(1.0 / it->first));
        y.push_back(std::log(it->second));
    }
    rep.windows = window_slopes(x, y, window);
    rep.slope_liminf = aggregate(rep.windows, Mode::liminf);
    rep.alpha = rep.slope_liminf < 1e-9 ? kInf : 1.0 / rep.slope_liminf;
    return rep;
}

DualityReport duality_check(const MonotoneFunction& lambda_fn, std::size_t window) {
    DualityReport rep;
    if (lambda_fn.terminal_value() == 0.0 &&
        lambda_fn.interp() == Interp::step_right_continuous) {
        // compact support: mu stays bounded, lambda hits zero; both exponents
        // degenerate to +inf under the 0/inf convention
        rep.degenerate = true;
        rep.left_alpha = rep.right_alpha = kInf;
        return rep;
    }
    rep.left_alpha = power_exponent(rearrangement(lambda_fn), 0.0, 0.0, window).alpha;
    auto table = sample_table(lambda_fn, 0.0, 0.0, 8);
    if (table.size() < window) throw EstimationError("duality_check: too few samples");
    std::vector<double> x, y;
    for (const auto& [s, v] : table) {
        x.push_back(std::log(s));
        y.push_back(std::log(v));
    }
    const auto windows = window_slopes(x, y, window);
    double best = -kInf;
    for (const auto& w : windows) best = std::max(best, -w.slope);
    rep.right_alpha = best;
    rep.gap = (std::isinf(rep.left_alpha) && std::isinf(rep.right_alpha))
                  ? 0.0
                  : std::fabs(rep.left_alpha - rep.right_alpha);
    return rep;
}

SpectralMeasure SpectralMeasure::from_atoms(std::vector<std::pair<double, double>> atoms) {
    for (auto& [lam, w] : atoms) {
        if (lam < -1e-9 || w < 0.0)
            throw std::invalid_argument("spectral atoms need lambda >= 0, weight >= 0");
        if (lam < 0.0) lam = 0.0;
    }
    std::sort(atoms.begin(), atoms.end());
    SpectralMeasure m;
    m.atoms = std::move(atoms);
    for (const auto& [lam, w] : m.atoms) m.total += w;
    return m;
}

SpectralMeasure roe_spectral_measure(const LaplacianModel& model, std::uint32_t basepoint,
                                     double r) {
    if (basepoint >= model.size())
        throw std::invalid_argument("roe_spectral_measure: bad basepoint");
    std::vector<double> dist = dijkstra(model.graph(), basepoint);
    std::vector<std::uint32_t> ball_nodes;
    for (std::uint32_t x = 0; x < model.size(); ++x)
        if (dist[x] < r) ball_nodes.push_back(x);
    if (ball_nodes.empty()) throw std::invalid_argument("roe_spectral_measure: empty ball");
    const auto& sp = model.spectrum();
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(model.size());
    for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k) {
        double w = 0.0;
        for (auto x : ball_nodes) w += sp.eigenvectors(x, k) * sp.eigenvectors(x, k);
        atoms.push_back({sp.eigenvalues(k), w / static_cast<double>(ball_nodes.size())});
    }
    return SpectralMeasure::from_atoms(std::move(atoms));
}

MonotoneFunction spectral_to_theta(const SpectralMeasure& measure,
                                   const std::vector<double>& t_grid) {
    std::vector<std::pair<double, double>> samples;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("spectral_to_theta: t must be > 0");
        double acc = 0.0;
        for (const auto& [lam, w] : measure.atoms) acc += w * std::exp(-lam * t);
        samples.push_back({t, acc});
    }
    return MonotoneFunction::loglog(std::move(samples));
}

std::vector<std::pair<double, double>> counting_function(const SpectralMeasure& measure,
                                                         const std::vector<double>& lambda_grid,
                                                         bool normalize) {
    std::vector<std::pair<double, double>> out;
    const double denom = normalize && measure.total > 0.0 ? measure.total : 1.0;
    for (double lam : lambda_grid) {
        double acc = 0.0;
        for (const auto& [l, w] : measure.atoms) {
            if (l > lam) break;
            acc += w;
        }
        out.push_back({lam, acc / denom});
    }
    return out;
}

MonotoneFunction resolvent_distribution(const SpectralMeasure& measure) {
    // thresholds s = 1/lambda over the positive spectrum, ascending in s
    std::map<double, double> drop;  // s -> weight leaving at s
    for (const auto& [lam, w] : measure.atoms)
        if (lam > 1e-12 && w > 0.0) drop[1.0 / lam] += w;
    if (drop.empty())
        throw std::invalid_argument("resolvent_distribution: no positive spectrum");
    // suffix sums so the terminal value is exactly zero
    std::vector<std::pair<double, double>> knots;
    knots.push_back({0.0, 0.0});
    double tail = 0.0;
    std::vector<std::pair<double, double>> drops(drop.begin(), drop.end());
    for (auto it = drops.rbegin(); it != drops.rend(); ++it) tail += it->second;
    knots.front().second = tail;
    double running = tail;
    for (const auto& [s, w] : drops) {
        running -= w;
        knots.push_back({s, std::max(0.0, running)});
    }
    knots.back().second = 0.0;
    return MonotoneFunction::step(std::move(knots));
}

namespace {

NovikovShubinReport ns_from_slopes(const std::vector<double>& x, const std::vector<double>& y,
                                   std::size_t window) {
    if (x.size() < window) throw EstimationError("novikov_shubin: too few samples");
    NovikovShubinReport rep;
    rep.windows = window_slopes(x, y, window);
    rep.slope = aggregate(rep.windows, Mode::limsup);
    rep.alpha0 = 2.0 * rep.slope;
    return rep;
}

}  // namespace

NovikovShubinReport novikov_shubin_theta(const std::vector<std::pair<double, double>>& theta,
                                         std::size_t window) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& [t, v] : theta)
        if (t > 0.0 && v > 0.0) rows.push_back({t, v});
    std::sort(rows.begin(), rows.end());
    std::vector<double> x, y;  // ascending log(1/t): iterate t descending
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        x.push_back(std::log(1.0 / it->first));
        y.push_back(std::log(it->second));
    }
    return ns_from_slopes(x, y, window);
}

NovikovShubinReport novikov_shubin_counting(const std::vector<std::pair<double, double>>& n_table,
                                            std::size_t window) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& [lam, v] : n_table)
        if (lam > 0.0 && v > 0.0) rows.push_back({lam, v});
    std::sort(rows.begin(), rows.end());
    std::vector<double> x, y;
    for (const auto& [lam, v] : rows) {
        x.push_back(std::log(lam));
        y.push_back(std::log(v));
    }
    return ns_from_slopes(x, y, window);
}

EccentricityReport eccentricity_test(const MonotoneFunction& mu) {
    EccentricityReport rep;
    const double upper = std::min(1.0, mu.domain_hi());
    const double lo = std::max(mu.arg_lo(), upper * 1e-300);
    if (!(lo > 0.0) || upper / lo < 1000.0) {
        rep.branch = EccBranch::inconclusive;
        return rep;  // needs at least three decades of tail
    }
    // branch detection: per-decade increments of int_t^upper mu shrink
    // geometrically iff the head is integrable; a non-shrinking increment
    // (log divergence and worse) marks the divergent branch
    std::vector<double> decades;
    for (double t = upper / 10.0; t >= lo * 0.999; t /= 10.0) decades.push_back(t);
    std::vector<double> increments;
    double prev = integrate(mu, decades.front(), upper);
    for (std::size_t k = 1; k < decades.size(); ++k) {
        const double cur = integrate(mu, decades[k], upper);
        increments.push_back(cur - prev);
        prev = cur;
    }
    const double d_last = increments.back();
    const double d_prev = increments[increments.size() - 2];
    if (d_last <= 0.0 || d_prev <= 0.0) {
        rep.branch = EccBranch::integrable;  // tail already converged
    } else {
        const double ratio = d_last / d_prev;
        if (ratio >= 0.999) {
            rep.branch = EccBranch::divergent;
        } else {
            // geometric estimate of the mass still below the sampled range;
            // the integral is numerically stable when that remainder is small
            const double tail = d_last * ratio / (1.0 - ratio);
            const double total = integrate(mu, decades.back(), upper);
            if (tail <= 0.25 * total) {
                rep.branch = EccBranch::integrable;
            } else {
                rep.branch = EccBranch::inconclusive;
                return rep;
            }
        }
    }
    rep.conclusive = true;

    // ratio tail estimate over the lowest half decade of t
    std::vector<double> ts = geometric_grid_n(lo, lo * std::sqrt(10.0), 8);
    double acc = 0.0;
    for (double t : ts) {
        double ratio;
        if (rep.branch == EccBranch::integrable) {
            const double num = integrate(mu, 0.0, t);
            const double den = integrate(mu, 0.0, 2.0 * t);
            if (std::isinf(num) || std::isinf(den)) {
                rep.branch = EccBranch::inconclusive;
                rep.conclusive = false;
                return rep;
            }
            ratio = num / den;
        } else {
            ratio = integrate(mu, t, upper) / integrate(mu, 2.0 * t, upper);
        }
        acc += ratio;
    }
    rep.ratio_limit = acc / static_cast<double>(ts.size());
    rep.eccentric = std::fabs(rep.ratio_limit - 1.0) <= 0.02;
    return rep;
}

MonotoneFunction power_transform(const MonotoneFunction& mu, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power_transform: alpha must be > 0");
    std::vector<std::pair<double, double>> knots = mu.knots();
    for (auto& [a, v] : knots)
        if (!std::isinf(v)) v = std::pow(v, alpha);
    return mu.interp() == Interp::step_right_continuous
               ? MonotoneFunction::step(std::move(knots))
               : MonotoneFunction::loglog(std::move(knots));
}

double GeneralizedLimitAt0::apply(const std::vector<double>& ts,
                                  const std::vector<double>& vals) const {
    if (ts.empty() || ts.size() != vals.size())
        throw std::invalid_argument("GeneralizedLimitAt0: bad table");
    const double cut = ts.front() * std::pow(10.0, window_decades);
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] <= cut * (1.0 + 1e-12)) {
            acc += vals[i];
            ++k;
        }
    return acc / static_cast<double>(k);
}

double GeneralizedLimitAt0::shifted(const std::vector<double>& ts,
                                    const std::vector<double>& vals) const {
    const double lo = ts.front() * std::pow(10.0, window_decades);
    const double hi = ts.front() * std::pow(10.0, 2.0 * window_decades);
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] > lo && ts[i] <= hi * (1.0 + 1e-12)) {
            acc += vals[i];
            ++k;
        }
    return k ? acc / static_cast<double>(k) : apply(ts, vals);
}

SingularTraceResult singular_trace(const MonotoneFunction& mu_a,
                                   const MonotoneFunction& mu_t,
                                   const GeneralizedLimitAt0& omega) {
    const EccentricityReport ecc = eccentricity_test(mu_t);
    if (!ecc.conclusive || !ecc.eccentric)
        throw std::domain_error("singular_trace: mu_T is not eccentric");
    SingularTraceResult res;
    res.branch = ecc.branch;
    const double upper = std::min({1.0, mu_t.domain_hi(), mu_a.domain_hi()});
    const double lo = std::max(mu_t.arg_lo(), mu_a.arg_lo());
    if (!(lo > 0.0) || !(upper > lo))
        throw std::domain_error("singular_trace: incompatible sampling ranges");
    const std::size_t n = std::max<std::size_t>(
        24, static_cast<std::size_t>(std::log10(upper / lo) * 8.0));
    std::vector<double> ts = geometric_grid_n(lo, upper / 2.0, n);
    std::vector<double> g;
    g.reserve(ts.size());
    for (double t : ts) {
        double num, den;
        if (ecc.branch == EccBranch::integrable) {
            num = integrate(mu_a, 0.0, t);
            den = integrate(mu_t, 0.0, t);
            if (std::isinf(num))
                throw std::domain_error("singular_trace: mu_A branch mismatch (divergent head)");
        } else {
            num = integrate(mu_a, t, upper);
            den = integrate(mu_t, t, upper);
        }
        g.push_back(num / den);
    }
    for (std::size_t i = 0; i < ts.size(); ++i) res.ratio_table.push_back({ts[i], g[i]});
    res.value = omega.apply(ts, g);
    res.window_shift_value = omega.shifted(ts, g);
    return res;
}

}  // namespace asydim
