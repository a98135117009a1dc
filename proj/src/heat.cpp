#include "asydim/heat.hpp"

#include <algorithm>
#include <cmath>
#include <lapacke.h>

#include "asydim/errors.hpp"

namespace asydim {

LaplacianModel::LaplacianModel(WeightedGraph g, bool weights_as_conductance,
                               std::size_t dense_threshold)
    : g_(std::move(g)), dense_threshold_(dense_threshold) {
    const std::size_t n = g_.size();
    degree_.assign(n, 0.0);
    std::size_t slots = 0;
    for (std::uint32_t u = 0; u < n; ++u) slots += g_.degree(u);
    conductance_.resize(slots);
    std::size_t at = 0;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::size_t k = 0; k < g_.degree(u); ++k, ++at) {
            const double c = weights_as_conductance ? g_.w_begin(u)[k] : 1.0;
            conductance_[at] = c;
            degree_[u] += c;
        }
}

void LaplacianModel::apply(const double* x, double* y) const {
    const std::size_t n = g_.size();
    std::size_t at = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        double acc = degree_[u] * x[u];
        for (std::size_t k = 0; k < g_.degree(u); ++k, ++at)
            acc -= conductance_[at] * x[g_.adj_begin(u)[k]];
        y[u] = acc;
    }
}

Eigen::MatrixXd LaplacianModel::dense_laplacian() const {
    const std::size_t n = g_.size();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    std::size_t at = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        L(u, u) = degree_[u];
        for (std::size_t k = 0; k < g_.degree(u); ++k, ++at)
            L(u, g_.adj_begin(u)[k]) -= conductance_[at];
    }
    return L;
}

bool LaplacianModel::has_spectrum() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.has_value();
}

const SpectrumCache& LaplacianModel::spectrum() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!cache_) {
        const std::size_t n = g_.size();
        SpectrumCache c;
        c.eigenvectors = dense_laplacian();
        c.eigenvalues.resize(n);
        const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<int>(n),
                                        c.eigenvectors.data(), static_cast<int>(n),
                                        c.eigenvalues.data());
        if (info != 0) throw NumericalError("dsyevd failed, info=" + std::to_string(info));
        if (c.eigenvalues.minCoeff() < -1e-9)
            throw NumericalError("Laplacian not PSD within tolerance");
        for (Eigen::Index i = 0; i < c.eigenvalues.size(); ++i)
            if (c.eigenvalues(i) < 0.0) c.eigenvalues(i) = 0.0;
        cache_ = std::move(c);
    }
    return *cache_;
}

double LaplacianModel::spectral_gap() const {
    const auto& sp = spectrum();
    for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i)
        if (sp.eigenvalues(i) > 1e-12) return sp.eigenvalues(i);
    return 0.0;
}

double LaplacianModel::t_saturation() const {
    const double gap = spectral_gap();
    return gap > 0.0 ? 1.0 / gap : std::numeric_limits<double>::infinity();
}

namespace {

void check_time(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat: t must be >= 0");
}

}  // namespace

std::vector<double> lanczos_heat_diagonal(const LaplacianModel& model, std::uint32_t x,
                                          const std::vector<double>& ts,
                                          std::size_t steps) {
    const std::size_t n = model.size();
    if (x >= n) throw std::invalid_argument("lanczos: node out of range");
    for (double t : ts) check_time(t);
    steps = std::min(steps, n);
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(steps);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v(x) = 1.0;
    basis.push_back(v);
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(n);
    for (std::size_t j = 0; j < steps; ++j) {
        model.apply(basis[j].data(), w.data());
        if (j > 0) w -= beta[j - 1] * basis[j - 1];
        const double a = w.dot(basis[j]);
        alpha.push_back(a);
        w -= a * basis[j];
        for (const auto& q : basis) w -= q.dot(w) * q;  // full reorthogonalization
        const double b = w.norm();
        if (b < 1e-12 || j + 1 == steps) break;
        beta.push_back(b);
        basis.push_back(w / b);
    }
    const int m = static_cast<int>(alpha.size());
    std::vector<double> d(alpha), e(beta);
    e.resize(std::max(0, m - 1));
    std::vector<double> z(static_cast<std::size_t>(m) * m);
    const int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, d.data(), e.data(), z.data(), m);
    if (info != 0) throw NumericalError("dstev failed, info=" + std::to_string(info));
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        double acc = 0.0;
        for (int k = 0; k < m; ++k) {
            const double first = z[static_cast<std::size_t>(k) * m];  // e_1 component
            acc += first * first * std::exp(-std::max(0.0, d[k]) * t);
        }
        out.push_back(acc);
    }
    return out;
}

std::vector<double> heat_diagonal(const LaplacianModel& model, double t,
                                  const std::vector<std::uint32_t>& nodes) {
    check_time(t);
    for (auto x : nodes)
        if (x >= model.size()) throw std::invalid_argument("heat_diagonal: node out of range");
    std::vector<double> out(nodes.size());
    if (model.size() <= model.dense_threshold() || model.has_spectrum()) {
        const auto& sp = model.spectrum();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto row = sp.eigenvectors.row(nodes[i]);
            double acc = 0.0;
            for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k)
                acc += row(k) * row(k) * std::exp(-sp.eigenvalues(k) * t);
            out[i] = acc;
        }
        return out;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i)
        out[i] = lanczos_heat_diagonal(model, nodes[i], {t}).front();
    return out;
}

Eigen::MatrixXd heat_diagonal_all(const LaplacianModel& model,
                                  const std::vector<double>& ts) {
    for (double t : ts) check_time(t);
    const std::size_t n = model.size();
    if (n <= model.dense_threshold() || model.has_spectrum()) {
        const auto& sp = model.spectrum();
        Eigen::MatrixXd V2 = sp.eigenvectors.cwiseAbs2();
        Eigen::MatrixXd W(n, ts.size());
        for (std::size_t j = 0; j < ts.size(); ++j)
            W.col(j) = (-sp.eigenvalues.array() * ts[j]).exp().matrix();
        return V2 * W;
    }
    Eigen::MatrixXd out(n, ts.size());
    for (std::uint32_t x = 0; x < n; ++x) {
        const auto vals = lanczos_heat_diagonal(model, x, ts);
        for (std::size_t j = 0; j < ts.size(); ++j) out(x, j) = vals[j];
    }
    return out;
}

Eigen::MatrixXd heat_kernel(const LaplacianModel& model, double t) {
    check_time(t);
    const auto& sp = model.spectrum();
    Eigen::VectorXd w = (-sp.eigenvalues.array() * t).exp();
    return sp.eigenvectors * w.asDiagonal() * sp.eigenvectors.transpose();
}

SemigroupDimReport semigroup_dim(const LaplacianModel& model,
                                 const std::vector<double>& t_grid,
                                 std::size_t window) {
    if (t_grid.size() < window) throw EstimationError("semigroup_dim: t grid too short");
    SemigroupDimReport rep;
    rep.t_sat = model.t_saturation();
    const double uniform = 1.0 / static_cast<double>(model.size());
    Eigen::MatrixXd diag = heat_diagonal_all(model, t_grid);
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        const double sup = diag.col(j).maxCoeff();
        // past t_sat (or once sup p_t flattens onto 1/n) the finite model no
        // longer mimics infinite volume; truncate the fit window there
        if (t_grid[j] > rep.t_sat || sup < uniform * 1.01) {
            rep.truncated = true;
            break;
        }
        rep.sup_table.push_back({t_grid[j], sup});
    }
    if (rep.sup_table.size() < window)
        throw EstimationError("semigroup_dim: saturation leaves too few scales");
    std::vector<double> x, y;
    for (const auto& [t, sup] : rep.sup_table) {
        x.push_back(std::log(t));
        y.push_back(-2.0 * std::log(sup));
    }
    DimEstimate est;
    est.mode = Mode::liminf;
    est.method = CountMethod::heat;
    est.scale_table = rep.sup_table;
    est.window_slopes = window_slopes(x, y, window);
    est.value = aggregate(est.window_slopes, Mode::liminf);
    rep.estimate = est;
    return rep;
}

double AveragingScheme::apply(const std::vector<double>& rs,
                              const std::vector<double>& vals) const {
    if (rs.empty() || rs.size() != vals.size())
        throw std::invalid_argument("AveragingScheme: bad sample table");
    switch (kind) {
        case Kind::last_scale:
            return vals.back();
        case Kind::cesaro_log: {
            const double lo = std::log(rs.front()), hi = std::log(rs.back());
            const double cut = hi - window_fraction * (hi - lo);
            double acc = 0.0;
            std::size_t k = 0;
            for (std::size_t i = 0; i < rs.size(); ++i)
                if (std::log(rs[i]) >= cut - 1e-12) {
                    acc += vals[i];
                    ++k;
                }
            return acc / static_cast<double>(k);
        }
        case Kind::sliding_max: {
            const std::size_t w = std::min(window, vals.size());
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t lo = 0; lo + w <= vals.size(); ++lo) {
                double acc = 0.0;
                for (std::size_t i = lo; i < lo + w; ++i) acc += vals[i];
                best = std::max(best, acc / static_cast<double>(w));
            }
            return best;
        }
    }
    return vals.back();
}

HeatTrace roe_theta(const LaplacianModel& model, const std::vector<double>& t_grid,
                    std::uint32_t basepoint, std::vector<double> r_grid,
                    const AveragingScheme& scheme) {
    if (basepoint >= model.size()) throw std::invalid_argument("roe_theta: bad basepoint");
    std::vector<double> dist = dijkstra(model.graph(), basepoint);
    double radius = 0.0;
    for (double d : dist)
        if (std::isfinite(d)) radius = std::max(radius, d);
    if (r_grid.empty()) {
        const double hi = std::max(1.0, 0.5 * radius);
        r_grid = geometric_grid_n(std::max(1.0, hi / 64.0), hi, 16);
    }
    std::vector<std::vector<std::uint32_t>> balls;
    for (double r : r_grid) {
        std::vector<std::uint32_t> b;
        for (std::uint32_t x = 0; x < model.size(); ++x)
            if (dist[x] < r) b.push_back(x);
        if (b.empty()) throw std::invalid_argument("roe_theta: empty ball at r");
        balls.push_back(std::move(b));
    }
    Eigen::MatrixXd diag = heat_diagonal_all(model, t_grid);

    HeatTrace trace;
    trace.basepoint = basepoint;
    trace.radii_used = r_grid;
    AveragingScheme shifted = scheme;  // one-step-smaller window for the shift diagnostic
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        std::vector<double> f(r_grid.size());
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            double acc = 0.0;
            for (auto x : balls[i]) acc += diag(x, j);
            f[i] = acc / static_cast<double>(balls[i].size());
        }
        const double theta = scheme.apply(r_grid, f);
        double theta_shift = theta;
        if (r_grid.size() > 1) {
            std::vector<double> rs(r_grid.begin(), r_grid.end() - 1);
            std::vector<double> fs(f.begin(), f.end() - 1);
            theta_shift = shifted.apply(rs, fs);
        }
        if (theta > 0.0)
            trace.shift_sensitivity =
                std::max(trace.shift_sensitivity, std::fabs(theta_shift - theta) / theta);
        trace.samples.push_back({t_grid[j], theta});
        trace.f_table.push_back(std::move(f));
    }
    return trace;
}

KernelVolumeReport sup_kernel_volume_check(const LaplacianModel& model,
                                           const std::vector<double>& t_grid,
                                           const std::function<double(double)>& volume) {
    KernelVolumeReport rep;
    Eigen::MatrixXd diag = heat_diagonal_all(model, t_grid);
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        KernelVolumeRow row;
        row.t = t_grid[j];
        row.sup_p = diag.col(j).maxCoeff();
        row.volume_sqrt_t = volume(std::sqrt(row.t));
        row.ratio = row.sup_p * row.volume_sqrt_t;
        if (!(row.ratio >= 1.0 / 50.0 && row.ratio <= 50.0)) rep.within_band = false;
        rep.rows.push_back(row);
    }
    return rep;
}

double mass_conservation_error(const LaplacianModel& model, double t) {
    Eigen::MatrixXd K = heat_kernel(model, t);
    return (K.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

double semigroup_diagonal_error(const LaplacianModel& model, double t) {
    Eigen::MatrixXd K = heat_kernel(model, t);
    Eigen::MatrixXd K2 = heat_kernel(model, 2.0 * t);
    double worst = 0.0;
    for (Eigen::Index x = 0; x < K.rows(); ++x)
        worst = std::max(worst, std::fabs(K2(x, x) - K.row(x).squaredNorm()));
    return worst;
}

}  // namespace asydim
