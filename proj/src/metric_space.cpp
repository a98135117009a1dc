#include "asydim/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace asydim {

MetricSpace MetricSpace::from_points(std::vector<double> coords, std::size_t dim,
                                     MetricKind metric, PointId basepoint) {
    if (metric != MetricKind::euclidean && metric != MetricKind::sup)
        throw std::invalid_argument("from_points: metric must be euclidean or sup");
    if (dim == 0 || coords.size() % dim != 0)
        throw std::invalid_argument("from_points: coords size not a multiple of dim");
    MetricSpace s;
    s.n_ = coords.size() / dim;
    s.kind_ = metric;
    s.dim_ = dim;
    s.coords_ = std::move(coords);
    if (basepoint >= s.n_) throw std::invalid_argument("basepoint out of range");
    s.basepoint_ = basepoint;
    s.validate_axioms();
    return s;
}

MetricSpace MetricSpace::from_matrix(std::vector<double> dist, std::size_t n,
                                     PointId basepoint) {
    if (dist.size() != n * n) throw std::invalid_argument("from_matrix: bad size");
    MetricSpace s;
    s.n_ = n;
    s.kind_ = MetricKind::matrix;
    s.matrix_ = std::move(dist);
    if (basepoint >= n) throw std::invalid_argument("basepoint out of range");
    s.basepoint_ = basepoint;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.matrix_[i * n + i] != 0.0)
            throw std::invalid_argument("from_matrix: nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j)
            if (!(s.matrix_[i * n + j] >= 0.0))
                throw std::invalid_argument("from_matrix: negative entry");
    }
    s.validate_axioms();
    return s;
}

MetricSpace MetricSpace::from_graph(WeightedGraph g, PointId basepoint) {
    MetricSpace s;
    s.n_ = g.size();
    s.kind_ = MetricKind::graph;
    s.graph_ = std::make_shared<WeightedGraph>(std::move(g));
    s.cache_ = std::make_shared<GraphCache>();
    if (basepoint >= s.n_) throw std::invalid_argument("basepoint out of range");
    s.basepoint_ = basepoint;
    return s;  // shortest paths satisfy the axioms by construction
}

MetricSpace MetricSpace::with_basepoint(PointId b) const {
    if (b >= n_) throw std::invalid_argument("basepoint out of range");
    MetricSpace s = *this;
    s.basepoint_ = b;
    return s;
}

const std::vector<double>& MetricSpace::graph_row(PointId src) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->rows.find(src);
    if (it == cache_->rows.end())
        it = cache_->rows.emplace(src, dijkstra(*graph_, src)).first;
    return it->second;
}

double MetricSpace::distance(PointId a, PointId b) const {
    if (a >= n_ || b >= n_) throw std::invalid_argument("distance: point id out of range");
    switch (kind_) {
        case MetricKind::euclidean: {
            double s = 0.0;
            const double* pa = coords_.data() + a * dim_;
            const double* pb = coords_.data() + b * dim_;
            for (std::size_t k = 0; k < dim_; ++k) {
                const double d = pa[k] - pb[k];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case MetricKind::sup: {
            double m = 0.0;
            const double* pa = coords_.data() + a * dim_;
            const double* pb = coords_.data() + b * dim_;
            for (std::size_t k = 0; k < dim_; ++k) m = std::max(m, std::fabs(pa[k] - pb[k]));
            return m;
        }
        case MetricKind::matrix:
            return matrix_[a * n_ + b];
        case MetricKind::graph:
            return graph_row(a)[b];
    }
    return 0.0;
}

void MetricSpace::distances_to(PointId src, const std::vector<PointId>& targets,
                               std::vector<double>& out) const {
    out.resize(targets.size());
    if (kind_ == MetricKind::graph) {
        const auto& row = graph_row(src);
        for (std::size_t i = 0; i < targets.size(); ++i) out[i] = row[targets[i]];
        return;
    }
    for (std::size_t i = 0; i < targets.size(); ++i) out[i] = distance(src, targets[i]);
}

double MetricSpace::radius_bound() const {
    double m = 0.0;
    if (kind_ == MetricKind::graph) {
        const auto& row = graph_row(basepoint_);
        for (double d : row)
            if (std::isfinite(d)) m = std::max(m, d);
        return m;
    }
    for (PointId p = 0; p < n_; ++p) m = std::max(m, distance(basepoint_, p));
    return m;
}

double MetricSpace::volume(double r) const {
    if (!volume_oracle_) throw std::logic_error("volume oracle not set");
    return volume_oracle_(r);
}

void MetricSpace::set_volume_oracle(std::function<double(double)> f) {
    volume_oracle_ = std::move(f);
}

void MetricSpace::validate_axioms() const {
    if (n_ < 2) return;
    const std::size_t trials = kind_ == MetricKind::graph ? 0 : 1000;
    std::mt19937 rng(12345);
    std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n_ - 1));
    for (std::size_t i = 0; i < trials; ++i) {
        const PointId a = pick(rng), b = pick(rng), c = pick(rng);
        const double ab = distance(a, b), ba = distance(b, a);
        const double ac = distance(a, c), bc = distance(b, c);
        const double scale = std::max({ab, ac, bc, 1.0});
        if (std::fabs(ab - ba) > 1e-12 * scale)
            throw std::invalid_argument("metric symmetry violated");
        if (ac > ab + bc + 1e-9 * scale)
            throw std::invalid_argument("triangle inequality violated");
        if (a == b && ab != 0.0) throw std::invalid_argument("distance(a,a) != 0");
    }
}

Subset whole_space(const MetricSpace& space) {
    Subset s;
    s.members.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) s.members[i] = static_cast<PointId>(i);
    return s;
}

Subset ball(const MetricSpace& space, PointId center, double R) {
    if (center >= space.size()) throw std::invalid_argument("ball: center out of range");
    if (!(R >= 0.0)) throw std::invalid_argument("ball: R must be >= 0");
    Subset out;
    if (R == 0.0) return out;
    std::vector<PointId> all = whole_space(space).members;
    std::vector<double> d;
    space.distances_to(center, all, d);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (d[i] < R) out.members.push_back(all[i]);
    return out;
}

namespace {

void require_cover_args(const Subset& omega, double r) {
    if (omega.empty()) throw std::invalid_argument("omega must be nonempty");
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
}

}  // namespace

std::size_t greedy_cover(const MetricSpace& space, const Subset& omega, double r,
                         std::vector<PointId>* centers) {
    require_cover_args(omega, r);
    const std::size_t m = omega.size();
    std::vector<double> mind(m, std::numeric_limits<double>::infinity());
    std::vector<double> row;
    std::size_t count = 0;
    std::size_t next = 0;  // first center: lowest id in omega
    while (true) {
        const PointId c = omega.members[next];
        if (centers) centers->push_back(c);
        ++count;
        space.distances_to(c, omega.members, row);
        for (std::size_t i = 0; i < m; ++i) mind[i] = std::min(mind[i], row[i]);
        double worst = -1.0;
        next = m;
        for (std::size_t i = 0; i < m; ++i)
            if (mind[i] > worst) {
                worst = mind[i];
                next = i;
            }
        if (worst < r) break;  // every point strictly inside some center's ball
    }
    return count;
}

PackResult packing_number(const MetricSpace& space, const Subset& omega, double r) {
    require_cover_args(omega, r);
    const std::size_t m = omega.size();
    PackResult out;
    std::vector<double> mind(m, std::numeric_limits<double>::infinity());
    std::vector<double> row;
    for (std::size_t i = 0; i < m; ++i) {
        if (mind[i] < 2.0 * r) continue;
        const PointId c = omega.members[i];
        out.centers.push_back(c);
        space.distances_to(c, omega.members, row);
        for (std::size_t j = 0; j < m; ++j) mind[j] = std::min(mind[j], row[j]);
    }
    out.count = out.centers.size();
    return out;
}

CoverResult covering_number(const MetricSpace& space, const Subset& omega, double r) {
    CoverResult out;
    out.count = greedy_cover(space, omega, r, &out.centers);
    PackResult p = packing_number(space, omega, r);
    out.packing_lower = p.count;
    out.packing_centers = std::move(p.centers);
    return out;
}

namespace {

// Candidate ball masks over omega for exact set cover.
std::vector<std::uint64_t> cover_masks(const MetricSpace& space, const Subset& omega,
                                       double r) {
    std::vector<PointId> all = whole_space(space).members;
    std::vector<double> d;
    std::vector<std::uint64_t> masks;
    for (PointId y : all) {
        space.distances_to(y, omega.members, d);
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < omega.size(); ++i)
            if (d[i] < r) m |= (1ull << i);
        if (m) masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    // drop masks dominated by a superset
    std::vector<std::uint64_t> keep;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < masks.size() && !dominated; ++j)
            if (i != j && (masks[i] & masks[j]) == masks[i] && masks[i] != masks[j])
                dominated = true;
        if (!dominated) keep.push_back(masks[i]);
    }
    return keep;
}

void cover_branch(const std::vector<std::uint64_t>& masks, std::uint64_t uncovered,
                  std::size_t used, std::size_t& best) {
    if (!uncovered) {
        best = std::min(best, used);
        return;
    }
    if (used + 1 >= best) return;
    // branch on the lowest uncovered element
    const int el = __builtin_ctzll(uncovered);
    std::vector<std::uint64_t> cands;
    for (std::uint64_t m : masks)
        if (m & (1ull << el)) cands.push_back(m);
    std::sort(cands.begin(), cands.end(), [uncovered](std::uint64_t a, std::uint64_t b) {
        return __builtin_popcountll(a & uncovered) > __builtin_popcountll(b & uncovered);
    });
    // lower bound: remaining elements / largest candidate coverage
    if (!cands.empty()) {
        const std::size_t biggest = __builtin_popcountll(cands.front() & uncovered);
        const std::size_t need =
            (__builtin_popcountll(uncovered) + biggest - 1) / biggest;
        if (used + need >= best) return;
    }
    for (std::uint64_t m : cands) cover_branch(masks, uncovered & ~m, used + 1, best);
}

std::size_t mis_branch(const std::vector<std::uint64_t>& nbr, std::uint64_t cand) {
    if (!cand) return 0;
    const int v = __builtin_ctzll(cand);
    // vertices with no remaining conflicts always join
    if ((nbr[v] & cand) == 0) return 1 + mis_branch(nbr, cand & ~(1ull << v));
    const std::size_t with_v = 1 + mis_branch(nbr, cand & ~(1ull << v) & ~nbr[v]);
    const std::size_t without_v = mis_branch(nbr, cand & ~(1ull << v));
    return std::max(with_v, without_v);
}

}  // namespace

std::size_t covering_number_exact(const MetricSpace& space, const Subset& omega, double r) {
    require_cover_args(omega, r);
    if (omega.size() > 64)
        throw std::invalid_argument("covering_number_exact: omega too large (> 64)");
    auto masks = cover_masks(space, omega, r);
    const std::uint64_t universe =
        omega.size() == 64 ? ~0ull : ((1ull << omega.size()) - 1);
    std::size_t best = greedy_cover(space, omega, r);
    cover_branch(masks, universe, 0, best);
    return best;
}

std::size_t packing_number_exact(const MetricSpace& space, const Subset& omega, double r) {
    require_cover_args(omega, r);
    if (omega.size() > 64)
        throw std::invalid_argument("packing_number_exact: omega too large (> 64)");
    const std::size_t m = omega.size();
    std::vector<std::uint64_t> nbr(m, 0);
    std::vector<double> d;
    for (std::size_t i = 0; i < m; ++i) {
        space.distances_to(omega.members[i], omega.members, d);
        for (std::size_t j = 0; j < m; ++j)
            if (j != i && d[j] < 2.0 * r) nbr[i] |= (1ull << j);
    }
    const std::uint64_t cand = m == 64 ? ~0ull : ((1ull << m) - 1);
    return mis_branch(nbr, cand);
}

MeasureStats measure_stats(const MetricSpace& space, const std::vector<double>& radii,
                           const std::vector<PointId>& center_sample) {
    if (center_sample.empty()) throw std::invalid_argument("measure_stats: no centers");
    for (double r : radii)
        if (!(r >= 0.0)) throw std::invalid_argument("measure_stats: negative radius");
    MeasureStats out;
    out.radii = radii;
    for (double r : radii) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        if (space.has_volume_oracle()) {
            lo = hi = space.volume(r);
        } else {
            for (PointId c : center_sample) {
                const double v = static_cast<double>(ball(space, c, r).size());
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        out.beta1.push_back(lo);
        out.beta2.push_back(hi);
    }
    return out;
}

}  // namespace asydim
