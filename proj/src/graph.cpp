#include "asydim/graph.hpp"

#include <queue>
#include <stdexcept>

namespace asydim {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loops not allowed");
        if (!(e.weight > 0.0)) throw std::invalid_argument("edge weights must be positive");
    }
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(2 * edges_.size());
    w_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adj_[cursor[e.u]] = e.v;
        w_[cursor[e.u]++] = e.weight;
        adj_[cursor[e.v]] = e.u;
        w_[cursor[e.v]++] = e.weight;
    }
}

bool WeightedGraph::connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<std::uint32_t> stack = {0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::size_t k = 0; k < degree(u); ++k) {
            const std::uint32_t v = adj_begin(u)[k];
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n_;
}

WeightedGraph WeightedGraph::path(std::size_t n, double weight) {
    std::vector<Edge> es;
    es.reserve(n > 0 ? n - 1 : 0);
    for (std::uint32_t i = 0; i + 1 < n; ++i) es.push_back({i, i + 1, weight});
    return WeightedGraph(n, std::move(es));
}

WeightedGraph WeightedGraph::cycle(std::size_t n, double weight) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<Edge> es;
    es.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
        es.push_back({i, static_cast<std::uint32_t>((i + 1) % n), weight});
    return WeightedGraph(n, std::move(es));
}

WeightedGraph WeightedGraph::grid2d(std::size_t w, std::size_t h, double weight) {
    std::vector<Edge> es;
    auto id = [w](std::size_t x, std::size_t y) { return static_cast<std::uint32_t>(y * w + x); };
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            if (x + 1 < w) es.push_back({id(x, y), id(x + 1, y), weight});
            if (y + 1 < h) es.push_back({id(x, y), id(x, y + 1), weight});
        }
    return WeightedGraph(w * h, std::move(es));
}

WeightedGraph WeightedGraph::cartesian_product(const WeightedGraph& g, const WeightedGraph& h) {
    const std::size_t ng = g.size(), nh = h.size();
    auto id = [nh](std::size_t a, std::size_t b) { return static_cast<std::uint32_t>(a * nh + b); };
    std::vector<Edge> es;
    es.reserve(g.edges().size() * nh + h.edges().size() * ng);
    for (const auto& e : g.edges())
        for (std::size_t b = 0; b < nh; ++b) es.push_back({id(e.u, b), id(e.v, b), e.weight});
    for (const auto& e : h.edges())
        for (std::size_t a = 0; a < ng; ++a) es.push_back({id(a, e.u), id(a, e.v), e.weight});
    return WeightedGraph(ng * nh, std::move(es));
}

std::vector<double> dijkstra(const WeightedGraph& g, std::uint32_t source) {
    if (source >= g.size()) throw std::invalid_argument("dijkstra: source out of range");
    std::vector<double> dist(g.size(), kUnreachable);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (std::size_t k = 0; k < g.degree(u); ++k) {
            const std::uint32_t v = g.adj_begin(u)[k];
            const double nd = d + g.w_begin(u)[k];
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    return dist;
}

double combinatorial_distance(const WeightedGraph& g, std::uint32_t u, std::uint32_t v) {
    if (u >= g.size() || v >= g.size())
        throw std::invalid_argument("combinatorial_distance: vertex out of range");
    if (u == v) return 0.0;
    return dijkstra(g, u)[v];
}

}  // namespace asydim
