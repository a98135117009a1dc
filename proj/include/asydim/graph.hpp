#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace asydim {

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double weight = 1.0;
};

// Undirected weighted graph. Edge weights are lengths, in the same unit as
// the metric space the graph discretizes. Stored symmetrically in CSR form.
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t size() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Neighbors of u as parallel (vertex, weight) ranges.
    std::size_t degree(std::uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
    const std::uint32_t* adj_begin(std::uint32_t u) const { return adj_.data() + offsets_[u]; }
    const double* w_begin(std::uint32_t u) const { return w_.data() + offsets_[u]; }

    bool connected() const;

    static WeightedGraph path(std::size_t n, double weight = 1.0);
    static WeightedGraph cycle(std::size_t n, double weight = 1.0);
    static WeightedGraph grid2d(std::size_t w, std::size_t h, double weight = 1.0);
    // Cartesian product: vertices (a,b), edges along either factor.
    static WeightedGraph cartesian_product(const WeightedGraph& g, const WeightedGraph& h);

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> adj_;
    std::vector<double> w_;
};

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Single-source shortest-path distances (label-setting, binary heap).
// Unreachable vertices get +infinity.
std::vector<double> dijkstra(const WeightedGraph& g, std::uint32_t source);

double combinatorial_distance(const WeightedGraph& g, std::uint32_t u, std::uint32_t v);

}  // namespace asydim
