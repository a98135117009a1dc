#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "asydim/graph.hpp"

namespace asydim {

using PointId = std::uint32_t;

enum class MetricKind { euclidean, sup, matrix, graph };

// A set of sample points, sorted ascending.
struct Subset {
    std::vector<PointId> members;

    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }
};

struct MeasureStats {
    std::vector<double> radii;
    std::vector<double> beta1;  // per-radius infimum of sampled ball volumes
    std::vector<double> beta2;  // per-radius supremum
};

// Finite metric space with a distance oracle. Immutable after construction;
// the graph-backed oracle keeps an internal per-source distance cache behind
// a mutex, so concurrent queries stay safe.
class MetricSpace {
public:
    static MetricSpace from_points(std::vector<double> coords, std::size_t dim,
                                   MetricKind metric, PointId basepoint = 0);
    static MetricSpace from_matrix(std::vector<double> dist, std::size_t n,
                                   PointId basepoint = 0);
    static MetricSpace from_graph(WeightedGraph g, PointId basepoint = 0);

    std::size_t size() const { return n_; }
    MetricKind kind() const { return kind_; }
    PointId basepoint() const { return basepoint_; }
    MetricSpace with_basepoint(PointId b) const;

    double distance(PointId a, PointId b) const;
    // Distances from src to each point of targets, written into out.
    void distances_to(PointId src, const std::vector<PointId>& targets,
                      std::vector<double>& out) const;

    // Max distance from the basepoint; a lower bound on the diameter (within
    // a factor 2) used for scale-grid guards.
    double radius_bound() const;

    bool has_volume_oracle() const { return static_cast<bool>(volume_oracle_); }
    double volume(double r) const;
    void set_volume_oracle(std::function<double(double)> f);

    std::size_t coord_dim() const { return dim_; }
    // Coordinate of point p in axis k (coordinate-backed spaces only).
    double coord(PointId p, std::size_t k) const { return coords_[p * dim_ + k]; }

private:
    MetricSpace() = default;
    void validate_axioms() const;

    std::size_t n_ = 0;
    MetricKind kind_ = MetricKind::euclidean;
    PointId basepoint_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> coords_;  // row-major n x dim
    std::vector<double> matrix_;  // row-major n x n
    std::shared_ptr<WeightedGraph> graph_;
    std::function<double(double)> volume_oracle_;

    struct GraphCache {
        std::mutex mu;
        std::unordered_map<PointId, std::vector<double>> rows;
    };
    std::shared_ptr<GraphCache> cache_;
    const std::vector<double>& graph_row(PointId src) const;
};

Subset whole_space(const MetricSpace& space);

// Open ball { p : distance(center, p) < R }. Exact comparison, no tolerance.
Subset ball(const MetricSpace& space, PointId center, double R);

struct PackResult {
    std::size_t count = 0;
    std::vector<PointId> centers;
};

struct CoverResult {
    std::size_t count = 0;               // greedy farthest-point cover size (upper bound on n_r)
    std::vector<PointId> centers;
    std::size_t packing_lower = 0;       // greedy packing at the same radius (lower bound on n_r)
    std::vector<PointId> packing_centers;
};

// Greedy farthest-point cover of omega by open r-balls with centers in omega.
// Deterministic: starts from the lowest id, ties broken by lowest id.
std::size_t greedy_cover(const MetricSpace& space, const Subset& omega, double r,
                         std::vector<PointId>* centers = nullptr);

CoverResult covering_number(const MetricSpace& space, const Subset& omega, double r);

// Greedy maximal family of centers in omega, pairwise >= 2r apart (fixed
// id-order scan). Maximality certifies the Kolmogorov sandwich bounds.
PackResult packing_number(const MetricSpace& space, const Subset& omega, double r);

// Exact minimum cover of omega by open r-balls centered anywhere in the
// space (branch and bound set cover). Guarded to |omega| <= 64.
std::size_t covering_number_exact(const MetricSpace& space, const Subset& omega, double r);

// Exact maximum 2r-separated subset of omega (max independent set). |omega| <= 64.
std::size_t packing_number_exact(const MetricSpace& space, const Subset& omega, double r);

MeasureStats measure_stats(const MetricSpace& space, const std::vector<double>& radii,
                           const std::vector<PointId>& center_sample);

}  // namespace asydim
