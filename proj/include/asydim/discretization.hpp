#pragma once

#include "asydim/dimension.hpp"
#include "asydim/graph.hpp"
#include "asydim/metric_space.hpp"

namespace asydim {

// eps-separated, R-covering net of a sampled space.
struct Net {
    std::vector<PointId> centers;
    double eps = 0.0;  // separation radius
    double R = 0.0;    // covering radius
};

// Greedy pass in fixed point order: accept a point iff it is >= eps from
// every accepted center. The covering-radius certificate is verified
// exhaustively afterwards.
Net build_net(const MetricSpace& space, double eps, double R);

// Vertices are net centers; one edge per center pair at space distance
// < 2R, weighted by that distance. Returns a disconnected graph silently;
// callers check connected() when they care.
WeightedGraph build_graph(const MetricSpace& space, const Net& net);

struct DiscretizationReport {
    Net net;
    bool graph_connected = false;
    DimEstimate dim_space;
    DimEstimate dim_graph;
    double gap = 0.0;
};

// Compares the asymptotic dimension of the space with that of its
// discretization (combinatorial metric, counting measure), both via the
// volume route from the respective basepoints.
DiscretizationReport discretization_dim_check(const MetricSpace& space, double eps,
                                              double R, const ScaleGrid& grid);

}  // namespace asydim
