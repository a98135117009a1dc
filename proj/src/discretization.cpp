#include "asydim/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "asydim/errors.hpp"

namespace asydim {

Net build_net(const MetricSpace& space, double eps, double R) {
    if (!(eps > 0.0) || !(eps <= 2.0 * R))
        throw std::invalid_argument("build_net: need 0 < eps <= 2R");
    Net net;
    net.eps = eps;
    net.R = R;
    const std::size_t n = space.size();
    std::vector<PointId> all = whole_space(space).members;
    std::vector<double> mind(n, std::numeric_limits<double>::infinity());
    std::vector<double> row;
    for (PointId p = 0; p < n; ++p) {
        if (mind[p] < eps) continue;
        net.centers.push_back(p);
        space.distances_to(p, all, row);
        for (std::size_t i = 0; i < n; ++i) mind[i] = std::min(mind[i], row[i]);
    }
    // covering certificate: every point within R of some center
    double worst = 0.0;
    PointId offender = 0;
    for (PointId p = 0; p < n; ++p)
        if (mind[p] > worst) {
            worst = mind[p];
            offender = p;
        }
    if (worst > R) {
        std::ostringstream msg;
        msg << "build_net: covering radius " << worst << " > R at point " << offender;
        throw DiscretizationError(msg.str());
    }
    return net;
}

WeightedGraph build_graph(const MetricSpace& space, const Net& net) {
    const std::size_t k = net.centers.size();
    std::vector<Edge> edges;
    std::vector<double> row;
    for (std::size_t i = 0; i < k; ++i) {
        space.distances_to(net.centers[i], net.centers, row);
        for (std::size_t j = i + 1; j < k; ++j)
            if (row[j] < 2.0 * net.R)
                edges.push_back({static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(j), row[j]});
    }
    return WeightedGraph(k, std::move(edges));
}

DiscretizationReport discretization_dim_check(const MetricSpace& space, double eps,
                                              double R, const ScaleGrid& grid) {
    DiscretizationReport rep;
    rep.net = build_net(space, eps, R);
    WeightedGraph g = build_graph(space, rep.net);
    rep.graph_connected = g.connected();

    // graph basepoint: the net center nearest the space basepoint
    std::vector<double> row;
    space.distances_to(space.basepoint(), rep.net.centers, row);
    const std::size_t gb =
        std::min_element(row.begin(), row.end()) - row.begin();

    std::vector<PointId> all = whole_space(space).members;
    std::vector<double> dspace;
    space.distances_to(space.basepoint(), all, dspace);
    auto space_volume = [&dspace](double radius) {
        std::size_t c = 0;
        for (double d : dspace)
            if (d < radius) ++c;
        return static_cast<double>(c);
    };
    std::vector<double> dgraph = dijkstra(g, static_cast<std::uint32_t>(gb));
    auto graph_volume = [&dgraph](double radius) {
        std::size_t c = 0;
        for (double d : dgraph)
            if (d < radius) ++c;
        return static_cast<double>(c);
    };

    rep.dim_space = asymptotic_dim_volume(space_volume, grid, Mode::limsup);
    rep.dim_graph = asymptotic_dim_volume(graph_volume, grid, Mode::limsup);
    rep.gap = std::fabs(rep.dim_space.value - rep.dim_graph.value);
    return rep;
}

}  // namespace asydim
