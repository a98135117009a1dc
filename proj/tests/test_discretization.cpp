#include "doctest.h"

#include <cmath>

#include "asydim/discretization.hpp"
#include "asydim/errors.hpp"
#include "asydim/spaces.hpp"

using namespace asydim;

namespace {

MetricSpace segment(int n_points) {
    std::vector<double> coords;
    for (int i = 0; i < n_points; ++i) coords.push_back(i);
    return MetricSpace::from_points(coords, 1, MetricKind::euclidean,
                                    static_cast<PointId>(n_points / 2));
}

}  // namespace

TEST_CASE("greedy nets") {
    MetricSpace line = segment(21);
    Net net = build_net(line, 3.0, 3.0);
    CHECK(net.centers == std::vector<PointId>{0, 3, 6, 9, 12, 15, 18});

    // separation and covering certificates
    for (std::size_t i = 0; i < net.centers.size(); ++i)
        for (std::size_t j = i + 1; j < net.centers.size(); ++j)
            CHECK(line.distance(net.centers[i], net.centers[j]) >= net.eps);
    for (PointId p = 0; p < line.size(); ++p) {
        double best = 1e300;
        for (PointId c : net.centers) best = std::min(best, line.distance(p, c));
        CHECK(best <= 2.0);
    }

    SUBCASE("singleton") {
        MetricSpace one = MetricSpace::from_points({0.0}, 1, MetricKind::euclidean);
        CHECK(build_net(one, 1.0, 1.0).centers == std::vector<PointId>{0});
    }
    SUBCASE("eps below half the minimum spacing keeps everything") {
        CHECK(build_net(line, 0.5, 0.5).centers.size() == 21);
    }
    SUBCASE("precondition eps <= 2R") {
        CHECK_THROWS_AS(build_net(line, 3.0, 1.0), std::invalid_argument);
    }
    SUBCASE("covering radius certificate failure") {
        MetricSpace gappy =
            MetricSpace::from_points({0.0, 4.5, 10.0}, 1, MetricKind::euclidean);
        CHECK_THROWS_AS(build_net(gappy, 8.0, 4.0), DiscretizationError);
    }
}

TEST_CASE("discretization graphs") {
    MetricSpace line = segment(21);
    Net net = build_net(line, 3.0, 3.0);
    WeightedGraph g = build_graph(line, net);
    CHECK(g.size() == 7);
    CHECK(g.edges().size() == 6);  // path: consecutive centers at distance 3 < 6
    for (const auto& e : g.edges()) CHECK(e.weight == doctest::Approx(3.0));
    CHECK(g.connected());
    CHECK(combinatorial_distance(g, 0, 6) == doctest::Approx(18.0));
    CHECK(combinatorial_distance(g, 3, 3) == 0.0);

    SUBCASE("single center yields no edges") {
        MetricSpace tiny = segment(3);
        Net n1 = build_net(tiny, 6.0, 3.0);
        CHECK(n1.centers.size() == 1);
        CHECK(build_graph(tiny, n1).edges().empty());
    }
    SUBCASE("complete graph when diameter < 2R") {
        Net n2 = build_net(line, 1.0, 25.0);
        WeightedGraph complete = build_graph(line, n2);
        CHECK(complete.edges().size() == n2.centers.size() * (n2.centers.size() - 1) / 2);
    }
    SUBCASE("combinatorial distance dominates the space distance") {
        for (std::size_t i = 0; i < net.centers.size(); ++i) {
            std::vector<double> d = dijkstra(g, static_cast<std::uint32_t>(i));
            for (std::size_t j = 0; j < net.centers.size(); ++j)
                CHECK(d[j] >= line.distance(net.centers[i], net.centers[j]) - 1e-12);
        }
    }
    SUBCASE("disconnected graphs report infinite distance") {
        WeightedGraph two(4, {{0, 1, 1.0}, {2, 3, 1.0}});
        CHECK(!two.connected());
        CHECK(std::isinf(combinatorial_distance(two, 0, 3)));
    }
}

TEST_CASE("discretization preserves the dimension estimate") {
    SUBCASE("lattice line") {
        MetricSpace z = segment(4097);
        ScaleGrid grid;
        grid.R_values = geometric_grid(16.0, 1024.0, 2.0);
        DiscretizationReport rep = discretization_dim_check(z, 3.0, 3.0, grid);
        CHECK(rep.graph_connected);
        CHECK(rep.gap <= 0.15);
    }
    SUBCASE("lattice plane") {
        MetricSpace z2 = gen_lattice(2, 64, MetricKind::sup);
        ScaleGrid grid;
        grid.R_values = {8, 16, 32, 64};
        DiscretizationReport rep = discretization_dim_check(z2, 2.0, 2.0, grid);
        CHECK(rep.graph_connected);
        CHECK(rep.gap <= 0.2);
    }
    SUBCASE("identity discretization has zero gap") {
        // eps below the minimum spacing keeps every point; 2R > 1 recovers
        // the unit edges, so the combinatorial metric equals the original
        MetricSpace z = segment(1025);
        ScaleGrid grid;
        grid.R_values = geometric_grid(8.0, 256.0, 2.0);
        DiscretizationReport rep = discretization_dim_check(z, 0.5, 0.75, grid);
        CHECK(rep.net.centers.size() == z.size());
        CHECK(rep.gap <= 1e-9);
    }
}
