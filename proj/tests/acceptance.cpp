// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the assertions below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "asydim/dimension.hpp"
#include "asydim/discretization.hpp"
#include "asydim/heat.hpp"
#include "asydim/metric_space.hpp"
#include "asydim/spaces.hpp"
#include "asydim/spectral.hpp"

using namespace asydim;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%s) [%.1fs]\n", ok ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

MetricSpace lattice_segment(long n_points) {
    std::vector<double> coords;
    coords.reserve(n_points);
    for (long i = 0; i < n_points; ++i) coords.push_back(static_cast<double>(i));
    return MetricSpace::from_points(coords, 1, MetricKind::euclidean,
                                    static_cast<PointId>(n_points / 2));
}

MonotoneFunction power_fixture(double p, double lo, double hi) {
    std::vector<std::pair<double, double>> samples;
    const std::size_t n = static_cast<std::size_t>(std::log10(hi / lo) * 8.0) + 1;
    for (double t : geometric_grid_n(lo, hi, n)) samples.push_back({t, std::pow(t, p)});
    return MonotoneFunction::loglog(std::move(samples));
}

}  // namespace

int main() {
    // shared heavy fixtures
    LaplacianModel path4096(WeightedGraph::path(4096));
    LaplacianModel cycle4096(WeightedGraph::cycle(4096));

    criterion(1, "covering/packing sandwich on random subsets", [](std::string& d) {
        std::mt19937 rng(20240229);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::size_t violations = 0;
        for (int subset = 0; subset < 200; ++subset) {
            std::vector<double> coords;
            for (int i = 0; i < 60; ++i) coords.push_back(u(rng));
            MetricSpace space = MetricSpace::from_points(coords, 2, MetricKind::euclidean);
            Subset omega = whole_space(space);
            for (double r : {0.05, 0.1, 0.2}) {
                const std::size_t n_r = covering_number_exact(space, omega, r);
                const std::size_t nu_r = packing_number_exact(space, omega, r);
                const std::size_t n_2r = covering_number_exact(space, omega, 2.0 * r);
                if (!(n_r >= nu_r && nu_r >= n_2r)) ++violations;
            }
        }
        d = "violations=" + std::to_string(violations) + "/600";
        return violations == 0;
    });

    criterion(2, "asymptotic dimension of lattices", [](std::string& d) {
        MetricSpace z = lattice_segment(100000);
        ScaleGrid grid;
        grid.r_values = {4.0};
        grid.R_values = geometric_grid(16.0, 16384.0, 2.0);
        const double z_est = asymptotic_dim(z, grid, Mode::limsup).value;

        MetricSpace z2 = gen_lattice(2, 64, MetricKind::sup);
        ScaleGrid vgrid;
        vgrid.R_values = {8, 16, 32, 64};
        const double z2_est =
            asymptotic_dim_volume([&z2](double r) { return z2.volume(r); }, vgrid,
                                  Mode::limsup)
                .value;
        std::ostringstream os;
        os << "Z=" << z_est << " Z2=" << z2_est;
        d = os.str();
        return in_band(z_est, 0.9, 1.1) && in_band(z2_est, 1.8, 2.2);
    });

    criterion(3, "parabolic region alpha=0.5 volume slope", [](std::string& d) {
        ScaleGrid grid;
        grid.R_values = geometric_grid(100.0, 10000.0, 2.0);
        const double est = asymptotic_dim_volume(
                               [](double r) { return parabolic_area(0.5, r); }, grid,
                               Mode::limsup)
                               .value;
        d = "estimate=" + std::to_string(est);
        return in_band(est, 1.35, 1.65);
    });

    criterion(4, "discretization invariance on Z and Z^2", [](std::string& d) {
        MetricSpace z = lattice_segment(4097);
        ScaleGrid zgrid;
        zgrid.R_values = geometric_grid(16.0, 1024.0, 2.0);
        const double gap1 = discretization_dim_check(z, 3.0, 3.0, zgrid).gap;

        MetricSpace z2 = gen_lattice(2, 64, MetricKind::sup);
        ScaleGrid z2grid;
        z2grid.R_values = {8, 16, 32, 64};
        const double gap2 = discretization_dim_check(z2, 2.0, 2.0, z2grid).gap;
        std::ostringstream os;
        os << "gap_Z=" << gap1 << " gap_Z2=" << gap2;
        d = os.str();
        return gap1 <= 0.2 && gap2 <= 0.2;
    });

    criterion(5, "heat-flow exactness", [](std::string& d) {
        double worst_closed = 0.0;
        LaplacianModel two(WeightedGraph::path(2));
        for (double t : {0.1, 1.0, 5.0, 25.0}) {
            const double expect = 0.5 * (1.0 + std::exp(-2.0 * t));
            worst_closed =
                std::max(worst_closed, std::fabs(heat_diagonal(two, t, {0})[0] - expect));
        }
        for (std::size_t n : {16u, 48u, 64u}) {
            LaplacianModel cyc(WeightedGraph::cycle(n));
            for (double t : {0.5, 4.0, 32.0}) {
                double expect = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    expect += std::exp(-2.0 * t * (1.0 - std::cos(2.0 * M_PI * k / n)));
                expect /= static_cast<double>(n);
                worst_closed = std::max(
                    worst_closed, std::fabs(heat_diagonal(cyc, t, {1})[0] - expect));
            }
        }
        double worst_mass = 0.0, worst_semi = 0.0;
        for (auto g : {WeightedGraph::cycle(64), WeightedGraph::path(33),
                       WeightedGraph::grid2d(8, 8)}) {
            LaplacianModel model(std::move(g));
            for (double t : {0.5, 4.0, 32.0}) {
                worst_mass = std::max(worst_mass, mass_conservation_error(model, t));
                worst_semi = std::max(worst_semi, semigroup_diagonal_error(model, t));
            }
        }
        std::ostringstream os;
        os << "closed=" << worst_closed << " mass=" << worst_mass << " semi=" << worst_semi;
        d = os.str();
        return worst_closed < 1e-10 && worst_mass < 1e-8 && worst_semi < 1e-8;
    });

    double path_ad = 0.0;  // shared with criterion 6 detail below
    criterion(6, "semigroup dimension and the upper bound", [&](std::string& d) {
        SemigroupDimReport rep = semigroup_dim(path4096, geometric_grid(10.0, 1e4, 2.0));
        path_ad = rep.estimate.value;

        // volume-route asymptotic dimension of the matching lattice fixtures
        MetricSpace z = lattice_segment(4097);
        ScaleGrid zgrid;
        zgrid.R_values = geometric_grid(16.0, 1024.0, 2.0);
        std::vector<double> dist_from_base;
        z.distances_to(z.basepoint(), whole_space(z).members, dist_from_base);
        auto zvol = [&dist_from_base](double r) {
            std::size_t c = 0;
            for (double x : dist_from_base)
                if (x < r) ++c;
            return static_cast<double>(c);
        };
        const double z_dim = asymptotic_dim_volume(zvol, zgrid, Mode::limsup).value;

        MetricSpace z2 = gen_lattice(2, 64, MetricKind::sup);
        ScaleGrid z2grid;
        z2grid.R_values = {8, 16, 32, 64};
        const double z2_dim =
            asymptotic_dim_volume([&z2](double r) { return z2.volume(r); }, z2grid,
                                  Mode::limsup)
                .value;
        // product surrogate: sup p_t factorizes, so ad doubles
        const double prod_ad = 2.0 * path_ad;

        std::ostringstream os;
        os << "ad_path=" << path_ad << " (d_inf=" << z_dim << "), ad_Z2=" << prod_ad
           << " (d_inf=" << z2_dim << ")";
        d = os.str();
        return in_band(path_ad, 0.85, 1.15) && path_ad <= z_dim + 0.2 &&
               prod_ad <= z2_dim + 0.2;
    });

    HeatTrace path_theta, cycle_theta;
    criterion(7, "three-route Novikov-Shubin consistency", [&](std::string& d) {
        const std::vector<double> ts = geometric_grid(8.0, 8192.0, 2.0);
        bool ok = true;
        std::ostringstream os;
        struct Fixture {
            const char* name;
            LaplacianModel* model;
            std::uint32_t base;
            HeatTrace* keep;
        } fixtures[] = {{"path", &path4096, 2048, &path_theta},
                        {"cycle", &cycle4096, 0, &cycle_theta}};
        for (const auto& fx : fixtures) {
            HeatTrace theta = roe_theta(*fx.model, ts, fx.base, {}, AveragingScheme{});
            *fx.keep = theta;
            const double a_theta = novikov_shubin_theta(theta.samples).alpha0;

            std::vector<double> dist = dijkstra(fx.model->graph(), fx.base);
            double radius = 0.0;
            for (double x : dist) radius = std::max(radius, x);
            SpectralMeasure measure = roe_spectral_measure(*fx.model, fx.base, 0.5 * radius);
            auto n_table = counting_function(measure, geometric_grid_n(2e-4, 0.25, 26));
            const double a_n = novikov_shubin_counting(n_table, 6).alpha0;

            MonotoneFunction mu = rearrangement(resolvent_distribution(measure));
            PowerExponentReport pe =
                power_exponent(mu, mu.arg_lo() * 8.0, 0.5 * measure.total, 6);
            const double a_mu = 2.0 * pe.alpha;

            os << fx.name << ": theta=" << a_theta << " N=" << a_n << " mu=" << a_mu << "  ";
            ok = ok && std::fabs(a_theta - a_n) <= 0.2 && std::fabs(a_theta - a_mu) <= 0.2;
        }
        d = os.str();
        return ok;
    });

    criterion(8, "headline identity d_inf = alpha_0", [&](std::string& d) {
        MetricSpace z = lattice_segment(4097);
        ScaleGrid zgrid;
        zgrid.R_values = geometric_grid(16.0, 1024.0, 2.0);
        std::vector<double> dist_from_base;
        z.distances_to(z.basepoint(), whole_space(z).members, dist_from_base);
        auto zvol = [&dist_from_base](double r) {
            std::size_t c = 0;
            for (double x : dist_from_base)
                if (x < r) ++c;
            return static_cast<double>(c);
        };
        const double z_dim = asymptotic_dim_volume(zvol, zgrid, Mode::limsup).value;
        const double z_alpha0 = novikov_shubin_theta(path_theta.samples).alpha0;

        MetricSpace z2 = gen_lattice(2, 64, MetricKind::sup);
        ScaleGrid z2grid;
        z2grid.R_values = {8, 16, 32, 64};
        const double z2_dim =
            asymptotic_dim_volume([&z2](double r) { return z2.volume(r); }, z2grid,
                                  Mode::limsup)
                .value;
        // Z^2 surrogate: the diagonal factorizes over the product, so the
        // exhaustion trace is squared
        std::vector<std::pair<double, double>> theta2;
        for (const auto& [t, v] : path_theta.samples) theta2.push_back({t, v * v});
        const double z2_alpha0 = novikov_shubin_theta(theta2).alpha0;

        std::ostringstream os;
        os << "Z: d=" << z_dim << " a0=" << z_alpha0 << "; Z2: d=" << z2_dim
           << " a0=" << z2_alpha0;
        d = os.str();
        return std::fabs(z_dim - z_alpha0) <= 0.25 && std::fabs(z2_dim - z2_alpha0) <= 0.25;
    });

    criterion(9, "rearrangement involution and duality", [](std::string& d) {
        std::mt19937 rng(987);
        std::uniform_real_distribution<double> u(0.01, 1.0);
        std::uniform_int_distribution<int> mdist(0, 11);
        std::size_t involution_failures = 0;
        for (int trial = 0; trial < 500; ++trial) {
            const int m = mdist(rng);
            std::vector<double> vals;
            double acc = 0.0;
            for (int i = 0; i <= m; ++i) vals.push_back(acc += u(rng));
            std::reverse(vals.begin(), vals.end());
            std::vector<std::pair<double, double>> knots;
            double arg = 0.0;
            knots.push_back({0.0, vals[0]});
            for (int i = 1; i <= m; ++i) {
                arg += u(rng);
                knots.push_back({arg, vals[i]});
            }
            if (trial % 3 == 0) knots.back().second = 0.0;
            MonotoneFunction lam = MonotoneFunction::step(knots);
            if (rearrangement(rearrangement(lam)).knots() != lam.knots())
                ++involution_failures;
        }
        double worst_gap = 0.0;
        for (double p : {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5}) {
            DualityReport rep = duality_check(power_fixture(p, 1e-4, 1e4));
            worst_gap = std::max(worst_gap, rep.gap);
        }
        std::ostringstream os;
        os << "involution_failures=" << involution_failures << "/500 duality_gap="
           << worst_gap;
        d = os.str();
        return involution_failures == 0 && worst_gap <= 0.1;
    });

    criterion(10, "eccentricity and singular trace", [](std::string& d) {
        MonotoneFunction inv = power_fixture(-1.0, 1e-30, 1.0);
        MonotoneFunction sqrt_inv = power_fixture(-0.5, 1e-30, 1.0);
        MonotoneFunction sq_inv = power_fixture(-2.0, 1e-30, 1.0);

        EccentricityReport e1 = eccentricity_test(inv);
        EccentricityReport e2 = eccentricity_test(sqrt_inv);
        EccentricityReport e3 = eccentricity_test(sq_inv);
        bool ok = e1.eccentric && e1.branch == EccBranch::divergent;
        ok = ok && !e2.eccentric && !e3.eccentric;

        // prescribed-power criticality for every finite-alpha fixture
        for (const auto* mu : {&sqrt_inv, &sq_inv}) {
            const double alpha = power_exponent(*mu).alpha;
            ok = ok && std::isfinite(alpha) &&
                 eccentricity_test(power_transform(*mu, alpha)).eccentric;
        }

        GeneralizedLimitAt0 omega;
        const double normalization = singular_trace(inv, inv, omega).value;
        const double bounded =
            singular_trace(MonotoneFunction::step({{0.0, 1.0}}), inv, omega).value;
        const double doubled = singular_trace(inv.scaled(2.0), inv, omega).value;
        ok = ok && normalization == 1.0 && bounded <= 0.02 && doubled == 2.0;
        std::ostringstream os;
        os << "norm=" << normalization << " bounded=" << bounded << " doubled=" << doubled;
        d = os.str();
        return ok;
    });

    criterion(11, "oscillating end limsup/liminf gap", [](std::string& d) {
        OscGapReport rep = oscillating_dim_gap(6);
        bool ok = rep.even_slopes.size() >= 3 && rep.odd_slopes.size() >= 3;
        for (int n : {2, 3}) {
            ok = ok && in_band(rep.even_slopes[n - 1], 1.85, 2.05);
            ok = ok && in_band(rep.odd_slopes[n - 1], 1.4, 1.6);
        }
        ok = ok && (rep.limsup_estimate - rep.liminf_estimate >= 0.3);
        std::ostringstream os;
        os << "even(n=2,3)=" << rep.even_slopes[1] << "," << rep.even_slopes[2]
           << " odd(n=2,3)=" << rep.odd_slopes[1] << "," << rep.odd_slopes[2]
           << " gap=" << rep.limsup_estimate - rep.liminf_estimate;
        d = os.str();
        return ok;
    });

    criterion(12, "Davies end volume slopes", [](std::string& d) {
        ScaleGrid grid;
        grid.R_values = geometric_grid(10.0, 1e6, 2.0);
        std::ostringstream os;
        bool ok = true;
        for (double D : {2.0, 3.0}) {
            StandardEnd e = davies_end(2, D, 2.0 * M_PI);
            const double est =
                asymptotic_dim_volume([&e](double r) { return end_volume(e, r); }, grid,
                                      Mode::limsup)
                    .value;
            os << "D=" << D << ": " << est << "  ";
            ok = ok && std::fabs(est - D) <= 0.1;
        }
        d = os.str();
        return ok;
    });

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
