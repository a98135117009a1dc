// asydim: estimators for large-scale metric and heat-semigroup invariants on
// finite samples, graphs and analytic model spaces.
//
// Exit codes: 0 success (warnings go to a .log sidecar), 2 config error,
// 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "asydim/csv.hpp"
#include "asydim/dimension.hpp"
#include "asydim/discretization.hpp"
#include "asydim/errors.hpp"
#include "asydim/heat.hpp"
#include "asydim/spaces.hpp"
#include "asydim/spectral.hpp"

using namespace asydim;
using nlohmann::json;

extern "C" void openblas_set_num_threads(int);

namespace {

struct Warnings {
    std::vector<std::string> lines;
    void add(const std::string& s) { lines.push_back(s); }
    void flush(const std::string& out_path) const {
        if (lines.empty() || out_path.empty()) return;
        std::ofstream log(out_path + ".log");
        for (const auto& s : lines) log << s << "\n";
    }
};

// grid syntax: "a,b,c" | "lo..hi" (dyadic) | "lo..hi:geometric:K"
std::vector<double> parse_grid(const std::string& spec) {
    if (spec.find("..") == std::string::npos) {
        std::vector<double> out;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        return out;
    }
    const auto dots = spec.find("..");
    const double lo = std::stod(spec.substr(0, dots));
    std::string rest = spec.substr(dots + 2);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) return geometric_grid(lo, std::stod(rest), 2.0);
    const double hi = std::stod(rest.substr(0, colon));
    std::string kind = rest.substr(colon + 1);
    const auto colon2 = kind.find(':');
    if (colon2 == std::string::npos || kind.substr(0, colon2) != "geometric")
        throw CLI::ValidationError("grid", "expected lo..hi[:geometric:K]");
    const std::size_t k = std::stoul(kind.substr(colon2 + 1));
    return geometric_grid_n(lo, hi, k);
}

Mode parse_mode(const std::string& s) {
    if (s == "limsup") return Mode::limsup;
    if (s == "liminf") return Mode::liminf;
    throw CLI::ValidationError("mode", "expected limsup|liminf");
}

MetricKind parse_metric(const std::string& s) {
    if (s == "euclidean") return MetricKind::euclidean;
    if (s == "sup") return MetricKind::sup;
    if (s == "matrix") return MetricKind::matrix;
    if (s == "graph") return MetricKind::graph;
    throw CLI::ValidationError("metric", "expected euclidean|sup|matrix|graph");
}

AveragingScheme parse_scheme(const std::string& s) {
    AveragingScheme scheme;
    if (s == "last_scale")
        scheme.kind = AveragingScheme::Kind::last_scale;
    else if (s == "cesaro_log")
        scheme.kind = AveragingScheme::Kind::cesaro_log;
    else if (s == "sliding_max")
        scheme.kind = AveragingScheme::Kind::sliding_max;
    else
        throw CLI::ValidationError("scheme", "expected last_scale|cesaro_log|sliding_max");
    return scheme;
}

void require_file(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw CLI::ValidationError("input", "file does not exist: " + path);
}

MetricSpace load_space(const std::string& input, MetricKind metric) {
    require_file(input);
    if (metric == MetricKind::matrix) {
        std::size_t n = 0;
        auto vals = read_matrix_csv(input, n);
        return MetricSpace::from_matrix(std::move(vals), n);
    }
    if (metric == MetricKind::graph) {
        return MetricSpace::from_graph(read_edge_tsv(input));
    }
    PointCloud pc = read_point_csv(input);
    return MetricSpace::from_points(std::move(pc.coords), pc.dim, metric);
}

// JSON config mirrors the CLI flags; explicitly passed flags win.
void apply_config(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    json doc = json::parse(in);
    for (auto& [key, value] : doc.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (!opt || opt->count() > 0) continue;
        if (value.is_string())
            opt->add_result(value.get<std::string>());
        else
            opt->add_result(value.dump());
        opt->run_callback();
    }
}

void emit_dim_estimate(const std::string& out, const DimEstimate& est,
                       const Provenance& prov) {
    if (out.empty()) return;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < est.scale_table.size(); ++i) {
        const auto& [scale, count] = est.scale_table[i];
        double wlo = 0, whi = 0, slope = 0;
        if (i < est.window_slopes.size()) {
            wlo = est.window_slopes[i].x_lo;
            whi = est.window_slopes[i].x_hi;
            slope = est.window_slopes[i].slope;
        }
        rows.push_back({scale, count, wlo, whi, slope});
    }
    rows.push_back({0.0, 0.0, 0.0, 0.0, est.value});  // summary row
    write_table_csv(out, {"scale", "count", "window_lo", "window_hi", "slope"}, rows, prov);
}

int run_gen(const std::string& what, int dim, int halfwidth, const std::string& metric,
            double alpha, double x_max, std::size_t n_points, const std::string& profile,
            int end_n, double end_d, const std::string& r_spec, int max_n,
            const std::string& graph_kind, std::size_t graph_n, const std::string& out,
            const Provenance& prov, bool dry_run) {
    if (what == "lattice") {
        if (dry_run) {
            std::cout << "gen lattice dim=" << dim << " halfwidth=" << halfwidth << "\n";
            return 0;
        }
        MetricSpace space = gen_lattice(dim, halfwidth, parse_metric(metric));
        PointCloud pc;
        pc.dim = dim;
        for (PointId p = 0; p < space.size(); ++p)
            for (int k = 0; k < dim; ++k) pc.coords.push_back(space.coord(p, k));
        write_point_csv(out, pc, prov);
        return 0;
    }
    if (what == "parabolic") {
        if (dry_run) {
            std::cout << "gen parabolic alpha=" << alpha << " x_max=" << x_max << "\n";
            return 0;
        }
        MetricSpace space = gen_parabolic_region(alpha, x_max, n_points);
        PointCloud pc;
        pc.dim = 2;
        for (PointId p = 0; p < space.size(); ++p) {
            pc.coords.push_back(space.coord(p, 0));
            pc.coords.push_back(space.coord(p, 1));
        }
        write_point_csv(out, pc, prov);
        return 0;
    }
    if (what == "end") {
        if (profile == "oscillating") {
            if (dry_run) {
                std::cout << "gen end oscillating max-n=" << max_n << "\n";
                return 0;
            }
            OscGapReport rep = oscillating_dim_gap(max_n);
            std::vector<std::vector<double>> rows;
            for (const auto& r : rep.rows)
                rows.push_back({static_cast<double>(r.index), r.log_r, r.log_vol, r.slope,
                                r.logspace ? 1.0 : 0.0});
            write_table_csv(out, {"index", "log_r", "log_vol", "slope", "logspace"}, rows,
                            prov);
            std::cout << "limsup_slope=" << format_full(rep.limsup_estimate)
                      << " liminf_slope=" << format_full(rep.liminf_estimate) << "\n";
            return 0;
        }
        StandardEnd end = profile == "davies" ? davies_end(end_n, end_d, 2.0 * M_PI)
                                              : constant_end(end_n, 1.0, 2.0 * M_PI);
        auto rs = parse_grid(r_spec);
        if (dry_run) {
            std::cout << "gen end profile=" << profile << " scales=" << rs.size() << "\n";
            return 0;
        }
        std::vector<std::vector<double>> rows;
        for (double r : rs) rows.push_back({r, end_volume(end, r)});
        write_table_csv(out, {"r", "volume"}, rows, prov);
        return 0;
    }
    if (what == "graph") {
        WeightedGraph g = graph_kind == "cycle" ? WeightedGraph::cycle(graph_n)
                          : graph_kind == "grid2d"
                              ? WeightedGraph::grid2d(graph_n, graph_n)
                              : WeightedGraph::path(graph_n);
        if (dry_run) {
            std::cout << "gen graph " << graph_kind << " n=" << g.size() << "\n";
            return 0;
        }
        write_edge_tsv(out, g, prov);
        return 0;
    }
    throw CLI::ValidationError("gen", "unknown generator " + what);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"large-scale dimension and heat-trace toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    long seed = 0;
    int threads = 0;
    bool dry_run = false;
    app.add_option("--config", config_path, "JSON config mirroring the flags");
    app.add_option("--seed", seed, "RNG seed recorded in outputs");
    app.add_option("--threads", threads, "worker cap (0 = ASYDIM_THREADS or hw)");
    app.add_flag("--dry-run", dry_run, "validate config and print the resolved plan");

    std::string command_line;
    for (int i = 0; i < argc; ++i)
        command_line += std::string(i ? " " : "") + argv[i];

    // gen
    auto* gen = app.add_subcommand("gen", "generate model spaces and graphs");
    std::string gen_what, gen_metric = "sup", gen_profile = "davies";
    std::string gen_r = "1..1e6", gen_graph_kind = "path", gen_out = "out.csv";
    int gen_dim = 1, gen_halfwidth = 10, gen_end_n = 2, gen_max_n = 4;
    double gen_alpha = 0.5, gen_xmax = 1e4, gen_end_d = 2.0;
    std::size_t gen_points = 4096, gen_graph_n = 1024;
    gen->add_option("what", gen_what, "lattice|parabolic|end|graph")->required();
    gen->add_option("--dim", gen_dim);
    gen->add_option("--halfwidth", gen_halfwidth);
    gen->add_option("--metric", gen_metric);
    gen->add_option("--alpha", gen_alpha);
    gen->add_option("--x-max", gen_xmax);
    gen->add_option("--points", gen_points);
    gen->add_option("--profile", gen_profile, "davies|constant|oscillating");
    gen->add_option("--N", gen_end_n);
    gen->add_option("--D", gen_end_d);
    gen->add_option("--r", gen_r);
    gen->add_option("--max-n", gen_max_n);
    gen->add_option("--kind", gen_graph_kind, "path|cycle|grid2d");
    gen->add_option("--n", gen_graph_n);
    gen->add_option("--out", gen_out);

    // dim
    auto* dim = app.add_subcommand("dim", "dimension estimators");
    std::string dim_input, dim_metric = "euclidean", dim_mode = "limsup";
    std::string dim_r = "2,4", dim_R = "16..16384", dim_out, dim_method = "covering";
    std::size_t dim_window = 4;
    dim->add_option("--input", dim_input)->required();
    dim->add_option("--metric", dim_metric);
    dim->add_option("--mode", dim_mode);
    dim->add_option("--method", dim_method, "covering|packing|volume");
    dim->add_option("--r", dim_r);
    dim->add_option("--R", dim_R);
    dim->add_option("--window", dim_window);
    dim->add_option("--out", dim_out);

    // heat
    auto* heat = app.add_subcommand("heat", "heat semigroup invariants on a graph");
    std::string heat_graph, heat_t = "1..1e4:geometric:40", heat_r = "auto";
    std::string heat_scheme = "cesaro_log", heat_out;
    std::uint32_t heat_base = 0;
    heat->add_option("--graph", heat_graph)->required();
    heat->add_option("--t", heat_t);
    heat->add_option("--base", heat_base);
    heat->add_option("--r", heat_r);
    heat->add_option("--scheme", heat_scheme);
    heat->add_option("--out", heat_out);

    // ns
    auto* ns = app.add_subcommand("ns", "0-th Novikov-Shubin pipeline");
    std::string ns_graph, ns_t = "4..4096:geometric:24", ns_out_prefix = "ns";
    std::uint32_t ns_base = 0;
    std::string ns_scheme = "cesaro_log";
    ns->add_option("--graph", ns_graph)->required();
    ns->add_option("--t", ns_t);
    ns->add_option("--base", ns_base);
    ns->add_option("--scheme", ns_scheme);
    ns->add_option("--out-prefix", ns_out_prefix);

    // trace
    auto* trace = app.add_subcommand("trace", "eccentricity and singular trace");
    std::string trace_mu_a, trace_mu_t, trace_out;
    trace->add_option("--mu-a", trace_mu_a)->required();
    trace->add_option("--mu-t", trace_mu_t)->required();
    trace->add_option("--out", trace_out);

    // check
    auto* check = app.add_subcommand("check", "cross-validation reports");
    std::string check_what, check_input, check_metric = "euclidean";
    double check_r = 1.5, check_eps = 3.0, check_R = 3.0;
    std::string check_Rgrid = "16..1024", check_net_out;
    check->add_option("what", check_what, "lemma111|discretization")->required();
    check->add_option("--input", check_input);
    check->add_option("--metric", check_metric);
    check->add_option("--r", check_r);
    check->add_option("--eps", check_eps);
    check->add_option("--cover-R", check_R);
    check->add_option("--R", check_Rgrid);
    check->add_option("--net-out", check_net_out, "emit net center ids as CSV");

    for (auto* sc : {gen, dim, heat, ns, trace, check}) {
        sc->add_option("--config", config_path, "JSON config mirroring the flags");
        sc->add_option("--seed", seed, "RNG seed recorded in outputs");
        sc->add_option("--threads", threads, "worker cap");
        sc->add_flag("--dry-run", dry_run, "validate config and print the resolved plan");
    }

    try {
        app.parse(argc, argv);
        apply_config(app.get_subcommands().front(), config_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (threads == 0)
        if (const char* env = std::getenv("ASYDIM_THREADS")) threads = std::atoi(env);
    if (threads > 0) openblas_set_num_threads(threads);

    Provenance prov;
    prov.command = command_line;
    prov.seed = seed;
    Warnings warnings;

    try {
        if (gen->parsed()) {
            return run_gen(gen_what, gen_dim, gen_halfwidth, gen_metric, gen_alpha,
                           gen_xmax, gen_points, gen_profile, gen_end_n, gen_end_d, gen_r,
                           gen_max_n, gen_graph_kind, gen_graph_n, gen_out, prov, dry_run);
        }
        if (dim->parsed()) {
            ScaleGrid grid;
            grid.r_values = parse_grid(dim_r);
            grid.R_values = parse_grid(dim_R);
            grid.window_size = dim_window;
            if (dry_run) {
                std::cout << "dim input=" << dim_input << " r-scales=" << grid.r_values.size()
                          << " R-scales=" << grid.R_values.size() << "\n";
                return 0;
            }
            MetricSpace space = load_space(dim_input, parse_metric(dim_metric));
            DimEstimate est;
            if (dim_method == "volume") {
                if (!space.has_volume_oracle())
                    throw EstimationError("volume method needs a volume oracle");
                est = asymptotic_dim_volume([&space](double r) { return space.volume(r); },
                                            grid, parse_mode(dim_mode));
            } else {
                est = asymptotic_dim(space, grid, parse_mode(dim_mode),
                                     dim_method == "packing" ? CountMethod::packing
                                                             : CountMethod::covering);
            }
            emit_dim_estimate(dim_out, est, prov);
            if (!est.note.empty()) warnings.add(est.note);
            warnings.flush(dim_out);
            std::cout << "value=" << format_full(est.value) << " mode=" << to_string(est.mode)
                      << " method=" << to_string(est.method)
                      << (est.infinite ? " INFINITE" : "") << "\n";
            return 0;
        }
        if (heat->parsed()) {
            auto ts = parse_grid(heat_t);
            if (dry_run) {
                std::cout << "heat graph=" << heat_graph << " t-scales=" << ts.size() << "\n";
                return 0;
            }
            require_file(heat_graph);
            LaplacianModel model(read_edge_tsv(heat_graph));
            std::vector<double> rs;
            if (heat_r != "auto") rs = parse_grid(heat_r);
            HeatTrace theta = roe_theta(model, ts, heat_base, rs, parse_scheme(heat_scheme));
            SemigroupDimReport sg = semigroup_dim(model, ts);
            if (sg.truncated)
                warnings.add("t grid truncated at saturation t_sat=" + format_full(sg.t_sat));
            if (!heat_out.empty()) {
                std::vector<std::vector<double>> rows;
                for (std::size_t j = 0; j < theta.samples.size(); ++j) {
                    const double t = theta.samples[j].first;
                    double sup_pt = 0.0;
                    for (const auto& [st, sv] : sg.sup_table)
                        if (st == t) sup_pt = sv;
                    rows.push_back({t, theta.samples[j].second, sup_pt,
                                    t > sg.t_sat ? 1.0 : 0.0});
                }
                write_table_csv(heat_out, {"t", "theta", "sup_pt", "t_sat_flag"}, rows, prov);
            }
            warnings.flush(heat_out);
            std::cout << "semigroup_dim=" << format_full(sg.estimate.value)
                      << " t_sat=" << format_full(sg.t_sat)
                      << " shift_sensitivity=" << format_full(theta.shift_sensitivity) << "\n";
            return 0;
        }
        if (ns->parsed()) {
            auto ts = parse_grid(ns_t);
            if (dry_run) {
                std::cout << "ns graph=" << ns_graph << " t-scales=" << ts.size() << "\n";
                return 0;
            }
            require_file(ns_graph);
            LaplacianModel model(read_edge_tsv(ns_graph));
            if (!model.graph().connected())
                throw EstimationError("ns pipeline needs a connected graph");
            const double t_sat = model.t_saturation();
            std::vector<double> usable;
            for (double t : ts)
                if (t <= t_sat) usable.push_back(t);
            if (usable.size() < 8) {
                std::cerr << "numerical failure: saturation window too short (t_sat="
                          << format_full(t_sat) << ")\n";
                return 3;
            }
            if (usable.size() < ts.size())
                warnings.add("t grid truncated at saturation t_sat=" + format_full(t_sat));

            HeatTrace theta = roe_theta(model, usable, ns_base, {}, parse_scheme(ns_scheme));
            NovikovShubinReport via_theta = novikov_shubin_theta(theta.samples);

            std::vector<double> dist = dijkstra(model.graph(), ns_base);
            double radius = 0.0;
            for (double d : dist) radius = std::max(radius, d);
            SpectralMeasure measure = roe_spectral_measure(model, ns_base, 0.5 * radius);
            const auto& eigs = model.spectrum().eigenvalues;
            double lam_lo = 0.0;
            for (Eigen::Index i = 0; i < eigs.size(); ++i)
                if (eigs(i) > 1e-12) {
                    lam_lo = eigs(std::min<Eigen::Index>(eigs.size() - 1, i + 16));
                    break;
                }
            auto n_table = counting_function(
                measure, geometric_grid_n(std::max(lam_lo, 1e-8), 0.25, 24));
            NovikovShubinReport via_n = novikov_shubin_counting(n_table, 6);

            MonotoneFunction mu = rearrangement(resolvent_distribution(measure));
            PowerExponentReport pe =
                power_exponent(mu, mu.arg_lo() * 8.0, 0.5 * measure.total, 6);
            const double alpha0_mu = std::isinf(pe.alpha) ? pe.alpha : 2.0 * pe.alpha;

            if (!ns_out_prefix.empty()) {
                std::vector<std::vector<double>> theta_rows, n_rows;
                for (const auto& [t, v] : theta.samples) theta_rows.push_back({t, v});
                for (const auto& [lam, v] : n_table) n_rows.push_back({lam, v});
                write_table_csv(ns_out_prefix + "_theta.csv", {"t", "theta"}, theta_rows, prov);
                write_table_csv(ns_out_prefix + "_counting.csv", {"lambda", "N"}, n_rows, prov);
                warnings.flush(ns_out_prefix + "_theta.csv");
            }
            std::cout << "alpha0_theta=" << format_full(via_theta.alpha0)
                      << " alpha0_counting=" << format_full(via_n.alpha0)
                      << " alpha0_mu=" << format_full(alpha0_mu) << "\n";
            return 0;
        }
        if (trace->parsed()) {
            if (dry_run) {
                std::cout << "trace mu_a=" << trace_mu_a << " mu_t=" << trace_mu_t << "\n";
                return 0;
            }
            require_file(trace_mu_a);
            require_file(trace_mu_t);
            MonotoneFunction mu_a = read_monotone_csv(trace_mu_a);
            MonotoneFunction mu_t = read_monotone_csv(trace_mu_t);
            EccentricityReport ecc = eccentricity_test(mu_t);
            std::cout << "branch="
                      << (ecc.branch == EccBranch::integrable    ? "integrable"
                          : ecc.branch == EccBranch::divergent   ? "divergent"
                                                                 : "inconclusive")
                      << " eccentric=" << (ecc.eccentric ? 1 : 0)
                      << " ratio=" << format_full(ecc.ratio_limit) << "\n";
            SingularTraceResult res = singular_trace(mu_a, mu_t, GeneralizedLimitAt0{});
            if (!trace_out.empty()) {
                std::vector<std::vector<double>> rows;
                for (const auto& [t, g] : res.ratio_table) rows.push_back({t, g});
                write_table_csv(trace_out, {"t", "ratio"}, rows, prov);
            }
            std::cout << "trace=" << format_full(res.value)
                      << " shifted_window=" << format_full(res.window_shift_value) << "\n";
            return 0;
        }
        if (check->parsed()) {
            if (check_what == "lemma111") {
                if (dry_run) {
                    std::cout << "check lemma111 input=" << check_input << "\n";
                    return 0;
                }
                MetricSpace space = load_space(check_input, parse_metric(check_metric));
                Subset omega = whole_space(space);
                const std::size_t n_r = covering_number_exact(space, omega, check_r);
                const std::size_t nu_r = packing_number_exact(space, omega, check_r);
                const std::size_t n_2r = covering_number_exact(space, omega, 2.0 * check_r);
                std::cout << "n_r=" << n_r << " nu_r=" << nu_r << " n_2r=" << n_2r
                          << " sandwich=" << ((n_r >= nu_r && nu_r >= n_2r) ? "ok" : "VIOLATED")
                          << "\n";
                return 0;
            }
            if (check_what == "discretization") {
                if (dry_run) {
                    std::cout << "check discretization input=" << check_input << "\n";
                    return 0;
                }
                MetricSpace space = load_space(check_input, parse_metric(check_metric));
                ScaleGrid grid;
                grid.R_values = parse_grid(check_Rgrid);
                DiscretizationReport rep =
                    discretization_dim_check(space, check_eps, check_R, grid);
                if (!check_net_out.empty()) {
                    std::vector<std::vector<double>> rows;
                    for (PointId c : rep.net.centers)
                        rows.push_back({static_cast<double>(c)});
                    write_table_csv(check_net_out, {"center_id"}, rows, prov);
                }
                std::cout << "dim_space=" << format_full(rep.dim_space.value)
                          << " dim_graph=" << format_full(rep.dim_graph.value)
                          << " gap=" << format_full(rep.gap)
                          << " connected=" << (rep.graph_connected ? 1 : 0) << "\n";
                return 0;
            }
            throw CLI::ValidationError("check", "unknown check " + check_what);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
