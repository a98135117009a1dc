#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "asydim/csv.hpp"

using namespace asydim;

namespace {

const std::string kBin = std::string(ASYDIM_BIN_DIR) + "/asydim";

struct RunResult {
    int status = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/asydim_cli_out.txt";
    const std::string cmd = kBin + " " + args + " > " + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.status = WEXITSTATUS(rc);
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    res.output = ss.str();
    return res;
}

std::size_t data_rows(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::size_t rows = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

std::string without_timestamp(const std::string& path) {
    std::ifstream in(path);
    std::string line, acc;
    while (std::getline(in, line))
        if (line.rfind("# timestamp:", 0) != 0) acc += line + "\n";
    return acc;
}

double summary_value(const std::string& output, const std::string& key) {
    const auto pos = output.find(key + "=");
    REQUIRE(pos != std::string::npos);
    return std::stod(output.substr(pos + key.size() + 1));
}

}  // namespace

TEST_CASE("gen lattice emits the expected rows") {
    RunResult res = run("gen lattice --dim 1 --halfwidth 10 --out /tmp/cli_z1.csv");
    CHECK(res.status == 0);
    CHECK(data_rows("/tmp/cli_z1.csv") == 21);

    // reruns are byte-identical except the timestamp header
    run("gen lattice --dim 1 --halfwidth 10 --out /tmp/cli_z1b.csv");
    // normalize the command line: same flags, different out path differ; rerun same path
    run("gen lattice --dim 1 --halfwidth 10 --out /tmp/cli_z1.csv");
    CHECK(without_timestamp("/tmp/cli_z1.csv") != "");
    const std::string first = without_timestamp("/tmp/cli_z1.csv");
    run("gen lattice --dim 1 --halfwidth 10 --out /tmp/cli_z1.csv");
    CHECK(without_timestamp("/tmp/cli_z1.csv") == first);
}

TEST_CASE("gen parabolic emits the requested sample") {
    RunResult res =
        run("gen parabolic --alpha 0.5 --x-max 100 --points 500 --out /tmp/cli_par.csv");
    CHECK(res.status == 0);
    CHECK(data_rows("/tmp/cli_par.csv") == 500);
}

TEST_CASE("dim estimates a lattice segment near one") {
    run("gen lattice --dim 1 --halfwidth 2048 --out /tmp/cli_z2.csv");
    RunResult res = run(
        "dim --input /tmp/cli_z2.csv --mode limsup --r 2 --R 8..1024 --out /tmp/cli_dim.csv");
    CHECK(res.status == 0);
    const double value = summary_value(res.output, "value");
    CHECK(value > 0.8);
    CHECK(value < 1.2);
    // output table carries the summary row with the same value
    std::ifstream in("/tmp/cli_dim.csv");
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') last = line;
    CHECK(last.substr(last.rfind(',') + 1) == format_full(value));
}

TEST_CASE("check lemma111 reports the exact sandwich") {
    run("gen lattice --dim 1 --halfwidth 10 --out /tmp/cli_z1.csv");
    RunResult res = run("check lemma111 --input /tmp/cli_z1.csv --r 1.5");
    CHECK(res.status == 0);
    CHECK(res.output.find("n_r=7") != std::string::npos);
    CHECK(res.output.find("nu_r=7") != std::string::npos);
    CHECK(res.output.find("n_2r=5") != std::string::npos);
    CHECK(res.output.find("sandwich=ok") != std::string::npos);
}

TEST_CASE("dry runs validate without computing") {
    RunResult res =
        run("dim --input /tmp/cli_z1.csv --r 0.5 --R 1..8 --dry-run --out /tmp/cli_never.csv");
    CHECK(res.status == 0);
    CHECK(!std::ifstream("/tmp/cli_never.csv"));
    CHECK(run("gen lattice --dry-run").status == 0);
    CHECK(run("heat --graph /tmp/cli_z1.csv --dry-run").status == 0);
    CHECK(run("trace --mu-a x --mu-t y --dry-run").status == 0);
}

TEST_CASE("exit codes") {
    CHECK(run("dim --input /tmp/does_not_exist.csv").status == 2);
    CHECK(run("dim").status == 2);                       // missing required flag
    CHECK(run("gen nosuchthing").status == 2);           // unknown generator
    CHECK(run("frobnicate").status == 2);                // unknown subcommand

    // a non-eccentric reference is a numerical/domain failure, exit 3
    {
        std::ofstream mu("/tmp/cli_mu2.csv");
        mu << "# interp=loglog_linear\nt,value\n";
        for (int k = 0; k <= 240; ++k) {
            const double t = std::pow(10.0, -30.0 + 30.0 * k / 240.0);
            mu << format_full(t) << ',' << format_full(1.0 / (t * t)) << "\n";
        }
    }
    CHECK(run("trace --mu-a /tmp/cli_mu2.csv --mu-t /tmp/cli_mu2.csv").status == 3);
}

TEST_CASE("json config supplies defaults, flags win") {
    {
        std::ofstream cfg("/tmp/cli_cfg.json");
        cfg << "{\"halfwidth\": 5, \"out\": \"/tmp/cli_cfg_out.csv\"}\n";
    }
    RunResult res = run("gen lattice --dim 1 --config /tmp/cli_cfg.json");
    CHECK(res.status == 0);
    CHECK(data_rows("/tmp/cli_cfg_out.csv") == 11);

    // explicit flag overrides the config value
    RunResult res2 =
        run("gen lattice --dim 1 --halfwidth 3 --config /tmp/cli_cfg.json");
    CHECK(res2.status == 0);
    CHECK(data_rows("/tmp/cli_cfg_out.csv") == 7);
}

TEST_CASE("monotone csv round trip") {
    MonotoneFunction f = MonotoneFunction::step({{0.0, 4.0}, {0.5, 2.25}, {3.0, 0.0}});
    Provenance prov;
    prov.command = "test";
    write_monotone_csv("/tmp/cli_mono.csv", f, prov);
    MonotoneFunction g = read_monotone_csv("/tmp/cli_mono.csv");
    CHECK(g.interp() == Interp::step_right_continuous);
    CHECK(g.knots() == f.knots());

    MonotoneFunction h = MonotoneFunction::loglog({{0.1, 7.0}, {1.0, 1.0}, {10.0, 0.5}});
    write_monotone_csv("/tmp/cli_mono2.csv", h, prov);
    CHECK(read_monotone_csv("/tmp/cli_mono2.csv").knots() == h.knots());
}

TEST_CASE("ns pipeline on a path graph") {
    run("gen graph --kind path --n 512 --out /tmp/cli_p512.tsv");
    RunResult res = run("ns --graph /tmp/cli_p512.tsv --base 256 --t 4..2048 "
                        "--out-prefix /tmp/cli_ns");
    CHECK(res.status == 0);
    const double a_theta = summary_value(res.output, "alpha0_theta");
    const double a_n = summary_value(res.output, "alpha0_counting");
    const double a_mu = summary_value(res.output, "alpha0_mu");
    CHECK(a_theta > 0.85);
    CHECK(a_theta < 1.15);
    CHECK(std::fabs(a_theta - a_n) <= 0.2);
    CHECK(std::fabs(a_theta - a_mu) <= 0.2);
    CHECK(data_rows("/tmp/cli_ns_theta.csv") > 4);
    CHECK(data_rows("/tmp/cli_ns_counting.csv") > 4);

    // a disconnected graph cannot run the pipeline
    {
        std::ofstream g("/tmp/cli_disc.tsv");
        g << "0\t1\t1\n2\t3\t1\n";
    }
    CHECK(run("ns --graph /tmp/cli_disc.tsv").status == 3);
}

TEST_CASE("distance-matrix ingest") {
    {
        std::ofstream m("/tmp/cli_mat.csv");
        m << "0,1,2,3\n1,0,1,2\n2,1,0,1\n3,2,1,0\n";
    }
    RunResult res = run("check lemma111 --input /tmp/cli_mat.csv --metric matrix --r 1.5");
    CHECK(res.status == 0);
    CHECK(res.output.find("sandwich=ok") != std::string::npos);
}

TEST_CASE("trace pipeline end to end") {
    {
        std::ofstream mu("/tmp/cli_mu1.csv");
        mu << "# interp=loglog_linear\nt,value\n";
        for (int k = 0; k <= 240; ++k) {
            const double t = std::pow(10.0, -30.0 + 30.0 * k / 240.0);
            mu << format_full(t) << ',' << format_full(1.0 / t) << "\n";
        }
    }
    RunResult res = run(
        "trace --mu-a /tmp/cli_mu1.csv --mu-t /tmp/cli_mu1.csv --out /tmp/cli_ratio.csv");
    CHECK(res.status == 0);
    CHECK(summary_value(res.output, "trace") == 1.0);
    CHECK(res.output.find("branch=divergent") != std::string::npos);
    CHECK(res.output.find("eccentric=1") != std::string::npos);
    CHECK(data_rows("/tmp/cli_ratio.csv") > 10);
}
