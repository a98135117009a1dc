#include "asydim/csv.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace asydim {

std::string format_full(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad numeric field: " + s);
    return v;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void write_header(std::ofstream& out, const Provenance& prov) {
    std::string ts = prov.timestamp;
    if (ts.empty()) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        ts = buf;
    }
    out << "# " << prov.version << "\n";
    out << "# command: " << prov.command << "\n";
    out << "# seed: " << prov.seed << "\n";
    out << "# timestamp: " << ts << "\n";
}

}  // namespace

PointCloud read_point_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    PointCloud pc;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, ',');
        if (!header_seen) {
            if (fields.empty() || fields[0] != "id")
                throw std::runtime_error(path + ": expected header id,c0,...");
            pc.dim = fields.size() - 1;
            if (pc.dim == 0) throw std::runtime_error(path + ": no coordinate columns");
            header_seen = true;
            continue;
        }
        if (fields.size() != pc.dim + 1)
            throw std::runtime_error(path + ": ragged row");
        for (std::size_t k = 1; k < fields.size(); ++k)
            pc.coords.push_back(parse_double(fields[k]));
    }
    if (!header_seen || pc.coords.empty()) throw std::runtime_error(path + ": no data");
    return pc;
}

void write_point_csv(const std::string& path, const PointCloud& pc, const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    out << "id";
    for (std::size_t k = 0; k < pc.dim; ++k) out << ",c" << k;
    out << "\n";
    const std::size_t n = pc.coords.size() / pc.dim;
    for (std::size_t i = 0; i < n; ++i) {
        out << i;
        for (std::size_t k = 0; k < pc.dim; ++k)
            out << ',' << format_full(pc.coords[i * pc.dim + k]);
        out << "\n";
    }
}

std::vector<double> read_matrix_csv(const std::string& path, std::size_t& n) {
    auto in = open_in(path);
    std::string line;
    std::vector<double> vals;
    n = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, ',');
        if (n == 0)
            n = fields.size();
        else if (fields.size() != n)
            throw std::runtime_error(path + ": ragged matrix row");
        for (const auto& f : fields) vals.push_back(parse_double(f));
    }
    if (vals.size() != n * n) throw std::runtime_error(path + ": matrix not square");
    return vals;
}

WeightedGraph read_edge_tsv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    std::vector<Edge> edges;
    std::uint32_t max_v = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3) throw std::runtime_error(path + ": expected u\\tv\\tweight");
        Edge e;
        e.u = static_cast<std::uint32_t>(std::stoul(fields[0]));
        e.v = static_cast<std::uint32_t>(std::stoul(fields[1]));
        e.weight = parse_double(fields[2]);
        max_v = std::max({max_v, e.u, e.v});
        edges.push_back(e);
    }
    if (edges.empty()) throw std::runtime_error(path + ": no edges");
    return WeightedGraph(max_v + 1, std::move(edges));
}

void write_edge_tsv(const std::string& path, const WeightedGraph& g, const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    for (const auto& e : g.edges())
        out << e.u << '\t' << e.v << '\t' << format_full(e.weight) << "\n";
}

MonotoneFunction read_monotone_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    Interp interp = Interp::step_right_continuous;
    std::vector<std::pair<double, double>> knots;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.rfind("# interp=", 0) == 0) {
            const std::string val = line.substr(9);
            if (val == "step_right_continuous")
                interp = Interp::step_right_continuous;
            else if (val == "loglog_linear")
                interp = Interp::loglog_linear;
            else
                throw std::runtime_error(path + ": unknown interp " + val);
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, ',');
        if (!header_seen && fields.size() == 2 && fields[0] == "t") {
            header_seen = true;
            continue;
        }
        if (fields.size() != 2) throw std::runtime_error(path + ": expected t,value");
        knots.push_back({parse_double(fields[0]), parse_double(fields[1])});
    }
    return interp == Interp::step_right_continuous ? MonotoneFunction::step(std::move(knots))
                                                   : MonotoneFunction::loglog(std::move(knots));
}

void write_monotone_csv(const std::string& path, const MonotoneFunction& f,
                        const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    out << "# interp="
        << (f.interp() == Interp::step_right_continuous ? "step_right_continuous"
                                                        : "loglog_linear")
        << "\n";
    out << "t,value\n";
    for (const auto& [t, v] : f.knots())
        out << format_full(t) << ',' << format_full(v) << "\n";
}

void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows, const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::logic_error("write_table_csv: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_full(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

}  // namespace asydim
