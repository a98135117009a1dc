#pragma once

#include <string>
#include <vector>

#include "asydim/graph.hpp"
#include "asydim/metric_space.hpp"
#include "asydim/spectral.hpp"

namespace asydim {

// Comment header written at the top of every emitted file. Reruns with the
// same config are byte-identical except for the timestamp line.
struct Provenance {
    std::string command;
    std::string version = "asydim 0.1.0";
    long seed = 0;
    std::string timestamp;  // filled at write time when empty
};

std::string format_full(double v);  // round-trip decimal formatting

struct PointCloud {
    std::vector<double> coords;  // row-major n x dim
    std::size_t dim = 0;
};

// Point clouds: header `id,c0,...,c{d-1}`, UTF-8, `.` decimals.
PointCloud read_point_csv(const std::string& path);
void write_point_csv(const std::string& path, const PointCloud& pc, const Provenance& prov);

// Square distance matrices: plain row-major CSV, no header.
std::vector<double> read_matrix_csv(const std::string& path, std::size_t& n);

// Edge lists: `u<TAB>v<TAB>weight`.
WeightedGraph read_edge_tsv(const std::string& path);
void write_edge_tsv(const std::string& path, const WeightedGraph& g, const Provenance& prov);

// Monotone functions: `t,value` ascending, `# interp=...` header line.
MonotoneFunction read_monotone_csv(const std::string& path);
void write_monotone_csv(const std::string& path, const MonotoneFunction& f,
                        const Provenance& prov);

// Generic tidy table with a provenance header.
void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows, const Provenance& prov);

}  // namespace asydim
