#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <optional>

#include "asydim/dimension.hpp"
#include "asydim/graph.hpp"
#include "asydim/slopes.hpp"

namespace asydim {

struct SpectrumCache {
    Eigen::VectorXd eigenvalues;   // ascending, >= -1e-9
    Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

// Combinatorial graph Laplacian L = D - W with unit edge conductance by
// default (edge lengths from discretizations are not conductances). The
// spectrum cache is computed once on first use and read-only afterwards.
class LaplacianModel {
public:
    explicit LaplacianModel(WeightedGraph g, bool weights_as_conductance = false,
                            std::size_t dense_threshold = 5000);

    const WeightedGraph& graph() const { return g_; }
    std::size_t size() const { return g_.size(); }
    std::size_t dense_threshold() const { return dense_threshold_; }

    void apply(const double* x, double* y) const;  // y = L x
    Eigen::MatrixXd dense_laplacian() const;

    bool has_spectrum() const;
    const SpectrumCache& spectrum() const;  // dense eigensolve, cached

    // Smallest positive eigenvalue; needs the spectrum.
    double spectral_gap() const;
    // Mixing-time estimate 1/gap: the finite model stops emulating an open
    // manifold past this time.
    double t_saturation() const;

private:
    WeightedGraph g_;
    std::vector<double> conductance_;  // per directed CSR slot
    std::vector<double> degree_;
    std::size_t dense_threshold_;
    mutable std::mutex mu_;
    mutable std::optional<SpectrumCache> cache_;
};

// Diagonal heat kernel values p_t(x,x) for the given nodes; spectra below
// the dense threshold, per-node Lanczos above it.
std::vector<double> heat_diagonal(const LaplacianModel& model, double t,
                                  const std::vector<std::uint32_t>& nodes);

// All diagonal values at each time in ts (ts ascending); row = node.
Eigen::MatrixXd heat_diagonal_all(const LaplacianModel& model,
                                  const std::vector<double>& ts);

// Full kernel e^{-tL}; dense spectra only (small graphs / tests).
Eigen::MatrixXd heat_kernel(const LaplacianModel& model, double t);

// p_t(x,x) over ts via Lanczos on e_x (independent of the dense path).
std::vector<double> lanczos_heat_diagonal(const LaplacianModel& model, std::uint32_t x,
                                          const std::vector<double>& ts,
                                          std::size_t steps = 160);

struct SemigroupDimReport {
    DimEstimate estimate;  // method=heat, mode=liminf; slopes are -2 d log sup p_t / d log t
    double t_sat = 0.0;
    bool truncated = false;  // grid points past saturation were dropped
    std::vector<std::pair<double, double>> sup_table;  // (t, sup_x p_t(x,x))
};

SemigroupDimReport semigroup_dim(const LaplacianModel& model,
                                 const std::vector<double>& t_grid,
                                 std::size_t window = 4);

// Concrete realization of the translation-invariant averaging state: how a
// bounded sampled function of r is collapsed to one number.
struct AveragingScheme {
    enum class Kind { last_scale, cesaro_log, sliding_max };
    Kind kind = Kind::cesaro_log;
    double window_fraction = 0.5;  // cesaro_log: top fraction of the log-r range
    std::size_t window = 4;        // sliding_max

    double apply(const std::vector<double>& rs, const std::vector<double>& vals) const;
};

struct HeatTrace {
    std::vector<std::pair<double, double>> samples;  // (t, theta)
    std::uint32_t basepoint = 0;
    std::vector<double> radii_used;
    // exhaustion-average table f_t(r), one row per t over radii_used
    std::vector<std::vector<double>> f_table;
    // max relative change of theta under a one-step shift of the averaging
    // window; small values mirror the translation invariance of the state
    double shift_sensitivity = 0.0;
};

// theta(t) = scheme-average over r of (sum_{x in B(o,r)} p_t(x,x)) / |B(o,r)|.
// Empty r_grid selects a geometric grid up to half the graph radius.
HeatTrace roe_theta(const LaplacianModel& model, const std::vector<double>& t_grid,
                    std::uint32_t basepoint, std::vector<double> r_grid,
                    const AveragingScheme& scheme);

struct KernelVolumeRow {
    double t = 0.0;
    double sup_p = 0.0;
    double volume_sqrt_t = 0.0;
    double ratio = 0.0;  // sup_p * V(o, sqrt t)
};

struct KernelVolumeReport {
    std::vector<KernelVolumeRow> rows;
    bool within_band = true;  // all ratios inside [1/50, 50]
};

KernelVolumeReport sup_kernel_volume_check(const LaplacianModel& model,
                                           const std::vector<double>& t_grid,
                                           const std::function<double(double)>& volume);

// Test-facing identities (dense path).
double mass_conservation_error(const LaplacianModel& model, double t);
double semigroup_diagonal_error(const LaplacianModel& model, double t);

}  // namespace asydim
