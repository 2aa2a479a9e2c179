#pragma once

#include <iosfwd>
#include <vector>

#include "parhyp/warping.hpp"

namespace parhyp {

/// Weighted graph discretizing the model annulus [rho, R] x fiber.
/// Nodes are (level, cell); levels are uniform in r. Radial edges carry the
/// continuum conductance w(mid)^{m-1} * cell_measure / dr; angular edges the
/// reciprocal weighting (face length over center distance, times the dual
/// radial width). For m = 3 the fiber is a latitude-longitude grid with
/// exact cell measures and both polar bands merged into single cap cells.
struct RadialNetwork {
    int m = 2;
    int K = 0; // radial cells (levels = K + 1)
    int A = 0; // angular resolution: cells (m=2) or latitude bands (m=3)
    std::vector<double> levels;
    int cells_per_level = 0;

    struct Edge {
        int u, v;
        double conductance;
    };
    std::vector<Edge> edges;

    int nodes() const { return static_cast<int>(levels.size()) * cells_per_level; }
    int node_id(int level, int cell) const { return level * cells_per_level + cell; }
    bool is_inner_boundary(int node) const { return node < cells_per_level; }
    bool is_outer_boundary(int node) const {
        return node >= (static_cast<int>(levels.size()) - 1) * cells_per_level;
    }
    bool connected() const;
};

RadialNetwork build_network(int m, const WarpingDescriptor& w, double rho, double R,
                            int K, int A);

struct ConductanceResult {
    double conductance = 0.0;
    int iterations = 0;
    double residual_norm = 0.0;
    double current_inner = 0.0;
    double current_outer = 0.0;
    std::vector<double> node_potentials; // 0 on the inner boundary, 1 on the outer
};

/// Discrete Dirichlet problem (0 on the inner boundary, 1 on the outer) via
/// Jacobi-preconditioned conjugate gradients; the effective conductance is
/// the total current into the inner boundary.
ConductanceResult effective_conductance(const RadialNetwork& net,
                                        double rel_residual = 1e-10,
                                        int max_iterations = 50000);

struct ConvergenceRecord {
    int K = 0, A = 0;
    double conductance = 0.0;
    double relative_gap = 0.0; // against the closed-form drifted capacity
};

/// Refinement study against drifted_capacity with h = 0 (the network
/// discretizes the pure model annulus).
std::vector<ConvergenceRecord> convergence_study(
    int m, const WarpingDescriptor& w, double rho, double R,
    const std::vector<std::pair<int, int>>& schedule, double tol = 1e-10);

/// Plain "node node conductance" edge list.
void export_edge_list(const RadialNetwork& net, std::ostream& os);

} // namespace parhyp
