#include "parhyp/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "parhyp/dirichlet.hpp"
#include "parhyp/errors.hpp"

namespace parhyp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fiber discretization for m = 3: latitude-longitude cells with merged caps.
struct SphereGrid {
    int lat = 0;           // bands
    int lon = 0;           // cells per regular band
    int cells = 0;         // 2 caps + (lat-2) * lon
    std::vector<double> measure;     // spherical measure per cell
    std::vector<double> center_colat;

    int cell_id(int band, int j) const {
        if (band == 0) return 0;
        if (band == lat - 1) return cells - 1;
        return 1 + (band - 1) * lon + j;
    }
};

SphereGrid make_sphere_grid(int lat_bands) {
    SphereGrid g;
    g.lat = lat_bands;
    g.lon = 2 * lat_bands;
    g.cells = 2 + (g.lat - 2) * g.lon;
    g.measure.resize(g.cells);
    g.center_colat.resize(g.cells);
    double dth = kPi / g.lat;
    double dph = 2.0 * kPi / g.lon;

    g.measure[0] = 2.0 * kPi * (1.0 - std::cos(dth));
    g.center_colat[0] = 0.0;
    g.measure[g.cells - 1] = 2.0 * kPi * (1.0 - std::cos(dth));
    g.center_colat[g.cells - 1] = kPi;
    for (int band = 1; band + 1 < g.lat; ++band) {
        double th0 = band * dth, th1 = (band + 1) * dth;
        double mu = dph * (std::cos(th0) - std::cos(th1));
        for (int j = 0; j < g.lon; ++j) {
            int id = g.cell_id(band, j);
            g.measure[id] = mu;
            g.center_colat[id] = 0.5 * (th0 + th1);
        }
    }
    return g;
}

} // namespace

bool RadialNetwork::connected() const {
    int n = nodes();
    if (n == 0) return false;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

RadialNetwork build_network(int m, const WarpingDescriptor& w, double rho, double R,
                            int K, int A) {
    if (m != 2 && m != 3) throw DomainError("build_network: m must be 2 or 3");
    if (K < 1 || A < 4) throw DomainError("build_network: need K >= 1 and A >= 4");
    if (!(rho > 0.0) || !(rho < R) || !(R < w.domain_end()))
        throw DomainError("build_network: invalid annulus range");

    RadialNetwork net;
    net.m = m;
    net.K = K;
    net.A = A;
    net.levels.resize(K + 1);
    double dr = (R - rho) / K;
    for (int i = 0; i <= K; ++i) net.levels[i] = rho + dr * i;
    net.levels.back() = R;

    // Dual radial width of a level (for angular edges).
    auto dual_width = [&](int i) {
        if (i == 0) return 0.5 * (net.levels[1] - net.levels[0]);
        if (i == K) return 0.5 * (net.levels[K] - net.levels[K - 1]);
        return 0.5 * (net.levels[i + 1] - net.levels[i - 1]);
    };

    if (m == 2) {
        net.cells_per_level = A;
        double dth = 2.0 * kPi / A;
        for (int i = 0; i < K; ++i) {
            double mid = 0.5 * (net.levels[i] + net.levels[i + 1]);
            double drc = net.levels[i + 1] - net.levels[i];
            double c = w.value(mid) * dth / drc;
            for (int j = 0; j < A; ++j)
                net.edges.push_back({net.node_id(i, j), net.node_id(i + 1, j), c});
        }
        for (int i = 0; i <= K; ++i) {
            double c = dual_width(i) / (w.value(net.levels[i]) * dth);
            for (int j = 0; j < A; ++j)
                net.edges.push_back(
                    {net.node_id(i, j), net.node_id(i, (j + 1) % A), c});
        }
        return net;
    }

    SphereGrid grid = make_sphere_grid(A);
    net.cells_per_level = grid.cells;
    double dth = kPi / grid.lat;
    double dph = 2.0 * kPi / grid.lon;

    for (int i = 0; i < K; ++i) {
        double mid = 0.5 * (net.levels[i] + net.levels[i + 1]);
        double drc = net.levels[i + 1] - net.levels[i];
        double w2 = w.value(mid) * w.value(mid);
        for (int c = 0; c < grid.cells; ++c)
            net.edges.push_back({net.node_id(i, c), net.node_id(i + 1, c),
                                 w2 * grid.measure[c] / drc});
    }

    for (int i = 0; i <= K; ++i) {
        double width = dual_width(i);
        // cap to first regular band
        for (int j = 0; j < grid.lon; ++j) {
            double ell = std::sin(dth) * dph;            // shared arc
            double dist = grid.center_colat[grid.cell_id(1, j)]; // from the pole
            net.edges.push_back({net.node_id(i, grid.cell_id(0, 0)),
                                 net.node_id(i, grid.cell_id(1, j)),
                                 width * ell / dist});
            double ell_s = std::sin(kPi - dth) * dph;
            double dist_s = kPi - grid.center_colat[grid.cell_id(grid.lat - 2, j)];
            net.edges.push_back({net.node_id(i, grid.cell_id(grid.lat - 1, 0)),
                                 net.node_id(i, grid.cell_id(grid.lat - 2, j)),
                                 width * ell_s / dist_s});
        }
        for (int band = 1; band + 1 < grid.lat; ++band) {
            double colat = grid.center_colat[grid.cell_id(band, 0)];
            // longitude neighbors within the band
            double c_lon = width * dth / (std::sin(colat) * dph);
            for (int j = 0; j < grid.lon; ++j)
                net.edges.push_back({net.node_id(i, grid.cell_id(band, j)),
                                     net.node_id(i, grid.cell_id(band, (j + 1) % grid.lon)),
                                     c_lon});
            // latitude neighbor toward the next regular band
            if (band + 2 < grid.lat) {
                double edge_colat = (band + 1) * dth;
                double c_lat = width * std::sin(edge_colat) * dph / dth;
                for (int j = 0; j < grid.lon; ++j)
                    net.edges.push_back({net.node_id(i, grid.cell_id(band, j)),
                                         net.node_id(i, grid.cell_id(band + 1, j)),
                                         c_lat});
            }
        }
    }
    return net;
}

namespace {

// CSR with Dirichlet elimination: rows for interior nodes only.
struct InteriorSystem {
    std::vector<int> row_ptr, col;
    std::vector<double> val, diag, rhs;
    std::vector<int> interior_index; // node -> interior row or -1
    std::vector<int> interior_nodes;
};

InteriorSystem assemble(const RadialNetwork& net) {
    int n = net.nodes();
    InteriorSystem sys;
    sys.interior_index.assign(n, -1);
    for (int u = 0; u < n; ++u) {
        if (!net.is_inner_boundary(u) && !net.is_outer_boundary(u)) {
            sys.interior_index[u] = static_cast<int>(sys.interior_nodes.size());
            sys.interior_nodes.push_back(u);
        }
    }
    int ni = static_cast<int>(sys.interior_nodes.size());
    std::vector<std::vector<std::pair<int, double>>> rows(ni);
    sys.diag.assign(ni, 0.0);
    sys.rhs.assign(ni, 0.0);

    for (const auto& e : net.edges) {
        int iu = sys.interior_index[e.u];
        int iv = sys.interior_index[e.v];
        if (iu >= 0) {
            sys.diag[iu] += e.conductance;
            if (iv >= 0)
                rows[iu].push_back({iv, -e.conductance});
            else if (net.is_outer_boundary(e.v))
                sys.rhs[iu] += e.conductance;
        }
        if (iv >= 0) {
            sys.diag[iv] += e.conductance;
            if (iu >= 0)
                rows[iv].push_back({iu, -e.conductance});
            else if (net.is_outer_boundary(e.u))
                sys.rhs[iv] += e.conductance;
        }
    }

    sys.row_ptr.assign(ni + 1, 0);
    for (int i = 0; i < ni; ++i) {
        std::sort(rows[i].begin(), rows[i].end());
        sys.row_ptr[i + 1] = sys.row_ptr[i] + static_cast<int>(rows[i].size()) + 1;
    }
    sys.col.resize(sys.row_ptr.back());
    sys.val.resize(sys.row_ptr.back());
    for (int i = 0; i < ni; ++i) {
        int k = sys.row_ptr[i];
        sys.col[k] = i;
        sys.val[k] = sys.diag[i];
        ++k;
        for (auto& [j, v] : rows[i]) {
            sys.col[k] = j;
            sys.val[k] = v;
            ++k;
        }
    }
    return sys;
}

void spmv(const InteriorSystem& sys, const std::vector<double>& x,
          std::vector<double>& y) {
    int ni = static_cast<int>(sys.diag.size());
    for (int i = 0; i < ni; ++i) {
        double acc = 0.0;
        for (int k = sys.row_ptr[i]; k < sys.row_ptr[i + 1]; ++k)
            acc += sys.val[k] * x[sys.col[k]];
        y[i] = acc;
    }
}

// 1-D radial series solution: exact for the rotationally symmetric network,
// a strong initial guess after local edits.
std::vector<double> radial_guess(const RadialNetwork& net) {
    int L = static_cast<int>(net.levels.size());
    std::vector<double> radial_c(L - 1, 0.0);
    for (const auto& e : net.edges) {
        int lu = e.u / net.cells_per_level;
        int lv = e.v / net.cells_per_level;
        if (lv == lu + 1)
            radial_c[lu] += e.conductance;
        else if (lu == lv + 1)
            radial_c[lv] += e.conductance;
    }
    std::vector<double> pot(L, 0.0);
    double total = 0.0;
    for (int i = 0; i < L - 1; ++i)
        total += radial_c[i] > 0.0 ? 1.0 / radial_c[i] : 0.0;
    double acc = 0.0;
    for (int i = 1; i < L; ++i) {
        acc += radial_c[i - 1] > 0.0 ? 1.0 / radial_c[i - 1] : 0.0;
        pot[i] = total > 0.0 ? acc / total : 1.0;
    }
    return pot;
}

} // namespace

ConductanceResult effective_conductance(const RadialNetwork& net,
                                        double rel_residual, int max_iterations) {
    if (!net.connected()) throw DomainError("effective_conductance: graph not connected");
    for (const auto& e : net.edges)
        if (!(e.conductance > 0.0))
            throw DomainError("effective_conductance: nonpositive conductance");

    InteriorSystem sys = assemble(net);
    int ni = static_cast<int>(sys.diag.size());

    std::vector<double> x(ni, 0.0);
    ConductanceResult out;

    if (ni > 0) {
        std::vector<double> level_pot = radial_guess(net);
        for (int i = 0; i < ni; ++i)
            x[i] = level_pot[sys.interior_nodes[i] / net.cells_per_level];

        std::vector<double> r(ni), z(ni), p(ni), q(ni);
        spmv(sys, x, r);
        for (int i = 0; i < ni; ++i) r[i] = sys.rhs[i] - r[i];

        double bnorm = 0.0;
        for (int i = 0; i < ni; ++i) bnorm += sys.rhs[i] * sys.rhs[i];
        bnorm = std::sqrt(bnorm);
        double target = rel_residual * (bnorm > 0.0 ? bnorm : 1.0);

        auto rnorm = [&]() {
            double s = 0.0;
            for (double v : r) s += v * v;
            return std::sqrt(s);
        };

        double rn = rnorm();
        int it = 0;
        if (rn > target) {
            for (int i = 0; i < ni; ++i) z[i] = r[i] / sys.diag[i];
            p = z;
            double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
            while (it < max_iterations) {
                ++it;
                spmv(sys, p, q);
                double pq = std::inner_product(p.begin(), p.end(), q.begin(), 0.0);
                double alpha = rz / pq;
                for (int i = 0; i < ni; ++i) {
                    x[i] += alpha * p[i];
                    r[i] -= alpha * q[i];
                }
                rn = rnorm();
                if (rn <= target) break;
                for (int i = 0; i < ni; ++i) z[i] = r[i] / sys.diag[i];
                double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
                double beta = rz_new / rz;
                rz = rz_new;
                for (int i = 0; i < ni; ++i) p[i] = z[i] + beta * p[i];
            }
            if (rn > target)
                throw ConvergenceError("effective_conductance: PCG missed the residual target");
        }
        out.iterations = it;
        out.residual_norm = rn;
    }

    // Currents through the boundary cuts.
    auto potential = [&](int node) -> double {
        if (net.is_inner_boundary(node)) return 0.0;
        if (net.is_outer_boundary(node)) return 1.0;
        return x[sys.interior_index[node]];
    };
    out.node_potentials.resize(net.nodes());
    for (int u = 0; u < net.nodes(); ++u) out.node_potentials[u] = potential(u);
    double inner = 0.0, outer = 0.0;
    for (const auto& e : net.edges) {
        bool ui = net.is_inner_boundary(e.u), vi = net.is_inner_boundary(e.v);
        bool uo = net.is_outer_boundary(e.u), vo = net.is_outer_boundary(e.v);
        if (ui != vi) inner += e.conductance * (potential(vi ? e.u : e.v) - 0.0);
        if (uo != vo) outer += e.conductance * (1.0 - potential(vo ? e.u : e.v));
    }
    out.current_inner = inner;
    out.current_outer = outer;
    out.conductance = inner;
    return out;
}

std::vector<ConvergenceRecord> convergence_study(
    int m, const WarpingDescriptor& w, double rho, double R,
    const std::vector<std::pair<int, int>>& schedule, double tol) {
    AnnulusSpec spec;
    spec.m = m;
    spec.w = w;
    spec.h = RadialProfile::zero();
    spec.rho = rho;
    spec.R = R;
    CapacityEstimate reference = drifted_capacity(spec, tol);

    std::vector<ConvergenceRecord> out;
    for (auto [K, A] : schedule) {
        RadialNetwork net = build_network(m, w, rho, R, K, A);
        ConductanceResult res = effective_conductance(net);
        ConvergenceRecord rec;
        rec.K = K;
        rec.A = A;
        rec.conductance = res.conductance;
        rec.relative_gap = std::fabs(res.conductance - reference.value) / reference.value;
        out.push_back(rec);
    }
    return out;
}

void export_edge_list(const RadialNetwork& net, std::ostream& os) {
    char buf[32];
    for (const auto& e : net.edges) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), e.conductance);
        os << e.u << ' ' << e.v << ' ' << std::string_view(buf, p - buf) << '\n';
    }
}

} // namespace parhyp
