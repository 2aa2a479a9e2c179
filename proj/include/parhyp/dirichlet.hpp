#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parhyp/weights.hpp"

namespace parhyp {

/// Extrinsic annulus A_{rho,R} of a comparison problem.
struct AnnulusSpec {
    int m = 2;
    WarpingDescriptor w;
    RadialProfile h;
    std::optional<RadialProfile> g;
    double rho = 1.0;
    double R = 4.0;
};

enum class PotentialMethod { ClosedForm, FiniteDifference };

/// Radial potential psi with psi(rho) = 0, psi(R) = 1.
struct PotentialSolution {
    std::vector<double> grid;
    std::vector<double> values;
    PotentialMethod method = PotentialMethod::ClosedForm;
    double truncation_estimate = 0.0; // FD scheme estimate, 0 for closed form
};

struct CapacityEstimate {
    double value = 0.0;
    double abs_error = 0.0;
    std::string method; // "closed_form" | "bvp" | "network" | "monte_carlo" | "limit"
};

std::shared_ptr<const DriftWeight> annulus_weight(const AnnulusSpec& spec, double tol);

/// psi(r) = int_rho^r Lambda_g / int_rho^R Lambda_g.
double potential_closed_form(const AnnulusSpec& spec, double r, double tol = 1e-10);
PotentialSolution potential_closed_form_solution(const AnnulusSpec& spec,
                                                 const std::vector<double>& grid,
                                                 double tol = 1e-10);

/// Independent oracle: second-order centered finite differences for
/// psi'' + psi' (M/g^2 - eta_w) = 0 on a log-spaced grid, tridiagonal solve.
PotentialSolution potential_bvp(const AnnulusSpec& spec, int n_nodes);

/// Vol(dD_rho^w) Lambda_g(rho) (int_rho^R Lambda_g)^{-1}.
CapacityEstimate drifted_capacity(const AnnulusSpec& spec, double tol = 1e-10);

struct CapacityLimit {
    IntegralVerdict integral;
    std::optional<CapacityEstimate> capacity; // nullopt when inconclusive
};

/// R -> infinity limit: zero capacity when the weight integral diverges,
/// the positive limit when it converges, inconclusive propagated.
CapacityLimit capacity_limit(const AnnulusSpec& spec_without_R, double tol = 1e-10);

/// Log-spaced grid with n nodes on [rho, R].
std::vector<double> log_grid(double rho, double R, int n);

} // namespace parhyp
