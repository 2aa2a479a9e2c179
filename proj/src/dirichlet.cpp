#include "parhyp/dirichlet.hpp"

#include <algorithm>
#include <cmath>

namespace parhyp {

namespace {

void check_annulus(const AnnulusSpec& spec) {
    if (!(spec.rho > 0.0) || !(spec.rho < spec.R))
        throw DomainError("annulus: requires 0 < rho < R");
    if (!(spec.R < spec.w.domain_end()))
        throw DomainError("annulus: R beyond the warping domain");
    if (spec.m < 2) throw DomainError("annulus: m must be >= 2");
}

} // namespace

std::vector<double> log_grid(double rho, double R, int n) {
    if (n < 2) throw DomainError("log_grid: need at least 2 nodes");
    std::vector<double> g(n);
    double s0 = std::log(rho), s1 = std::log(R);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(s0 + (s1 - s0) * i / (n - 1));
    g.front() = rho;
    g.back() = R;
    return g;
}

std::shared_ptr<const DriftWeight> annulus_weight(const AnnulusSpec& spec, double tol) {
    check_annulus(spec);
    BalanceOptions opts;
    opts.scan_hi = std::min(opts.scan_hi, spec.R);
    BalanceReport M = balance(spec.m, spec.w, spec.h, opts);
    return std::make_shared<DriftWeight>(M, spec.g, spec.rho, tol);
}

double potential_closed_form(const AnnulusSpec& spec, double r, double tol) {
    check_annulus(spec);
    if (r < spec.rho || r > spec.R)
        throw DomainError("potential: r outside [rho, R]");
    auto w = annulus_weight(spec, tol);
    if (r == spec.rho) return 0.0;
    if (r == spec.R) return 1.0;
    Integrand f{[&](double t) { return w->value(t); }};
    QuadResult denom = integrate(f, spec.rho, spec.R, tol);
    QuadResult numer = integrate(f, spec.rho, r, tol);
    return numer.value / denom.value;
}

PotentialSolution potential_closed_form_solution(const AnnulusSpec& spec,
                                                 const std::vector<double>& grid,
                                                 double tol) {
    check_annulus(spec);
    auto w = annulus_weight(spec, tol);
    Integrand f{[&](double t) { return w->value(t); }};
    QuadResult denom = integrate(f, spec.rho, spec.R, tol);

    PotentialSolution sol;
    sol.method = PotentialMethod::ClosedForm;
    sol.grid = grid;
    sol.values.resize(grid.size());
    double acc = 0.0;
    double prev = spec.rho;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double r = grid[i];
        if (r < spec.rho || r > spec.R)
            throw DomainError("potential grid point outside [rho, R]");
        if (r > prev) {
            QuadResult q = integrate(f, prev, r, tol);
            acc += q.value;
            prev = r;
        }
        sol.values[i] = std::clamp(acc / denom.value, 0.0, 1.0);
    }
    if (!sol.grid.empty() && sol.grid.front() == spec.rho) sol.values.front() = 0.0;
    if (!sol.grid.empty() && sol.grid.back() == spec.R) sol.values.back() = 1.0;
    return sol;
}

PotentialSolution potential_bvp(const AnnulusSpec& spec, int n_nodes) {
    check_annulus(spec);
    if (n_nodes < 16) throw DomainError("potential_bvp: need at least 16 nodes");

    auto weight = annulus_weight(spec, 1e-12);
    const BalanceReport& M = weight->balance();

    // In s = log r the operator becomes psi_ss + psi_s (r A(r) - 1) with
    // A = M/g^2 - eta_w; uniform grid in s, centered second order.
    const int n = n_nodes;
    const double s0 = std::log(spec.rho), s1 = std::log(spec.R);
    const double hch = (s1 - s0) / (n - 1);

    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    diag[0] = 1.0;
    rhs[0] = 0.0;
    diag[n - 1] = 1.0;
    rhs[n - 1] = 1.0;

    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = std::exp(s0 + hch * i);
    grid[0] = spec.rho;
    grid[n - 1] = spec.R;

    for (int i = 1; i + 1 < n; ++i) {
        double r = grid[i];
        double drift = M(r);
        if (spec.g) {
            double gv = spec.g->value(r);
            drift /= gv * gv;
        }
        double a = r * (drift - spec.w.eta(r)) - 1.0;
        sub[i] = 1.0 / (hch * hch) - a / (2.0 * hch);
        diag[i] = -2.0 / (hch * hch);
        sup[i] = 1.0 / (hch * hch) + a / (2.0 * hch);
    }

    // Thomas algorithm.
    std::vector<double> cs(n, 0.0), ds(n, 0.0);
    if (diag[0] == 0.0) throw SingularMatrixError("potential_bvp: zero pivot");
    cs[0] = sup[0] / diag[0];
    ds[0] = rhs[0] / diag[0];
    for (int i = 1; i < n; ++i) {
        double denom = diag[i] - sub[i] * cs[i - 1];
        if (denom == 0.0 || !std::isfinite(denom))
            throw SingularMatrixError("potential_bvp: singular tridiagonal system (drift blow-up on the grid)");
        cs[i] = sup[i] / denom;
        ds[i] = (rhs[i] - sub[i] * ds[i - 1]) / denom;
    }
    std::vector<double> psi(n);
    psi[n - 1] = ds[n - 1];
    for (int i = n - 2; i >= 0; --i) psi[i] = ds[i] - cs[i] * psi[i + 1];

    for (double v : psi)
        if (!std::isfinite(v))
            throw ConvergenceError("potential_bvp: non-finite solution");

    for (double& v : psi) v = std::clamp(v, 0.0, 1.0);
    psi[0] = 0.0;
    psi[n - 1] = 1.0;

    PotentialSolution sol;
    sol.method = PotentialMethod::FiniteDifference;
    sol.grid = std::move(grid);
    sol.values = std::move(psi);
    sol.truncation_estimate = hch * hch;
    return sol;
}

CapacityEstimate drifted_capacity(const AnnulusSpec& spec, double tol) {
    check_annulus(spec);
    auto w = annulus_weight(spec, tol);
    Integrand f{[&](double t) { return w->value(t); }};
    QuadResult denom = integrate(f, spec.rho, spec.R, tol);

    double vol = unit_sphere_volume(spec.m) *
                 std::pow(spec.w.value(spec.rho), spec.m - 1);
    double lambda_rho = spec.w.value(spec.rho); // empty inner integral
    CapacityEstimate cap;
    cap.value = vol * lambda_rho / denom.value;
    cap.abs_error = cap.value * (denom.abs_error / denom.value);
    cap.method = "closed_form";
    return cap;
}

CapacityLimit capacity_limit(const AnnulusSpec& spec_without_R, double tol) {
    AnnulusSpec spec = spec_without_R;
    spec.R = std::min(2.0 * spec.rho, 0.5 * (spec.rho + spec.w.domain_end()));
    check_annulus(spec);
    if (spec.w.domain_end() != std::numeric_limits<double>::infinity())
        throw DomainError("capacity_limit: model is compact, no R -> infinity limit");

    auto w = annulus_weight(spec, tol);
    IntegralVerdict verdict = classify_improper(as_weight(w, "lambda_g"),
                                                ClassifyOptions{tol});
    CapacityLimit out;
    out.integral = verdict;
    if (verdict.outcome == IntegralOutcome::Inconclusive) return out;

    double vol = unit_sphere_volume(spec.m) *
                 std::pow(spec.w.value(spec.rho), spec.m - 1);
    double lambda_rho = spec.w.value(spec.rho);
    CapacityEstimate cap;
    cap.method = "limit";
    if (verdict.outcome == IntegralOutcome::Divergent) {
        cap.value = 0.0;
        cap.abs_error = 0.0;
    } else {
        cap.value = vol * lambda_rho / verdict.value;
        cap.abs_error = cap.value * (verdict.abs_error / verdict.value);
    }
    out.capacity = cap;
    return out;
}

} // namespace parhyp
