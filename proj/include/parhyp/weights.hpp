#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "parhyp/profiles.hpp"
#include "parhyp/quadrature.hpp"

namespace parhyp {

/// The weight Lambda_g(r) = w(r) exp(-int_rho^r M(t)/g^2(t) dt), with
/// Lambda = Lambda_g for g absent. Everything is accumulated in the log
/// domain; exponentiation happens once per evaluation.
///
/// When w and h are closed-form and g is constant (or absent) the inner
/// integral collapses to the exact antiderivatives
///   int M = m (log w - H),  H' = h,
/// and the asymptotic tail of log Lambda_g is composed symbolically.
/// Otherwise the inner integral is computed adaptively, anchored at a
/// geometric checkpoint grid so results do not depend on query order.
class DriftWeight {
public:
    DriftWeight(const BalanceReport& balance, std::optional<RadialProfile> g,
                double rho, double tol = 1e-12);

    double rho() const { return rho_; }
    int m() const { return balance_.m; }
    const WarpingDescriptor& warping() const { return balance_.w; }
    const BalanceReport& balance() const { return balance_; }
    const std::optional<RadialProfile>& tangency() const { return g_; }

    bool exact_path() const { return exact_; }

    double log_value(double r) const;
    double value(double r) const { return std::exp(log_value(r)); }

    /// int_rho^r M/g^2 dt.
    double inner_integral(double r) const;

    /// Asymptotic terms of log Lambda_g; DomainError on the numeric path.
    LogTail log_tail() const;

    /// Largest radius at which every tabulated component still has sample
    /// data (infinity when all components are closed-form).
    double data_horizon() const;

private:
    double drift_integrand(double t) const; // M(t)/g^2(t)
    double checkpoint_radius(int k) const;

    BalanceReport balance_;
    std::optional<RadialProfile> g_;
    double rho_;
    double tol_;
    bool exact_ = false;
    double g_scale_ = 1.0; // 1/g^2 for constant g

    mutable std::mutex cache_mutex_;
    mutable std::vector<double> checkpoint_integrals_; // I(rho * 2^{k/8})
};

/// Generic positive radial weight for improper-integral classification.
struct RadialWeight {
    std::function<double(double)> log_value;
    double rho = 1.0;
    bool exact = false;
    LogTail tail;                 // valid when exact
    double data_horizon = std::numeric_limits<double>::infinity();
    std::string label;
};

RadialWeight as_weight(const std::shared_ptr<const DriftWeight>& w, std::string label);
/// Weight w(r)^exponent (Ahlfors integrand for exponent = 1 - n).
RadialWeight power_weight(const WarpingDescriptor& w, double exponent, double rho);

enum class IntegralOutcome { Finite, Divergent, Inconclusive };

struct IntegralVerdict {
    IntegralOutcome outcome = IntegralOutcome::Inconclusive;
    double value = std::numeric_limits<double>::quiet_NaN();
    double abs_error = std::numeric_limits<double>::quiet_NaN();
    std::optional<TailClass> tail;
    double lower_bound_on_partial = 0.0;
    std::string reason; // populated for Inconclusive
    std::string weight_label;
};

struct ClassifyOptions {
    double tol = 1e-10;
    // Fitted-path controls: the regression uses the last `decades` decades
    // of the sample range and refuses near the power -1 boundary.
    double decades = 2.0;
    int fit_points = 96;
    double inconclusive_band = 0.1;
    double rate_significance = 3.0;
};

/// Convergence classification of int_rho^infinity of the weight.
IntegralVerdict classify_improper(const RadialWeight& weight,
                                  const ClassifyOptions& opts = {});

// Spec-level operations.
double lambda_plain(const BalanceReport& M, double rho, double r, double tol = 1e-10);
double lambda_tangency(const BalanceReport& M, const RadialProfile& g, double rho,
                       double r, double tol = 1e-10);

} // namespace parhyp
