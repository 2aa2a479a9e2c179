#include "parhyp/weights.hpp"

#include <algorithm>
#include <cmath>

namespace parhyp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DriftWeight::DriftWeight(const BalanceReport& balance,
                         std::optional<RadialProfile> g, double rho, double tol)
    : balance_(balance), g_(std::move(g)), rho_(rho), tol_(tol) {
    if (!(rho > 0.0) || !(rho < balance_.w.domain_end()))
        throw DomainError("drift weight: rho outside the warping domain");
    if (g_ && g_->role() != ProfileRole::GBound)
        throw DomainError("drift weight: g must have the GBound role");
    if (g_ && g_->min_radius() > rho)
        throw DomainError("drift weight: g undefined at rho");
    if (balance_.h.min_radius() > rho)
        throw DomainError("drift weight: h undefined at rho");

    bool g_const = !g_ || g_->kind() == ProfileKind::Constant;
    exact_ = balance_.w.closed_form() && balance_.h.has_closed_antiderivative() &&
             g_const;
    if (g_const && g_) {
        double gv = g_->param_value();
        g_scale_ = 1.0 / (gv * gv);
    }
}

double DriftWeight::drift_integrand(double t) const {
    double v = balance_(t);
    if (g_) {
        double gv = g_->value(t);
        v /= gv * gv;
    }
    return v;
}

double DriftWeight::checkpoint_radius(int k) const {
    return rho_ * std::exp2(static_cast<double>(k) / 8.0);
}

double DriftWeight::inner_integral(double r) const {
    if (r < rho_) throw DomainError("drift weight: requires r >= rho");
    if (r == rho_) return 0.0;

    if (exact_) {
        const auto& w = balance_.w;
        const auto& h = balance_.h;
        double s = g_scale_ * balance_.m;
        return s * ((w.log_value(r) - w.log_value(rho_)) -
                    (h.antiderivative(r) - h.antiderivative(rho_)));
    }

    // Numeric path, anchored at rho * 2^{k/8} checkpoints so the value of
    // I(r) never depends on what was queried before.
    int k = static_cast<int>(std::floor(8.0 * std::log2(r / rho_)));
    k = std::max(k, 0);
    double inner_tol = tol_ / 64.0;
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (checkpoint_integrals_.empty()) checkpoint_integrals_.push_back(0.0);
        while (static_cast<int>(checkpoint_integrals_.size()) <= k) {
            int j = static_cast<int>(checkpoint_integrals_.size());
            Integrand seg{[this](double t) { return drift_integrand(t); }};
            QuadResult q = integrate(seg, checkpoint_radius(j - 1),
                                     checkpoint_radius(j), inner_tol);
            checkpoint_integrals_.push_back(checkpoint_integrals_.back() + q.value);
        }
    }
    double base_r = checkpoint_radius(k);
    double base_i;
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        base_i = checkpoint_integrals_[static_cast<std::size_t>(k)];
    }
    if (r == base_r) return base_i;
    Integrand seg{[this](double t) { return drift_integrand(t); }};
    if (r > base_r) {
        QuadResult q = integrate(seg, base_r, r, inner_tol);
        return base_i + q.value;
    }
    QuadResult q = integrate(seg, r, base_r, inner_tol);
    return base_i - q.value;
}

double DriftWeight::log_value(double r) const {
    return balance_.w.log_value(r) - inner_integral(r);
}

LogTail DriftWeight::log_tail() const {
    if (!exact_)
        throw DomainError("drift weight: no exact tail on the numeric path");
    const auto& w = balance_.w;
    const auto& h = balance_.h;
    double s = g_scale_ * balance_.m;
    // log Lambda_g = (1 - s) log w + s H + const
    LogTail lt = w.log_tail().scaled(1.0 - s);
    lt.add(h.antiderivative_tail(), s);
    return lt;
}

double DriftWeight::data_horizon() const {
    double horizon = kInf;
    if (!balance_.w.closed_form())
        horizon = std::min(horizon, balance_.w.table().back_x());
    if (!balance_.h.closed_form())
        horizon = std::min(horizon, balance_.h.table().back_x());
    if (g_ && !g_->closed_form())
        horizon = std::min(horizon, g_->table().back_x());
    return horizon;
}

RadialWeight as_weight(const std::shared_ptr<const DriftWeight>& w, std::string label) {
    RadialWeight rw;
    rw.log_value = [w](double r) { return w->log_value(r); };
    rw.rho = w->rho();
    rw.exact = w->exact_path();
    if (rw.exact) rw.tail = w->log_tail();
    rw.data_horizon = w->data_horizon();
    rw.label = std::move(label);
    return rw;
}

RadialWeight power_weight(const WarpingDescriptor& w, double exponent, double rho) {
    if (!(rho > 0.0) || !(rho < w.domain_end()))
        throw DomainError("power_weight: rho outside the warping domain");
    RadialWeight rw;
    WarpingDescriptor wc = w;
    rw.log_value = [wc, exponent](double r) { return exponent * wc.log_value(r); };
    rw.rho = rho;
    rw.exact = w.closed_form();
    if (w.domain_end() == kInf) {
        if (rw.exact)
            rw.tail = w.log_tail().scaled(exponent);
        else
            rw.tail = w.log_tail().scaled(exponent); // declared tail: still usable
    }
    if (!w.closed_form()) {
        rw.exact = true; // declared tail class is trusted for the Ahlfors weight
        rw.data_horizon = w.table().back_x();
    }
    rw.label = "w^" + std::to_string(exponent);
    return rw;
}

namespace {

// Partial integral of the weight from rho out to a moderate radius, used as
// the reported lower bound for divergent verdicts. Values can explode, so
// the sweep stops once the integrand is plainly large.
double partial_lower_bound(const RadialWeight& w, double tol) {
    double total = 0.0;
    double r_prev = w.rho;
    for (int k = 1; k <= 10; ++k) {
        double r_k = w.rho * std::ldexp(1.0, k);
        if (w.log_value(r_k) > 30.0) break;
        Integrand f{[&](double t) { return std::exp(w.log_value(t)); }};
        try {
            QuadResult q = integrate(f, r_prev, r_k, std::max(tol, 1e-8) * (1.0 + total));
            total += q.value;
        } catch (const Error&) {
            break;
        }
        r_prev = r_k;
    }
    return total;
}

IntegralVerdict finite_verdict(const RadialWeight& w, const TailModel& model,
                               double tol, TailClass tc) {
    Integrand f{[&](double t) { return std::exp(w.log_value(t)); }};
    ImproperOptions opts;
    opts.tail = model;
    QuadResult q = integrate_to_infinity(f, w.rho, tol, opts);
    IntegralVerdict v;
    v.outcome = IntegralOutcome::Finite;
    v.value = q.value;
    v.abs_error = q.abs_error;
    v.tail = tc;
    v.lower_bound_on_partial = q.value;
    v.weight_label = w.label;
    return v;
}

struct FitResult {
    double beta0 = 0.0, beta1 = 0.0, beta2 = 0.0; // const, r, log r
    double sigma1 = 0.0, sigma2 = 0.0;            // std errors of beta1, beta2
    double residual = 0.0;                        // rms residual
};

// Least squares of y on (1, r, log r) via the scaled normal equations.
FitResult fit_log_weight(const std::vector<double>& r, const std::vector<double>& y) {
    const std::size_t n = r.size();
    double r_scale = r.back();
    double a[3][3] = {{0}}, b[3] = {0};
    auto basis = [&](double ri, double* phi) {
        phi[0] = 1.0;
        phi[1] = ri / r_scale;
        phi[2] = std::log(ri);
    };
    double phi[3];
    for (std::size_t i = 0; i < n; ++i) {
        basis(r[i], phi);
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) a[p][q] += phi[p] * phi[q];
            b[p] += phi[p] * y[i];
        }
    }
    // Solve the 3x3 system by Gaussian elimination with partial pivoting,
    // keeping the inverse diagonal for the parameter variances.
    double m[3][6];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
        for (int j = 0; j < 3; ++j) m[i][3 + j] = (i == j) ? 1.0 : 0.0;
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
            if (std::fabs(m[i][col]) > std::fabs(m[piv][col])) piv = i;
        std::swap(m[col], m[piv]);
        if (m[col][col] == 0.0) throw NumericalError("tail fit: singular normal equations");
        for (int i = 0; i < 3; ++i) {
            if (i == col) continue;
            double f = m[i][col] / m[col][col];
            for (int j = 0; j < 6; ++j) m[i][j] -= f * m[col][j];
        }
    }
    double coef[3], inv_diag[3];
    for (int i = 0; i < 3; ++i) {
        coef[i] = (b[0] * m[i][3] + b[1] * m[i][4] + b[2] * m[i][5]) / m[i][i];
        inv_diag[i] = m[i][3 + i] / m[i][i];
    }

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        basis(r[i], phi);
        double pred = coef[0] * phi[0] + coef[1] * phi[1] + coef[2] * phi[2];
        ss += (y[i] - pred) * (y[i] - pred);
    }
    double dof = static_cast<double>(n) - 3.0;
    double sigma2 = dof > 0 ? ss / dof : 0.0;

    FitResult fit;
    fit.beta0 = coef[0];
    fit.beta1 = coef[1] / r_scale;
    fit.beta2 = coef[2];
    fit.sigma1 = std::sqrt(std::max(sigma2 * inv_diag[1], 0.0)) / r_scale;
    fit.sigma2 = std::sqrt(std::max(sigma2 * inv_diag[2], 0.0));
    fit.residual = std::sqrt(std::max(sigma2, 0.0));
    return fit;
}

IntegralVerdict classify_fitted(const RadialWeight& w, const ClassifyOptions& opts) {
    IntegralVerdict v;
    v.weight_label = w.label;

    double hi = w.data_horizon;
    double lo = hi / std::pow(10.0, opts.decades);
    if (!(hi > w.rho) || !(lo > 0.0) || hi / w.rho < 8.0) {
        v.outcome = IntegralOutcome::Inconclusive;
        v.reason = "insufficient sample range for tail regression";
        return v;
    }
    lo = std::max(lo, w.rho);

    std::vector<double> r(opts.fit_points), y(opts.fit_points);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < opts.fit_points; ++i) {
        r[i] = std::exp(llo + (lhi - llo) * i / (opts.fit_points - 1));
        y[i] = w.log_value(r[i]);
    }
    FitResult fit = fit_log_weight(r, y);

    TailClass tc;
    tc.certainty = TailCertainty::Fitted;
    tc.fit_residual = fit.residual;
    tc.exponential_rate = fit.beta1;
    tc.power_exponent = fit.beta2;
    tc.log_exponent = 0.0;

    bool rate_zero = std::fabs(fit.beta1) <= opts.rate_significance * std::max(fit.sigma1, 1e-300) ||
                     std::fabs(fit.beta1) * hi < 0.05;
    if (!rate_zero) {
        if (fit.beta1 > 0.0) {
            v.outcome = IntegralOutcome::Divergent;
            v.tail = tc;
            v.lower_bound_on_partial = partial_lower_bound(w, opts.tol);
            return v;
        }
        TailModel model{1.0, fit.beta1, fit.beta2, 0.0};
        IntegralVerdict fv = finite_verdict(w, model, std::max(opts.tol, 1e-8), tc);
        fv.tail = tc;
        double budget = std::max(opts.tol, 1e-4 * (1.0 + std::fabs(fv.value)));
        fv.abs_error += fit.residual * std::fabs(fv.value);
        if (fv.abs_error > budget) {
            v.outcome = IntegralOutcome::Inconclusive;
            v.tail = tc;
            v.reason = "fitted tail uncertainty exceeds the value tolerance";
            return v;
        }
        return fv;
    }

    // Exponential rate compatible with zero: decide on the power exponent.
    if (std::fabs(fit.beta2 + 1.0) < opts.inconclusive_band) {
        v.outcome = IntegralOutcome::Inconclusive;
        v.tail = tc;
        v.reason = "fitted power exponent within the undecidable band around -1";
        v.lower_bound_on_partial = partial_lower_bound(w, opts.tol);
        return v;
    }
    if (fit.beta2 > -1.0) {
        v.outcome = IntegralOutcome::Divergent;
        v.tail = tc;
        v.lower_bound_on_partial = partial_lower_bound(w, opts.tol);
        return v;
    }
    TailModel model{1.0, 0.0, fit.beta2, 0.0};
    IntegralVerdict fv = finite_verdict(w, model, std::max(opts.tol, 1e-8), tc);
    fv.tail = tc;
    double budget = std::max(opts.tol, 1e-4 * (1.0 + std::fabs(fv.value)));
    fv.abs_error += fit.residual * std::fabs(fv.value);
    if (fv.abs_error > budget) {
        v.outcome = IntegralOutcome::Inconclusive;
        v.tail = tc;
        v.reason = "fitted tail uncertainty exceeds the value tolerance";
        return v;
    }
    return fv;
}

} // namespace

IntegralVerdict classify_improper(const RadialWeight& weight,
                                  const ClassifyOptions& opts) {
    if (weight.exact) {
        TailClass tc = weight.tail.to_tail_class();
        if (tc.induced_verdict() == TailClass::Induced::Divergent) {
            IntegralVerdict v;
            v.outcome = IntegralOutcome::Divergent;
            v.tail = tc;
            v.lower_bound_on_partial = partial_lower_bound(weight, opts.tol);
            v.weight_label = weight.label;
            return v;
        }
        if (!weight.tail.has_plain_leading_model()) {
            // Super-polynomial decay: the plain model underestimates decay,
            // which only makes the remainder bound conservative.
            TailModel model{1.0, -1.0, 0.0, 0.0};
            LogTail lt = weight.tail;
            for (const auto& t : lt.terms()) {
                if (t.alpha >= 1.0 && t.coef < 0.0) model.rate = t.coef;
            }
            return finite_verdict(weight, model, opts.tol, tc);
        }
        return finite_verdict(weight, weight.tail.leading_model(), opts.tol, tc);
    }
    return classify_fitted(weight, opts);
}

double lambda_plain(const BalanceReport& M, double rho, double r, double tol) {
    DriftWeight w(M, std::nullopt, rho, tol);
    return w.value(r);
}

double lambda_tangency(const BalanceReport& M, const RadialProfile& g, double rho,
                       double r, double tol) {
    DriftWeight w(M, g, rho, tol);
    return w.value(r);
}

} // namespace parhyp
