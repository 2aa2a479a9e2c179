#include "parhyp/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace parhyp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_g_range(double v, double r) {
    if (!(v > 0.0) || v > 1.0 + 1e-12)
        throw DomainError("tangency bound must lie in (0, 1], got " +
                          std::to_string(v) + " at r = " + std::to_string(r));
}

} // namespace

RadialProfile RadialProfile::zero() {
    RadialProfile p;
    p.kind_ = ProfileKind::Zero;
    p.role_ = ProfileRole::HBound;
    p.tail_ = TailModel{0.0, 0.0, 0.0, 0.0};
    return p;
}

RadialProfile RadialProfile::constant(double v, ProfileRole role) {
    if (role == ProfileRole::GBound) check_g_range(v, 0.0);
    RadialProfile p;
    p.kind_ = ProfileKind::Constant;
    p.role_ = role;
    p.value_ = v;
    p.tail_ = TailModel{v, 0.0, 0.0, 0.0};
    return p;
}

RadialProfile RadialProfile::eta_of_model(const WarpingDescriptor& w) {
    RadialProfile p;
    p.kind_ = ProfileKind::EtaOfModel;
    p.role_ = ProfileRole::HBound;
    p.model_ = std::make_shared<WarpingDescriptor>(w);
    return p;
}

RadialProfile RadialProfile::power_law(double coefficient, double exponent) {
    RadialProfile p;
    p.kind_ = ProfileKind::PowerLaw;
    p.role_ = ProfileRole::HBound;
    p.coef_ = coefficient;
    p.exponent_ = exponent;
    p.tail_ = TailModel{coefficient, 0.0, exponent, 0.0};
    return p;
}

RadialProfile RadialProfile::tabulated(
    std::vector<std::pair<double, double>> samples, TailModel tail,
    ProfileRole role, double accuracy) {
    std::vector<double> r, v;
    r.reserve(samples.size());
    v.reserve(samples.size());
    for (const auto& [ri, vi] : samples) {
        if (!(ri > 0.0)) throw DomainError("tabulated profile: radii must be positive");
        if (role == ProfileRole::GBound) check_g_range(vi, ri);
        r.push_back(ri);
        v.push_back(vi);
    }
    auto table = std::make_shared<InterpTable>(std::move(r), std::move(v));
    double err = table->interpolation_error_estimate(1e-3);
    if (err > accuracy)
        throw InterpolationError("tabulated profile: sample spacing supports accuracy " +
                                 std::to_string(err) + " but " + std::to_string(accuracy) +
                                 " was requested");
    if (role == ProfileRole::GBound) {
        // The anchored tail extrapolation must stay in (0, 1].
        if (tail.rate > 0.0 || (tail.rate == 0.0 && tail.power > 0.0))
            throw DomainError("tangency bound: declared tail grows beyond 1");
    }
    RadialProfile p;
    p.kind_ = ProfileKind::Tabulated;
    p.role_ = role;
    p.table_ = std::move(table);
    p.tail_ = tail;
    return p;
}

double RadialProfile::value(double r) const {
    if (!(r > 0.0)) throw DomainError("profile: radius must be positive");
    switch (kind_) {
        case ProfileKind::Zero: return 0.0;
        case ProfileKind::Constant: return value_;
        case ProfileKind::EtaOfModel: return model_->eta(r);
        case ProfileKind::PowerLaw: return coef_ * std::pow(r, exponent_);
        case ProfileKind::Tabulated: {
            const InterpTable& t = *table_;
            if (r < t.front_x())
                throw DomainError("tabulated profile: r = " + std::to_string(r) +
                                  " below table range starting at " +
                                  std::to_string(t.front_x()));
            if (r > t.back_x()) {
                double v = tail_.anchored_value(r, t.back_x(), t.ordinates().back());
                if (role_ == ProfileRole::GBound) v = std::min(v, 1.0);
                return v;
            }
            double v = t.eval(r);
            if (role_ == ProfileRole::GBound)
                v = std::min(std::max(v, 1e-300), 1.0); // interpolation wiggle only
            return v;
        }
    }
    return 0.0;
}

double RadialProfile::min_radius() const {
    if (kind_ == ProfileKind::Tabulated) return table_->front_x();
    return 0.0;
}

bool RadialProfile::has_closed_antiderivative() const {
    return kind_ != ProfileKind::Tabulated;
}

double RadialProfile::antiderivative(double r) const {
    switch (kind_) {
        case ProfileKind::Zero: return 0.0;
        case ProfileKind::Constant: return value_ * r;
        case ProfileKind::EtaOfModel: return model_->log_value(r);
        case ProfileKind::PowerLaw:
            if (exponent_ == -1.0) return coef_ * std::log(r);
            return coef_ * std::pow(r, exponent_ + 1.0) / (exponent_ + 1.0);
        case ProfileKind::Tabulated:
            throw DomainError("tabulated profile has no closed antiderivative");
    }
    return 0.0;
}

LogTail RadialProfile::antiderivative_tail() const {
    LogTail lt;
    switch (kind_) {
        case ProfileKind::Zero: break;
        case ProfileKind::Constant:
            lt.add(value_, 1.0, 0.0);
            break;
        case ProfileKind::EtaOfModel:
            lt = model_->log_tail();
            break;
        case ProfileKind::PowerLaw:
            if (exponent_ == -1.0)
                lt.add(coef_, 0.0, 1.0);
            else if (exponent_ + 1.0 > 0.0)
                lt.add(coef_ / (exponent_ + 1.0), exponent_ + 1.0, 0.0);
            // exponent + 1 < 0: bounded, no tail contribution
            break;
        case ProfileKind::Tabulated:
            throw DomainError("tabulated profile has no exact antiderivative tail");
    }
    return lt;
}

TailModel RadialProfile::tail() const {
    if (kind_ == ProfileKind::EtaOfModel) {
        // eta = (log w)' : differentiate the leading tail of log w.
        LogTail lw = model_->log_tail();
        double rate = 0.0, pow_coef = 0.0;
        for (const auto& t : lw.terms()) {
            if (t.alpha == 1.0 && t.beta == 0.0) rate = t.coef;
            if (t.alpha == 0.0 && t.beta == 1.0) pow_coef = t.coef;
        }
        if (rate != 0.0) return {rate, 0.0, 0.0, 0.0};     // eta -> rate
        if (pow_coef != 0.0) return {pow_coef, 0.0, -1.0, 0.0}; // eta ~ c / r
        return {1.0, 0.0, -2.0, 0.0}; // flat-to-leading-order: eta ~ 1/r^2 scale
    }
    return tail_;
}

const WarpingDescriptor& RadialProfile::model() const {
    if (!model_) throw DomainError("profile: not an eta_of_model profile");
    return *model_;
}

const InterpTable& RadialProfile::table() const {
    if (!table_) throw DomainError("profile: not a tabulated profile");
    return *table_;
}

BalanceReport balance(int m, const WarpingDescriptor& w, const RadialProfile& h,
                      const BalanceOptions& opts) {
    if (m < 2) throw DomainError("balance: m must be >= 2");
    if (h.role() != ProfileRole::HBound)
        throw DomainError("balance: profile must have the HBound role");

    BalanceReport rep;
    rep.m = m;
    rep.w = w;
    rep.h = h;

    // Structural identity: h is eta of the same model.
    if (h.kind() == ProfileKind::EtaOfModel && h.model().same_descriptor(w)) {
        rep.cls = SignClass::IdenticallyZero;
        rep.grade = CertGrade::Exact;
        return rep;
    }

    double lo = std::max(opts.scan_lo, h.min_radius());
    double hi = std::min(opts.scan_hi, 0.999 * w.domain_end());
    if (!(lo < hi))
        throw DomainError("balance: h undefined on the scan range");

    const int n = std::max(opts.scan_samples, 16);
    const double log_lo = std::log(lo), log_hi = std::log(hi);

    bool has_pos = false, has_neg = false;
    std::optional<double> first_pos, first_neg;
    double max_abs = 0.0;

    auto probe = [&](double r) {
        double e = w.eta(r);
        double hv = h.value(r);
        double v = m * (e - hv);
        double scale = m * std::max({std::fabs(e), std::fabs(hv), 1.0});
        max_abs = std::max(max_abs, std::fabs(v));
        if (v > 1e-13 * scale) {
            has_pos = true;
            if (!first_pos) first_pos = r;
        } else if (v < -1e-13 * scale) {
            has_neg = true;
            if (!first_neg) first_neg = r;
        }
    };

    for (int i = 0; i < n; ++i) {
        double r = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
        probe(r);
    }
    for (double r : opts.far_radii) {
        if (r > hi && r < w.domain_end() && r >= h.min_radius()) probe(r);
    }

    // Closed-form limit comparison at infinity backs up the sampled tail.
    bool closed = w.closed_form() && h.closed_form();
    if (closed && w.domain_end() == std::numeric_limits<double>::infinity()) {
        TailModel eta_t = RadialProfile::eta_of_model(w).tail();
        TailModel h_t = h.tail();
        double eta_inf = (eta_t.rate == 0.0 && eta_t.power == 0.0) ? eta_t.coef
                         : (eta_t.power < 0.0 ? 0.0 : eta_t.coef);
        double h_inf = (h_t.rate > 0.0 || (h_t.rate == 0.0 && h_t.power > 0.0))
                           ? (h_t.coef > 0 ? 1e308 : -1e308)
                       : (h_t.rate < 0.0 || h_t.power < 0.0) ? 0.0
                                                             : h_t.coef;
        double diff = eta_inf - h_inf;
        if (diff > 0.0) has_pos = true;
        if (diff < 0.0) has_neg = true;
    }

    if (has_pos && has_neg) {
        rep.cls = SignClass::Indefinite;
        rep.witness = first_neg && first_pos
                          ? std::max(*first_neg, *first_pos) // radius where the sign flipped
                          : (first_neg ? *first_neg : *first_pos);
        rep.grade = closed ? CertGrade::Exact : CertGrade::Empirical;
        return rep;
    }
    if (!has_pos && !has_neg) {
        rep.cls = SignClass::IdenticallyZero;
        rep.grade = CertGrade::Empirical; // structural zero handled above
        return rep;
    }
    rep.cls = has_pos ? SignClass::NonNegative : SignClass::NonPositive;
    rep.grade = closed ? CertGrade::Exact : CertGrade::Empirical;
    return rep;
}

std::pair<RadialProfile, RadialProfile> cone_profile(double half_angle) {
    if (!(half_angle > 0.0) || !(half_angle < 0.5 * kPi))
        throw DomainError("cone_profile: half angle must lie in (0, pi/2)");
    // Rulings pass through the vertex: grad^N r is tangent to the cone and
    // the mean curvature vector is orthogonal to the position vector.
    return {RadialProfile::zero(),
            RadialProfile::constant(1.0, ProfileRole::GBound)};
}

double paraboloid_extrinsic_distance(double a, double s) {
    return s * std::sqrt(1.0 + a * a * s * s);
}

double paraboloid_convexity(double a, double s) {
    double u = a * a * s * s;
    double q = 1.0 + 4.0 * u;
    return 2.0 * a * a * s * (1.0 + 2.0 * u) / (q * q * std::sqrt(1.0 + u));
}

double paraboloid_tangency(double a, double s) {
    double u = a * a * s * s;
    double q = 1.0 + 4.0 * u;
    return std::sqrt(1.0 - u / ((1.0 + u) * q));
}

std::pair<RadialProfile, RadialProfile> paraboloid_profile(double a) {
    if (!(a > 0.0)) throw DomainError("paraboloid_profile: a must be positive");

    const double s_min = 1e-4;
    const double s_max = std::max(20.0, 1.05 * std::sqrt(1.2e4 / a));
    const int n = 2400;

    std::vector<std::pair<double, double>> h_samples, g_samples;
    h_samples.reserve(n);
    g_samples.reserve(n);
    const double ls0 = std::log(s_min), ls1 = std::log(s_max);
    for (int i = 0; i < n; ++i) {
        double s = std::exp(ls0 + (ls1 - ls0) * i / (n - 1));
        double r = paraboloid_extrinsic_distance(a, s);
        h_samples.emplace_back(r, paraboloid_convexity(a, s));
        g_samples.emplace_back(r, paraboloid_tangency(a, s));
    }

    // The table is built directly on the curve, so inverting r(s) is only a
    // consistency check of the parameterization.
    for (int i = 0; i < n; i += n / 16) {
        double r_target = h_samples[i].first;
        double s = std::sqrt(r_target); // initial guess, exact at a -> 0
        for (int it = 0; it < 100; ++it) {
            double f = paraboloid_extrinsic_distance(a, s) - r_target;
            double df = (1.0 + 2.0 * a * a * s * s) / std::sqrt(1.0 + a * a * s * s);
            double step = f / df;
            s -= step;
            if (std::fabs(step) <= 1e-12 * (1.0 + std::fabs(s))) break;
        }
        if (std::fabs(paraboloid_extrinsic_distance(a, s) - r_target) >
            1e-10 * (1.0 + r_target))
            throw NumericalError("paraboloid_profile: r(s) inversion failed tolerance");
    }

    // C ~ 1/(4r) and g -> 1 from below along the paraboloid.
    TailModel h_tail{0.25, 0.0, -1.0, 0.0};
    TailModel g_tail{1.0, 0.0, 0.0, 0.0};
    return {RadialProfile::tabulated(std::move(h_samples), h_tail, ProfileRole::HBound),
            RadialProfile::tabulated(std::move(g_samples), g_tail, ProfileRole::GBound)};
}

} // namespace parhyp
