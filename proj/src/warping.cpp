#include "parhyp/warping.hpp"

#include <cmath>
#include <string>

namespace parhyp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Cubic Hermite on [0, r1] matching w(0)=0, w'(0)=1 and the first table node.
double hermite_from_origin(double r, double r1, double w1, double d1, int deriv) {
    double t = r / r1;
    if (deriv == 0) {
        double h10 = t * (1.0 - t) * (1.0 - t);
        double h01 = t * t * (3.0 - 2.0 * t);
        double h11 = t * t * (t - 1.0);
        return h10 * r1 + h01 * w1 + h11 * r1 * d1;
    }
    if (deriv == 1) {
        double dh10 = (1.0 - t) * (1.0 - 3.0 * t);
        double dh01 = 6.0 * t * (1.0 - t);
        double dh11 = t * (3.0 * t - 2.0);
        return dh10 + dh01 * w1 / r1 + dh11 * d1;
    }
    return (6.0 * t - 4.0) / r1 + (6.0 - 12.0 * t) * w1 / (r1 * r1) +
           (6.0 * t - 2.0) * d1 / r1;
}

} // namespace

WarpingDescriptor WarpingDescriptor::space_form(double b) {
    WarpingDescriptor w;
    w.family_ = WarpingFamily::SpaceForm;
    w.b_ = b;
    w.domain_end_ = b > 0.0 ? kPi / std::sqrt(b) : kInf;
    return w;
}

WarpingDescriptor WarpingDescriptor::power_tail(double p, double transition_radius) {
    if (!(transition_radius > 0.0))
        throw DomainError("power_tail: transition radius must be positive");
    WarpingDescriptor w;
    w.family_ = WarpingFamily::PowerTail;
    w.p_ = p;
    w.r0_ = transition_radius;
    w.domain_end_ = kInf;
    return w;
}

WarpingDescriptor WarpingDescriptor::exp_tail(double a, double correction_exponent) {
    if (!(a >= 0.0))
        throw DomainError("exp_tail: rate must be nonnegative (decaying warping has no tail model here)");
    WarpingDescriptor w;
    w.family_ = WarpingFamily::ExpTail;
    w.a_ = a;
    w.q_ = correction_exponent;
    w.domain_end_ = kInf;
    return w;
}

WarpingDescriptor WarpingDescriptor::tabulated(
    std::vector<std::pair<double, double>> samples, TailModel declared_tail,
    double accuracy) {
    std::vector<double> r, v;
    r.reserve(samples.size());
    v.reserve(samples.size());
    for (const auto& [ri, wi] : samples) {
        if (!(ri > 0.0)) throw DomainError("tabulated warping: radii must be positive");
        if (!(wi > 0.0)) throw DomainError("tabulated warping: w must be positive");
        r.push_back(ri);
        v.push_back(wi);
    }
    auto table = std::make_shared<InterpTable>(std::move(r), std::move(v));
    // w(0)=0, w'(0)=1, checked numerically at the near end of the table.
    if (table->front_x() > 0.1)
        throw DomainError("tabulated warping: first sample must satisfy r <= 0.1 to anchor w(0)=0");
    double slope = table->ordinates().front() / table->front_x();
    if (std::fabs(slope - 1.0) > 0.02)
        throw DomainError("tabulated warping: w/r at the first sample is " +
                          std::to_string(slope) + ", expected 1 within 2%");
    double err = table->interpolation_error_estimate(1e-6);
    if (err > accuracy)
        throw InterpolationError("tabulated warping: sample spacing supports accuracy " +
                                 std::to_string(err) + " but " + std::to_string(accuracy) +
                                 " was requested");
    WarpingDescriptor w;
    w.family_ = WarpingFamily::Tabulated;
    w.table_ = std::move(table);
    w.declared_tail_ = declared_tail;
    w.domain_end_ = kInf;
    return w;
}

void WarpingDescriptor::check_radius(double r) const {
    if (!(r > 0.0) || !(r < domain_end_))
        throw DomainError("warping: radius " + std::to_string(r) +
                          " outside (0, " + std::to_string(domain_end_) + ")");
}

const InterpTable& WarpingDescriptor::table() const {
    if (!table_) throw DomainError("warping: not a tabulated descriptor");
    return *table_;
}

double WarpingDescriptor::value(double r) const {
    check_radius(r);
    switch (family_) {
        case WarpingFamily::SpaceForm: {
            if (b_ == 0.0) return r;
            if (b_ > 0.0) {
                double s = std::sqrt(b_);
                return std::sin(s * r) / s;
            }
            double s = std::sqrt(-b_);
            return std::sinh(s * r) / s;
        }
        case WarpingFamily::PowerTail: {
            double u = r / r0_;
            return r * std::pow(1.0 + u * u, 0.5 * (p_ - 1.0));
        }
        case WarpingFamily::ExpTail:
            return r * std::exp(a_ * r) * std::pow(1.0 + r, q_ - 1.0);
        case WarpingFamily::Tabulated: {
            const InterpTable& t = *table_;
            if (r < t.front_x())
                return hermite_from_origin(r, t.front_x(), t.ordinates().front(),
                                           t.derivative(t.front_x()), 0);
            if (r > t.back_x())
                return declared_tail_.anchored_value(r, t.back_x(), t.ordinates().back());
            return t.eval(r);
        }
    }
    return 0.0;
}

double WarpingDescriptor::derivative(double r) const {
    check_radius(r);
    switch (family_) {
        case WarpingFamily::SpaceForm: {
            if (b_ == 0.0) return 1.0;
            if (b_ > 0.0) return std::cos(std::sqrt(b_) * r);
            return std::cosh(std::sqrt(-b_) * r);
        }
        case WarpingFamily::PowerTail: {
            // w = r (1+u^2)^{(p-1)/2}, u = r/r0
            double u = r / r0_;
            double base = std::pow(1.0 + u * u, 0.5 * (p_ - 1.0));
            return base * (1.0 + (p_ - 1.0) * u * u / (1.0 + u * u));
        }
        case WarpingFamily::ExpTail: {
            double w = value(r);
            return w * eta(r);
        }
        case WarpingFamily::Tabulated: {
            const InterpTable& t = *table_;
            if (r < t.front_x())
                return hermite_from_origin(r, t.front_x(), t.ordinates().front(),
                                           t.derivative(t.front_x()), 1);
            if (r > t.back_x()) {
                double w = declared_tail_.anchored_value(r, t.back_x(), t.ordinates().back());
                return w * declared_tail_.log_derivative(r);
            }
            return t.derivative(r);
        }
    }
    return 0.0;
}

double WarpingDescriptor::second_derivative(double r) const {
    check_radius(r);
    switch (family_) {
        case WarpingFamily::SpaceForm:
            return -b_ * value(r);
        case WarpingFamily::PowerTail: {
            // eta = 1/r + (p-1) r / (r0^2 + r^2); w'' = w (eta' + eta^2)
            double e = eta(r);
            double d = r0_ * r0_ + r * r;
            double eprime = -1.0 / (r * r) + (p_ - 1.0) * (r0_ * r0_ - r * r) / (d * d);
            return value(r) * (eprime + e * e);
        }
        case WarpingFamily::ExpTail: {
            double e = eta(r);
            double eprime = -1.0 / (r * r) - (q_ - 1.0) / ((1.0 + r) * (1.0 + r));
            return value(r) * (eprime + e * e);
        }
        case WarpingFamily::Tabulated: {
            const InterpTable& t = *table_;
            if (r < t.front_x())
                return hermite_from_origin(r, t.front_x(), t.ordinates().front(),
                                           t.derivative(t.front_x()), 2);
            if (r > t.back_x()) {
                double w = declared_tail_.anchored_value(r, t.back_x(), t.ordinates().back());
                double ld = declared_tail_.log_derivative(r);
                // (log w)'' under the model
                double ldd = -declared_tail_.power / (r * r);
                if (declared_tail_.log_power != 0.0) {
                    double lr = std::log(r);
                    ldd -= declared_tail_.log_power * (lr + 1.0) / (r * r * lr * lr);
                }
                return w * (ldd + ld * ld);
            }
            return t.second_derivative(r);
        }
    }
    return 0.0;
}

double WarpingDescriptor::eta(double r) const {
    check_radius(r);
    switch (family_) {
        case WarpingFamily::SpaceForm: {
            if (b_ == 0.0) return 1.0 / r;
            if (b_ > 0.0) {
                double s = std::sqrt(b_);
                return s / std::tan(s * r);
            }
            double s = std::sqrt(-b_);
            return s / std::tanh(s * r);
        }
        case WarpingFamily::PowerTail: {
            double d = r0_ * r0_ + r * r;
            return 1.0 / r + (p_ - 1.0) * r / d;
        }
        case WarpingFamily::ExpTail:
            return 1.0 / r + a_ + (q_ - 1.0) / (1.0 + r);
        case WarpingFamily::Tabulated:
            return derivative(r) / value(r);
    }
    return 0.0;
}

double WarpingDescriptor::log_value(double r) const {
    check_radius(r);
    switch (family_) {
        case WarpingFamily::SpaceForm: {
            if (b_ == 0.0) return std::log(r);
            if (b_ > 0.0) return std::log(value(r));
            double s = std::sqrt(-b_);
            double x = s * r;
            // log(sinh x / s), stable for large x.
            if (x > 20.0) return x - std::log(2.0 * s) + std::log1p(-std::exp(-2.0 * x));
            return std::log(std::sinh(x) / s);
        }
        case WarpingFamily::PowerTail: {
            double u = r / r0_;
            return std::log(r) + 0.5 * (p_ - 1.0) * std::log1p(u * u);
        }
        case WarpingFamily::ExpTail:
            return std::log(r) + a_ * r + (q_ - 1.0) * std::log1p(r);
        case WarpingFamily::Tabulated: {
            const InterpTable& t = *table_;
            if (r > t.back_x())
                return declared_tail_.anchored_log_value(
                    r, t.back_x(), std::log(t.ordinates().back()));
            return std::log(value(r));
        }
    }
    return 0.0;
}

LogTail WarpingDescriptor::log_tail() const {
    if (domain_end_ < kInf)
        throw DomainError("log_tail: model is compact (b > 0), no asymptotic tail");
    LogTail lt;
    switch (family_) {
        case WarpingFamily::SpaceForm:
            if (b_ == 0.0)
                lt.add(1.0, 0.0, 1.0); // log r
            else
                lt.add(std::sqrt(-b_), 1.0, 0.0); // sqrt(-b) r
            break;
        case WarpingFamily::PowerTail:
            lt.add(p_, 0.0, 1.0);
            break;
        case WarpingFamily::ExpTail:
            lt.add(a_, 1.0, 0.0);
            lt.add(q_, 0.0, 1.0);
            break;
        case WarpingFamily::Tabulated:
            lt.add(declared_tail_.rate, 1.0, 0.0);
            lt.add(declared_tail_.power, 0.0, 1.0);
            lt.add_loglog(declared_tail_.log_power);
            break;
    }
    return lt;
}

TailModel WarpingDescriptor::tail() const {
    if (domain_end_ < kInf)
        throw DomainError("tail: model is compact (b > 0), no asymptotic tail");
    switch (family_) {
        case WarpingFamily::SpaceForm:
            if (b_ == 0.0) return {1.0, 0.0, 1.0, 0.0};
            return {0.5 / std::sqrt(-b_), std::sqrt(-b_), 0.0, 0.0};
        case WarpingFamily::PowerTail:
            return {std::pow(r0_, 1.0 - p_), 0.0, p_, 0.0};
        case WarpingFamily::ExpTail:
            return {1.0, a_, q_, 0.0};
        case WarpingFamily::Tabulated:
            return declared_tail_;
    }
    return {};
}

bool WarpingDescriptor::same_descriptor(const WarpingDescriptor& other) const {
    if (family_ != other.family_) return false;
    switch (family_) {
        case WarpingFamily::SpaceForm: return b_ == other.b_;
        case WarpingFamily::PowerTail: return p_ == other.p_ && r0_ == other.r0_;
        case WarpingFamily::ExpTail: return a_ == other.a_ && q_ == other.q_;
        case WarpingFamily::Tabulated: return table_ == other.table_;
    }
    return false;
}

double eval_warping(const WarpingDescriptor& w, double r) { return w.value(r); }
double eta(const WarpingDescriptor& w, double r) { return w.eta(r); }

double radial_curvature(const WarpingDescriptor& w, double r) {
    return -w.second_derivative(r) / w.value(r);
}

double hessian_radial(const WarpingDescriptor& w, double r, double c) {
    if (std::fabs(c) > 1.0)
        throw DomainError("hessian_radial: |<grad r, X>| must be <= 1");
    return w.eta(r) * (1.0 - c * c);
}

double unit_sphere_volume(int m) {
    if (m < 2) throw DomainError("unit_sphere_volume: dimension must be >= 2");
    return 2.0 * std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m);
}

double sphere_volume(const ModelSpace& model, double r) {
    if (model.dimension < 2) throw DomainError("sphere_volume: dimension must be >= 2");
    double w = model.warping.value(r);
    return unit_sphere_volume(model.dimension) *
           std::pow(w, model.dimension - 1);
}

} // namespace parhyp
