#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "parhyp/errors.hpp"
#include "parhyp/table.hpp"
#include "parhyp/tails.hpp"

namespace parhyp {

enum class WarpingFamily { SpaceForm, PowerTail, ExpTail, Tabulated };

/// Warping function w of a rotationally symmetric model: w(0) = 0,
/// w'(0) = 1, w > 0 on the open domain. Four families are supported:
///
///   SpaceForm(b)      w = Q_b: sin(sqrt(b) r)/sqrt(b), r, sinh(sqrt(-b) r)/sqrt(-b)
///   PowerTail(p, r0)  w = r (1 + (r/r0)^2)^{(p-1)/2},   w ~ r0^{1-p} r^p
///   ExpTail(a, q)     w = r e^{a r} (1+r)^{q-1},        w ~ e^{a r} r^q
///   Tabulated         samples (r, w) with a declared asymptotic tail
///
/// For b > 0 the domain ends at the first zero pi/sqrt(b); all other
/// families live on (0, infinity). eta(r) = w'/w has a 1/r pole at the
/// center; only the quadrature layer integrates near it.
class WarpingDescriptor {
public:
    WarpingDescriptor() = default; // flat space form, w(r) = r

    static WarpingDescriptor space_form(double b);
    static WarpingDescriptor power_tail(double p, double transition_radius);
    static WarpingDescriptor exp_tail(double a, double correction_exponent);
    static WarpingDescriptor tabulated(std::vector<std::pair<double, double>> samples,
                                       TailModel declared_tail,
                                       double accuracy = 1e-8);

    WarpingFamily family() const { return family_; }
    bool closed_form() const { return family_ != WarpingFamily::Tabulated; }
    double domain_end() const { return domain_end_; }

    double value(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;
    double eta(double r) const; // w'/w
    /// log w(r), stable for large r (no overflow up to the tail model range).
    double log_value(double r) const;

    /// Asymptotic terms of log w as r -> infinity. DomainError for b > 0.
    LogTail log_tail() const;
    /// Leading asymptotic model of w itself.
    TailModel tail() const;

    // Parameter access (serialization, certificates).
    double param_b() const { return b_; }
    double param_p() const { return p_; }
    double param_r0() const { return r0_; }
    double param_a() const { return a_; }
    double param_q() const { return q_; }
    const InterpTable& table() const;
    const TailModel& declared_tail() const { return declared_tail_; }

    bool same_descriptor(const WarpingDescriptor& other) const;

private:
    void check_radius(double r) const;

    WarpingFamily family_ = WarpingFamily::SpaceForm;
    double domain_end_ = std::numeric_limits<double>::infinity();
    double b_ = 0.0;
    double p_ = 0.0, r0_ = 1.0;
    double a_ = 0.0, q_ = 0.0;
    std::shared_ptr<const InterpTable> table_;
    TailModel declared_tail_;
};

struct ModelSpace {
    int dimension = 2; // m >= 2
    WarpingDescriptor warping;
};

double eval_warping(const WarpingDescriptor& w, double r);
double eta(const WarpingDescriptor& w, double r);
double radial_curvature(const WarpingDescriptor& w, double r); // -w''/w
double hessian_radial(const WarpingDescriptor& w, double r, double c);

/// Volume of the unit (m-1)-sphere, 2 pi^{m/2} / Gamma(m/2).
double unit_sphere_volume(int m);
/// vol of the distance sphere of radius r: V_{m-1} w(r)^{m-1}.
double sphere_volume(const ModelSpace& model, double r);

} // namespace parhyp
