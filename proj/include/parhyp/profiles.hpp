#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "parhyp/table.hpp"
#include "parhyp/tails.hpp"
#include "parhyp/warping.hpp"

namespace parhyp {

enum class ProfileKind { Zero, Constant, EtaOfModel, PowerLaw, Tabulated };

/// HBound profiles bound the o-radial mean convexity C(x) = -<grad r, H_S>.
/// GBound profiles bound the radial tangency T(x) = |grad^S r| from below
/// and must take values in (0, 1]: the tangency is the norm of a projected
/// unit vector, so anything above 1 is rejected as user error.
enum class ProfileRole { HBound, GBound };

class RadialProfile {
public:
    RadialProfile() = default; // the zero HBound profile

    static RadialProfile zero();
    static RadialProfile constant(double v, ProfileRole role);
    static RadialProfile eta_of_model(const WarpingDescriptor& w);
    static RadialProfile power_law(double coefficient, double exponent);
    static RadialProfile tabulated(std::vector<std::pair<double, double>> samples,
                                   TailModel tail, ProfileRole role,
                                   double accuracy = 1e-6);

    ProfileKind kind() const { return kind_; }
    ProfileRole role() const { return role_; }
    bool closed_form() const { return kind_ != ProfileKind::Tabulated; }

    double value(double r) const;
    /// Smallest radius the profile is defined at (table front for tabulated,
    /// 0 otherwise; closed kinds evaluate for any r > 0).
    double min_radius() const;

    /// Antiderivative H with H' = value, defined for closed kinds.
    bool has_closed_antiderivative() const;
    double antiderivative(double r) const;
    /// Asymptotic terms of the antiderivative (for the exact weight tails).
    LogTail antiderivative_tail() const;

    TailModel tail() const;

    double param_value() const { return value_; }
    double param_coefficient() const { return coef_; }
    double param_exponent() const { return exponent_; }
    const WarpingDescriptor& model() const;
    const InterpTable& table() const;
    const TailModel& declared_tail() const { return tail_; }

private:
    ProfileKind kind_ = ProfileKind::Zero;
    ProfileRole role_ = ProfileRole::HBound;
    double value_ = 0.0;
    double coef_ = 0.0, exponent_ = 0.0;
    std::shared_ptr<const WarpingDescriptor> model_;
    std::shared_ptr<const InterpTable> table_;
    TailModel tail_{0.0, 0.0, 0.0, 0.0};
};

enum class SignClass { NonNegative, NonPositive, IdenticallyZero, Indefinite };
enum class CertGrade { Exact, Empirical };

/// Sign report for the balance function M(r) = m (eta_w(r) - h(r)).
struct BalanceReport {
    int m = 2;
    WarpingDescriptor w;
    RadialProfile h;
    SignClass cls = SignClass::Indefinite;
    CertGrade grade = CertGrade::Empirical;
    std::optional<double> witness; // radius of a detected sign violation

    double operator()(double r) const { return m * (w.eta(r) - h.value(r)); }
};

struct BalanceOptions {
    double scan_lo = 1e-3;
    double scan_hi = 1e3;
    int scan_samples = 10000;
    // far probes checking the tail sign beyond the scan window
    std::vector<double> far_radii = {1e4, 1e5, 1e6};
};

BalanceReport balance(int m, const WarpingDescriptor& w, const RadialProfile& h,
                      const BalanceOptions& opts = {});

/// Cone of revolution with vertex at the pole: the position vector is
/// tangent to the cone, so T = 1 and C = 0 identically.
std::pair<RadialProfile, RadialProfile> cone_profile(double half_angle);

/// Paraboloid of revolution z = a s^2 with the pole at the vertex. Returns
/// tabulated (h, g) computed in closed form along the profile curve and
/// parameterized by extrinsic distance.
std::pair<RadialProfile, RadialProfile> paraboloid_profile(double a);

/// Closed forms behind the paraboloid tables, exposed for verification:
/// s is the distance to the axis of revolution.
double paraboloid_extrinsic_distance(double a, double s);
double paraboloid_convexity(double a, double s);
double paraboloid_tangency(double a, double s);

} // namespace parhyp
