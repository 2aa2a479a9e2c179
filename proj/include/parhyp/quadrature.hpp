#pragma once

#include <functional>
#include <optional>

#include "parhyp/errors.hpp"
#include "parhyp/tails.hpp"

namespace parhyp {

/// Radial integrand. Integrable endpoint singularities must be declared; a
/// non-finite value anywhere else raises NonFiniteValueError.
struct Integrand {
    std::function<double(double)> f;
    bool singular_left = false;
    bool singular_right = false;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
    int panels = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) bisection on [a, b].
/// abs_error <= tol on success; SubdivisionLimitError otherwise.
QuadResult integrate(const Integrand& f, double a, double b, double tol,
                     int max_panels = 20000);

struct ImproperOptions {
    // Shape of the integrand tail, anchored at the running endpoint. Without
    // it the limit over r_k = a * 2^k is accelerated by Richardson
    // extrapolation of the geometric increments.
    std::optional<TailModel> tail;
    int max_doublings = 64;
};

/// Improper integral over [a, infinity) as a limit over a doubling sequence.
QuadResult integrate_to_infinity(const Integrand& f, double a, double tol,
                                 const ImproperOptions& opts = {});

/// Remainder of int_R^inf under the anchored tail model, +inf when the model
/// is divergent or the anchor is not yet in the asymptotic regime.
double modeled_tail_remainder(const TailModel& model, double R, double fR);

} // namespace parhyp
