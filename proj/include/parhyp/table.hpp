#pragma once

#include <vector>

#include "parhyp/errors.hpp"

namespace parhyp {

/// Interpolation table over strictly increasing abscissae.
///
/// Values are evaluated by cubic (4-point) Lagrange interpolation and
/// differentiated by 4th-order central differences of the interpolant with
/// Richardson extrapolation. The finite-difference step never drops below
/// the local sample spacing, so derivative noise stays bounded by the
/// interpolation error divided by a full cell width.
class InterpTable {
public:
    InterpTable() = default;
    InterpTable(std::vector<double> x, std::vector<double> y);

    double front_x() const { return x_.front(); }
    double back_x() const { return x_.back(); }
    std::size_t size() const { return x_.size(); }
    const std::vector<double>& abscissae() const { return x_; }
    const std::vector<double>& ordinates() const { return y_; }

    // x must lie in [front_x, back_x].
    double eval(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    // Spacing of the cell containing x (clamped to the table range).
    double local_spacing(double x) const;

    // Largest leave-one-out interpolation error over interior nodes,
    // relative to scale max(|y_i|, floor).
    double interpolation_error_estimate(double scale_floor = 1.0) const;

private:
    std::size_t cell_index(double x) const;
    double eval_cubic(std::size_t i0, double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
};

} // namespace parhyp
