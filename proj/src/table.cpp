#include "parhyp/table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace parhyp {

InterpTable::InterpTable(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size())
        throw DomainError("table: abscissa/ordinate length mismatch");
    if (x_.size() < 4)
        throw DomainError("table: need at least 4 samples");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        if (!(x_[i] < x_[i + 1]))
            throw DomainError("table: abscissae must be strictly increasing");
    }
    for (double v : y_) {
        if (!std::isfinite(v))
            throw DomainError("table: non-finite sample value");
    }
}

std::size_t InterpTable::cell_index(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double InterpTable::local_spacing(double x) const {
    std::size_t i = cell_index(x);
    return x_[i + 1] - x_[i];
}

double InterpTable::eval_cubic(std::size_t i0, double x) const {
    // Lagrange through nodes i0..i0+3.
    double result = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        double lj = 1.0;
        for (std::size_t k = 0; k < 4; ++k) {
            if (k == j) continue;
            lj *= (x - x_[i0 + k]) / (x_[i0 + j] - x_[i0 + k]);
        }
        result += lj * y_[i0 + j];
    }
    return result;
}

double InterpTable::eval(double x) const {
    if (x < x_.front() - 1e-12 * (1.0 + std::fabs(x_.front())) ||
        x > x_.back() + 1e-12 * (1.0 + std::fabs(x_.back())))
        throw DomainError("table: evaluation point " + std::to_string(x) +
                          " outside [" + std::to_string(x_.front()) + ", " +
                          std::to_string(x_.back()) + "]");
    std::size_t i = cell_index(x);
    std::size_t i0 = (i == 0) ? 0 : i - 1;
    i0 = std::min(i0, x_.size() - 4);
    return eval_cubic(i0, x);
}

double InterpTable::derivative(double x) const {
    double h = 8.0 * local_spacing(x);
    // Keep the full 4h stencil inside the table.
    double span = back_x() - front_x();
    h = std::min(h, span / 8.0);
    double lo = front_x(), hi = back_x();
    double c = std::clamp(x, lo + 2.0 * h, hi - 2.0 * h);

    auto d4 = [&](double step) {
        return (eval(c - 2.0 * step) - 8.0 * eval(c - step) +
                8.0 * eval(c + step) - eval(c + 2.0 * step)) /
               (12.0 * step);
    };
    double dh = d4(h);
    double dh2 = d4(0.5 * h);
    double d = (16.0 * dh2 - dh) / 15.0;
    if (c != x) {
        // Shifted stencil near an edge: first-order correction via the
        // second derivative at the shifted center.
        auto s4 = [&](double step) {
            return (-eval(c - 2.0 * step) + 16.0 * eval(c - step) - 30.0 * eval(c) +
                    16.0 * eval(c + step) - eval(c + 2.0 * step)) /
                   (12.0 * step * step);
        };
        d += (x - c) * s4(h);
    }
    return d;
}

double InterpTable::second_derivative(double x) const {
    double h = 8.0 * local_spacing(x);
    double span = back_x() - front_x();
    h = std::min(h, span / 8.0);
    double lo = front_x(), hi = back_x();
    double c = std::clamp(x, lo + 2.0 * h, hi - 2.0 * h);

    auto s4 = [&](double step) {
        return (-eval(c - 2.0 * step) + 16.0 * eval(c - step) - 30.0 * eval(c) +
                16.0 * eval(c + step) - eval(c + 2.0 * step)) /
               (12.0 * step * step);
    };
    double sh = s4(h);
    double sh2 = s4(0.5 * h);
    return (16.0 * sh2 - sh) / 15.0;
}

double InterpTable::interpolation_error_estimate(double scale_floor) const {
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < x_.size(); ++i) {
        // Cubic through the 4 neighbors of node i, excluding node i itself.
        double xi = x_[i];
        double num[4] = {x_[i - 2], x_[i - 1], x_[i + 1], x_[i + 2]};
        double val[4] = {y_[i - 2], y_[i - 1], y_[i + 1], y_[i + 2]};
        double pred = 0.0;
        for (int j = 0; j < 4; ++j) {
            double lj = 1.0;
            for (int k = 0; k < 4; ++k) {
                if (k == j) continue;
                lj *= (xi - num[k]) / (num[j] - num[k]);
            }
            pred += lj * val[j];
        }
        double scale = std::max(std::fabs(y_[i]), scale_floor);
        worst = std::max(worst, std::fabs(pred - y_[i]) / scale);
    }
    return worst;
}

} // namespace parhyp
