#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace parhyp {

/// Leading-order asymptotic model of a positive radial function,
///   f(r) ~ coef * exp(rate * r) * r^power * (log r)^log_power
/// as r -> infinity. coef == 0 encodes "identically zero tail".
struct TailModel {
    double coef = 1.0;
    double rate = 0.0;
    double power = 0.0;
    double log_power = 0.0;

    // Extrapolation anchored at (r0, f0): keeps continuity with the data
    // and uses the model only for the shape of the tail.
    double anchored_value(double r, double r0, double f0) const {
        double lf = anchored_log_value(r, r0, std::log(f0));
        return std::exp(lf);
    }
    double anchored_log_value(double r, double r0, double log_f0) const {
        double v = log_f0 + rate * (r - r0) + power * (std::log(r) - std::log(r0));
        if (log_power != 0.0)
            v += log_power * (std::log(std::log(r)) - std::log(std::log(r0)));
        return v;
    }
    // d/dr log f under the model.
    double log_derivative(double r) const {
        double d = rate + power / r;
        if (log_power != 0.0) d += log_power / (r * std::log(r));
        return d;
    }
};

enum class TailCertainty { Exact, Fitted };

/// Decision fields for the improper-integral verdict, with the lexicographic
/// rule: rate < 0 convergent; rate > 0 divergent; rate = 0 decided by
/// power_exponent against -1; power_exponent = -1 decided by
/// log_exponent < -1. Fields may be +/-infinity: they are limits of
/// log f / r, (log f - rate r)/log r, ... which is what the rule needs.
struct TailClass {
    double exponential_rate = 0.0;
    double power_exponent = 0.0;
    double log_exponent = 0.0;
    TailCertainty certainty = TailCertainty::Exact;
    double fit_residual = 0.0;

    enum class Induced { Convergent, Divergent };
    Induced induced_verdict() const {
        if (exponential_rate < 0.0) return Induced::Convergent;
        if (exponential_rate > 0.0) return Induced::Divergent;
        if (power_exponent < -1.0) return Induced::Convergent;
        if (power_exponent > -1.0) return Induced::Divergent;
        return log_exponent < -1.0 ? Induced::Convergent : Induced::Divergent;
    }
};

/// Asymptotic expansion of log f(r): sum of terms c * r^alpha * (log r)^beta
/// with (alpha, beta) lexicographically positive, plus an optional
/// c * log(log r) term. Bounded contributions are dropped at insertion;
/// they never change an improper-integral verdict.
class LogTail {
public:
    struct Term {
        double coef;
        double alpha; // exponent of r
        double beta;  // exponent of log r
    };

    void add(double coef, double alpha, double beta);
    void add_loglog(double coef) { loglog_ += coef; }
    void add(const LogTail& other, double scale = 1.0);

    LogTail scaled(double s) const;
    const std::vector<Term>& terms() const { return terms_; }
    double loglog_coef() const { return loglog_; }

    /// Collapse the expansion to the three decision limits.
    TailClass to_tail_class() const;

    /// Leading-order TailModel of f itself (exp of this expansion), suitable
    /// for anchored extrapolation. Only meaningful when no super-linear or
    /// fractional-power terms survive.
    TailModel leading_model() const;
    bool has_plain_leading_model() const;

private:
    std::vector<Term> terms_; // kept merged, unordered
    double loglog_ = 0.0;
};

} // namespace parhyp
