#include "parhyp/tails.hpp"

#include <algorithm>

namespace parhyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Growth order of r^alpha (log r)^beta: lexicographic on (alpha, beta).
bool grows_faster(const LogTail::Term& a, const LogTail::Term& b) {
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return a.beta > b.beta;
}

} // namespace

void LogTail::add(double coef, double alpha, double beta) {
    if (coef == 0.0) return;
    // Drop bounded terms: alpha < 0, or alpha == 0 with beta <= 0.
    if (alpha < 0.0 || (alpha == 0.0 && beta <= 0.0)) return;
    for (auto& t : terms_) {
        if (t.alpha == alpha && t.beta == beta) {
            t.coef += coef;
            if (t.coef == 0.0) {
                terms_.erase(terms_.begin() + (&t - terms_.data()));
            }
            return;
        }
    }
    terms_.push_back({coef, alpha, beta});
}

void LogTail::add(const LogTail& other, double scale) {
    for (const auto& t : other.terms_) add(scale * t.coef, t.alpha, t.beta);
    loglog_ += scale * other.loglog_;
}

LogTail LogTail::scaled(double s) const {
    LogTail out;
    out.add(*this, s);
    return out;
}

TailClass LogTail::to_tail_class() const {
    std::vector<Term> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), grows_faster);

    TailClass tc;
    std::size_t i = 0;

    // rate = lim log f / r
    if (i < sorted.size()) {
        const Term& t = sorted[i];
        if (t.alpha > 1.0 || (t.alpha == 1.0 && t.beta > 0.0)) {
            tc.exponential_rate = t.coef > 0 ? kInf : -kInf;
            tc.power_exponent = tc.exponential_rate;
            tc.log_exponent = tc.exponential_rate;
            return tc;
        }
        if (t.alpha == 1.0 && t.beta == 0.0) {
            tc.exponential_rate = t.coef;
            ++i;
        }
    }

    // power_exponent = lim (log f - rate r) / log r
    if (i < sorted.size()) {
        const Term& t = sorted[i];
        if (t.alpha > 0.0 || (t.alpha == 0.0 && t.beta > 1.0)) {
            tc.power_exponent = t.coef > 0 ? kInf : -kInf;
            tc.log_exponent = tc.power_exponent;
            return tc;
        }
        if (t.alpha == 0.0 && t.beta == 1.0) {
            tc.power_exponent = t.coef;
            ++i;
        }
    }

    // log_exponent = lim (...) / log log r
    if (i < sorted.size()) {
        const Term& t = sorted[i];
        // Remaining terms are (0, beta) with 0 < beta < 1: dominate log log r.
        tc.log_exponent = t.coef > 0 ? kInf : -kInf;
        return tc;
    }
    tc.log_exponent = loglog_;
    return tc;
}

bool LogTail::has_plain_leading_model() const {
    for (const auto& t : terms_) {
        bool plain = (t.alpha == 1.0 && t.beta == 0.0) || (t.alpha == 0.0 && t.beta == 1.0);
        if (!plain) return false;
    }
    return true;
}

TailModel LogTail::leading_model() const {
    TailModel m;
    m.coef = 1.0;
    for (const auto& t : terms_) {
        if (t.alpha == 1.0 && t.beta == 0.0) m.rate = t.coef;
        if (t.alpha == 0.0 && t.beta == 1.0) m.power = t.coef;
    }
    m.log_power = loglog_;
    return m;
}

} // namespace parhyp
