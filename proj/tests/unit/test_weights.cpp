#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "parhyp/weights.hpp"

using namespace parhyp;

namespace {

DriftWeight make_weight(int m, const WarpingDescriptor& w, const RadialProfile& h,
                        std::optional<RadialProfile> g, double rho) {
    return DriftWeight(balance(m, w, h), std::move(g), rho);
}

} // namespace

TEST_CASE("plane and R^3 weights in closed form") {
    auto flat = WarpingDescriptor::space_form(0.0);
    BalanceReport m2 = balance(2, flat, RadialProfile::zero());
    BalanceReport m3 = balance(3, flat, RadialProfile::zero());
    for (double r : {1.0, 2.0, 5.0, 40.0}) {
        CHECK(lambda_plain(m2, 1.0, r) == doctest::Approx(1.0 / r).epsilon(1e-12));
        CHECK(lambda_plain(m3, 1.0, r) == doctest::Approx(1.0 / (r * r)).epsilon(1e-12));
    }
}

TEST_CASE("hyperbolic CMC weight matches its closed form") {
    auto hyp = WarpingDescriptor::space_form(-1.0);
    BalanceReport M = balance(2, hyp, RadialProfile::constant(0.4, ProfileRole::HBound));
    // Lambda(r) = sinh(r) (sinh 1 / sinh r)^2 e^{0.8 (r-1)}
    double expect = std::sinh(5.0) * std::pow(std::sinh(1.0) / std::sinh(5.0), 2.0) *
                    std::exp(0.8 * 4.0);
    CHECK(lambda_plain(M, 1.0, 5.0) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("Lambda at rho is exactly w(rho)") {
    auto ws = {WarpingDescriptor::space_form(-1.0), WarpingDescriptor::space_form(0.0),
               WarpingDescriptor::power_tail(1.7, 0.8), WarpingDescriptor::exp_tail(0.3, 1.0)};
    for (const auto& w : ws) {
        for (double rho : {0.5, 1.0, 2.5}) {
            BalanceReport M = balance(2, w, RadialProfile::constant(0.2, ProfileRole::HBound));
            CHECK(lambda_plain(M, rho, rho) == doctest::Approx(w.value(rho)).epsilon(1e-14));
        }
    }
}

TEST_CASE("tangency weight with g = 1 equals the plain weight") {
    auto hyp = WarpingDescriptor::space_form(-1.0);
    BalanceReport M = balance(2, hyp, RadialProfile::constant(0.4, ProfileRole::HBound));
    auto g1 = RadialProfile::constant(1.0, ProfileRole::GBound);
    for (double r : {1.0, 1.7, 3.0, 8.0})
        CHECK(lambda_tangency(M, g1, 1.0, r) == lambda_plain(M, 1.0, r));
}

TEST_CASE("constant tangency rescales the drift exponent") {
    auto flat = WarpingDescriptor::space_form(0.0);
    BalanceReport M = balance(2, flat, RadialProfile::zero());
    auto g1 = RadialProfile::constant(1.0, ProfileRole::GBound);
    CHECK(lambda_tangency(M, g1, 1.0, 4.0) == doctest::Approx(0.25).epsilon(1e-12));

    auto g = RadialProfile::constant(1.0 / std::sqrt(2.0), ProfileRole::GBound);
    // M/g^2 = 4/t: Lambda_g = r e^{-4 ln r} = r^{-3}
    CHECK(lambda_tangency(M, g, 1.0, 2.0) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(lambda_tangency(M, g, 1.0, 3.0) == doctest::Approx(1.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("log-domain evaluation survives extreme ranges") {
    auto hyp = WarpingDescriptor::space_form(-1.0);
    // |M| <= 1e3 via h = -499: M = 2(coth r + 499) ~ 1000.
    BalanceReport M = balance(2, hyp, RadialProfile::constant(-499.0, ProfileRole::HBound));
    DriftWeight w(M, std::nullopt, 1.0);
    double lv = w.log_value(1e6);
    CHECK(std::isfinite(lv));
    CHECK(lv < -1e8); // decays staggeringly fast, in the log domain only
    CHECK(w.value(1e6) == 0.0);
}

TEST_CASE("numeric inner integral agrees with the exact path") {
    auto flat = WarpingDescriptor::space_form(0.0);
    // Tabulated copy of h(r) = 0.3/r forces the numeric path.
    std::vector<std::pair<double, double>> samples;
    for (double r = 0.01; r <= 2000.0; r *= 1.01)
        samples.emplace_back(r, 0.3 / r);
    auto h_tab = RadialProfile::tabulated(samples, TailModel{0.3, 0.0, -1.0, 0.0},
                                          ProfileRole::HBound);
    auto h_exact = RadialProfile::power_law(0.3, -1.0);

    DriftWeight numeric(balance(2, flat, h_tab), std::nullopt, 1.0);
    DriftWeight exact(balance(2, flat, h_exact), std::nullopt, 1.0);
    CHECK(!numeric.exact_path());
    CHECK(exact.exact_path());
    for (double r : {1.0, 1.3, 4.0, 55.0, 900.0})
        CHECK(numeric.log_value(r) == doctest::Approx(exact.log_value(r)).epsilon(1e-8));
}

TEST_CASE("weight ordering against the plain weight") {
    oracles::Rng rng(23);
    for (int cfg = 0; cfg < 12; ++cfg) {
        double b = rng.uniform(-1.5, 0.0);
        auto w = WarpingDescriptor::space_form(b);
        double rho = rng.uniform(0.4, 1.5);
        auto g = RadialProfile::constant(rng.uniform(0.3, 1.0), ProfileRole::GBound);

        // M >= 0 on [rho, inf): h below the decreasing eta tail.
        double eta_inf = b < 0 ? std::sqrt(-b) : 0.0;
        auto h_low = RadialProfile::constant(std::min(eta_inf, w.eta(rho)) * 0.8,
                                             ProfileRole::HBound);
        BalanceReport M_pos = balance(2, w, h_low);
        DriftWeight plain_pos(M_pos, std::nullopt, rho);
        DriftWeight tang_pos(M_pos, g, rho);

        // M <= 0 on (0, inf): h = eta of a faster-growing model.
        auto h_high = RadialProfile::eta_of_model(WarpingDescriptor::space_form(b - 1.0));
        BalanceReport M_neg = balance(2, w, h_high);
        DriftWeight plain_neg(M_neg, std::nullopt, rho);
        DriftWeight tang_neg(M_neg, g, rho);

        for (int i = 0; i < 40; ++i) {
            double r = rho * std::exp(rng.uniform(0.0, 5.0));
            CHECK(tang_pos.log_value(r) <= plain_pos.log_value(r) + 1e-9);
            CHECK(tang_neg.log_value(r) >= plain_neg.log_value(r) - 1e-9);
        }
    }
}

TEST_CASE("improper classification: exact path") {
    auto flat = WarpingDescriptor::space_form(0.0);

    // Plane, intrinsic: Lambda = 1/r diverges with power -1.
    auto plane = std::make_shared<DriftWeight>(balance(2, flat, RadialProfile::zero()),
                                               std::nullopt, 1.0);
    IntegralVerdict v = classify_improper(as_weight(plane, "lambda"));
    CHECK(v.outcome == IntegralOutcome::Divergent);
    CHECK(v.tail->power_exponent == doctest::Approx(-1.0));
    CHECK(v.tail->exponential_rate == doctest::Approx(0.0));
    CHECK(v.lower_bound_on_partial > 0.0);

    // R^3 intrinsic: Lambda = 1/r^2, integral 1 from rho = 1.
    auto r3 = std::make_shared<DriftWeight>(balance(3, flat, RadialProfile::zero()),
                                            std::nullopt, 1.0);
    v = classify_improper(as_weight(r3, "lambda"));
    CHECK(v.outcome == IntegralOutcome::Finite);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(v.abs_error <= 1e-10);

    // H^3 CMC with H = 0.4: tail rate 2*0.4 - 1 = -0.2 < 0.
    auto hyp = WarpingDescriptor::space_form(-1.0);
    auto cmc = std::make_shared<DriftWeight>(
        balance(2, hyp, RadialProfile::constant(0.4, ProfileRole::HBound)), std::nullopt,
        1.0);
    v = classify_improper(as_weight(cmc, "lambda"));
    CHECK(v.outcome == IntegralOutcome::Finite);
    CHECK(v.tail->exponential_rate == doctest::Approx(-0.2).epsilon(1e-12));
    // Confirm numerically: integrate to r = 200 and bound the remainder.
    double partial = oracles::simpson(
        [&](double t) { return cmc->value(t); }, 1.0, 200.0, 200000);
    CHECK(v.value == doctest::Approx(partial).epsilon(1e-8));

    // H = 0.5 exactly: the weight tends to a positive constant.
    auto border = std::make_shared<DriftWeight>(
        balance(2, hyp, RadialProfile::constant(0.5, ProfileRole::HBound)), std::nullopt,
        1.0);
    v = classify_improper(as_weight(border, "lambda"));
    CHECK(v.outcome == IntegralOutcome::Divergent);
    CHECK(v.tail->exponential_rate == doctest::Approx(0.0));
    CHECK(v.tail->power_exponent == doctest::Approx(0.0));
}

TEST_CASE("improper classification: flat models by dimension") {
    auto flat = WarpingDescriptor::space_form(0.0);
    for (int m = 2; m <= 4; ++m) {
        auto w = std::make_shared<DriftWeight>(balance(m, flat, RadialProfile::zero()),
                                               std::nullopt, 1.0);
        IntegralVerdict v = classify_improper(as_weight(w, "lambda"));
        if (m == 2)
            CHECK(v.outcome == IntegralOutcome::Divergent);
        else
            CHECK(v.outcome == IntegralOutcome::Finite);
    }
}

TEST_CASE("improper classification: fitted path") {
    auto flat = WarpingDescriptor::space_form(0.0);

    // Tabulated h ~ 0.3/r: Lambda ~ r^{-1+0.6} = r^{-0.4}, clearly divergent.
    std::vector<std::pair<double, double>> samples;
    for (double r = 0.01; r <= 2e4; r *= 1.01)
        samples.emplace_back(r, 0.3 / r);
    auto h_tab = RadialProfile::tabulated(samples, TailModel{0.3, 0.0, -1.0, 0.0},
                                          ProfileRole::HBound);
    auto w = std::make_shared<DriftWeight>(balance(2, flat, h_tab), std::nullopt, 1.0);
    IntegralVerdict v = classify_improper(as_weight(w, "lambda"));
    CHECK(v.outcome == IntegralOutcome::Divergent);
    CHECK(v.tail->certainty == TailCertainty::Fitted);
    CHECK(v.tail->power_exponent == doctest::Approx(-0.4).epsilon(0.02));

    // Boundary case: fitted exponent within the refusal band around -1.
    std::vector<std::pair<double, double>> tiny;
    for (double r = 0.01; r <= 2e4; r *= 1.01)
        tiny.emplace_back(r, 0.025 / r);
    auto h_tiny = RadialProfile::tabulated(tiny, TailModel{0.025, 0.0, -1.0, 0.0},
                                           ProfileRole::HBound);
    auto wb = std::make_shared<DriftWeight>(balance(2, flat, h_tiny), std::nullopt, 1.0);
    v = classify_improper(as_weight(wb, "lambda"));
    CHECK(v.outcome == IntegralOutcome::Inconclusive);
    CHECK(!v.reason.empty());
}
