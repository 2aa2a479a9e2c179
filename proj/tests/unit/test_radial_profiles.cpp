#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "parhyp/profiles.hpp"

using namespace parhyp;

TEST_CASE("balance sign classes on closed families") {
    auto flat = WarpingDescriptor::space_form(0.0);
    BalanceReport rep = balance(2, flat, RadialProfile::zero());
    CHECK(rep.cls == SignClass::NonNegative);
    CHECK(rep.grade == CertGrade::Exact);
    CHECK(rep(1.0) == doctest::Approx(2.0));
    CHECK(rep(4.0) == doctest::Approx(0.5)); // M(r) = 2/r

    // h = eta of the same model: identically zero, the Cor. 3 hypothesis.
    std::vector<std::pair<double, double>> samples;
    for (double r = 1e-3; r <= 50.0; r += 1e-3) samples.emplace_back(r, std::sinh(r));
    auto sinh_tab = WarpingDescriptor::tabulated(samples, TailModel{0.5, 1.0, 0.0, 0.0});
    for (const auto& w : {flat, WarpingDescriptor::space_form(-1.0),
                          WarpingDescriptor::power_tail(2.0, 1.0),
                          WarpingDescriptor::exp_tail(0.5, 1.0), sinh_tab}) {
        BalanceReport z = balance(3, w, RadialProfile::eta_of_model(w));
        CHECK(z.cls == SignClass::IdenticallyZero);
        CHECK(z.grade == CertGrade::Exact);
    }
}

TEST_CASE("balance for constant bounds in the hyperbolic model") {
    auto hyp = WarpingDescriptor::space_form(-1.0);
    // coth r > 1: the minimum of coth(r) - 0.4 over (0, 100] stays positive.
    double min_gap = 1e300;
    for (int i = 0; i <= 10000; ++i) {
        double r = std::exp(std::log(1e-3) + (std::log(100.0) - std::log(1e-3)) * i / 10000.0);
        min_gap = std::min(min_gap, 1.0 / std::tanh(r) - 0.4);
    }
    CHECK(min_gap > 0.0);

    BalanceReport rep = balance(2, hyp, RadialProfile::constant(0.4, ProfileRole::HBound));
    CHECK(rep.cls == SignClass::NonNegative);

    // NonNegative iff H <= 1.
    CHECK(balance(2, hyp, RadialProfile::constant(1.0, ProfileRole::HBound)).cls ==
          SignClass::NonNegative);
    BalanceReport ind = balance(2, hyp, RadialProfile::constant(1.2, ProfileRole::HBound));
    CHECK(ind.cls == SignClass::Indefinite);
    CHECK(ind.witness.has_value());

    // h >= eta everywhere: non-positive balance.
    BalanceReport np = balance(2, WarpingDescriptor::space_form(0.0),
                               RadialProfile::eta_of_model(hyp));
    CHECK(np.cls == SignClass::NonPositive);
}

TEST_CASE("cone profiles against the mesh oracle") {
    for (double angle : {0.5235987755982988, 0.7853981633974483, 1.0471975511965976}) {
        auto [h, g] = cone_profile(angle);
        CHECK(h.kind() == ProfileKind::Zero);
        CHECK(g.kind() == ProfileKind::Constant);
        CHECK(g.value(3.0) == 1.0);

        // Sampled cone surface: f(s) = s / tan(angle).
        double c = 1.0 / std::tan(angle);
        for (double s : {0.5, 1.7, 6.0}) {
            auto pt = oracles::revolution_point([c](double x) { return c * x; }, s);
            CHECK(pt.tangency == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::fabs(pt.convexity) < 1e-9);
        }
    }
    CHECK_THROWS_AS(cone_profile(2.0), DomainError);
}

TEST_CASE("paraboloid profiles against the mesh oracle") {
    double a = 1.0;
    for (double s : {0.3, 1.0, 3.3, 10.0}) {
        auto pt = oracles::revolution_point([a](double x) { return a * x * x; }, s);
        CHECK(paraboloid_extrinsic_distance(a, s) == doctest::Approx(pt.r).epsilon(1e-8));
        CHECK(paraboloid_convexity(a, s) == doctest::Approx(pt.convexity).epsilon(1e-5));
        CHECK(paraboloid_tangency(a, s) == doctest::Approx(pt.tangency).epsilon(1e-6));
    }

    auto [h, g] = paraboloid_profile(a);
    // h >= 0 with h -> 0 at both ends, g -> 1 at both ends.
    CHECK(h.value(h.min_radius()) > 0.0);
    CHECK(h.value(h.min_radius()) < 1e-3);
    CHECK(h.value(1e5) > 0.0);
    CHECK(h.value(1e5) < 1e-3);
    CHECK(h.value(1e5) == doctest::Approx(0.25 / 1e5).epsilon(0.05));
    CHECK(g.value(g.min_radius()) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(g.value(1e5) == doctest::Approx(1.0).epsilon(1e-4));

    // Closed-form values flow through the table.
    for (double s : {0.7, 2.0, 14.0}) {
        double r = paraboloid_extrinsic_distance(a, s);
        CHECK(h.value(r) == doctest::Approx(paraboloid_convexity(a, s)).epsilon(1e-6));
        CHECK(g.value(r) == doctest::Approx(paraboloid_tangency(a, s)).epsilon(1e-6));
    }
}

TEST_CASE("tangency bounds stay in (0, 1]") {
    auto [h_cone, g_cone] = cone_profile(0.7853981633974483);
    auto [h_par, g_par] = paraboloid_profile(0.5);
    (void)h_cone;
    (void)h_par;
    oracles::Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        double r = std::exp(rng.uniform(std::log(2e-3), std::log(1e6)));
        double vc = g_cone.value(r);
        CHECK(vc > 0.0);
        CHECK(vc <= 1.0);
        if (r >= g_par.min_radius()) {
            double vp = g_par.value(r);
            CHECK(vp > 0.0);
            CHECK(vp <= 1.0);
        }
    }
    CHECK_THROWS_AS(RadialProfile::constant(1.5, ProfileRole::GBound), DomainError);
    CHECK_THROWS_AS(RadialProfile::constant(0.0, ProfileRole::GBound), DomainError);
}

TEST_CASE("cone profile through the balance pipeline") {
    auto [h, g] = cone_profile(0.7853981633974483);
    (void)g;
    auto flat = WarpingDescriptor::space_form(0.0);
    BalanceReport rep = balance(2, flat, h);
    CHECK(rep.cls == SignClass::NonNegative);
    for (double r : {0.5, 1.0, 7.0})
        CHECK(rep(r) == doctest::Approx(2.0 * flat.eta(r)));
}

TEST_CASE("paraboloid balance is nonnegative (empirical grade)") {
    auto [h, g] = paraboloid_profile(1.0);
    (void)g;
    auto flat = WarpingDescriptor::space_form(0.0);
    BalanceReport rep = balance(2, flat, h);
    CHECK(rep.cls == SignClass::NonNegative);
    CHECK(rep.grade == CertGrade::Empirical);
}

TEST_CASE("profile errors") {
    auto [h, g] = paraboloid_profile(1.0);
    (void)g;
    CHECK_THROWS_AS(h.value(1e-7), DomainError); // below the table range
    auto hyp = WarpingDescriptor::space_form(-1.0);
    CHECK_THROWS_AS(balance(1, hyp, RadialProfile::zero()), DomainError);
}
