#include <doctest.h>

#include <cmath>

#include "parhyp/table.hpp"

using namespace parhyp;

TEST_CASE("table rejects bad input") {
    CHECK_THROWS_AS(InterpTable({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}), DomainError);
    CHECK_THROWS_AS(InterpTable({1.0, 2.0, 2.0, 3.0}, {1.0, 2.0, 3.0, 4.0}), DomainError);
    CHECK_THROWS_AS(InterpTable({1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0}), DomainError);
}

TEST_CASE("cubic interpolation reproduces smooth data") {
    std::vector<double> x, y;
    for (int i = 0; i <= 400; ++i) {
        double xi = 0.5 + i * 0.01;
        x.push_back(xi);
        y.push_back(std::sin(xi));
    }
    InterpTable t(x, y);
    for (double q : {0.731, 1.5, 2.7183, 4.25}) {
        CHECK(t.eval(q) == doctest::Approx(std::sin(q)).epsilon(1e-8));
        CHECK(t.derivative(q) == doctest::Approx(std::cos(q)).epsilon(1e-6));
        CHECK(t.second_derivative(q) == doctest::Approx(-std::sin(q)).epsilon(1e-5));
    }
    CHECK_THROWS_AS(t.eval(0.1), DomainError);
    CHECK(t.interpolation_error_estimate() < 1e-8);
}

TEST_CASE("leave-one-out estimate flags coarse tables") {
    std::vector<double> x, y;
    for (int i = 0; i <= 8; ++i) {
        x.push_back(0.5 + i * 0.75);
        y.push_back(std::exp(x.back()));
    }
    InterpTable t(x, y);
    CHECK(t.interpolation_error_estimate() > 1e-4);
}
