#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracbvp/gamma.hpp"

using fracbvp::gamma_fn;

TEST_CASE("gamma at integer and half-integer points") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    // reference values at 17 significant digits
    CHECK(std::fabs(gamma_fn(0.5) - 1.7724538509055161) < 1e-13);
    CHECK(std::fabs(gamma_fn(1.5) - 0.88622692545275805) < 1e-13);
    CHECK(std::fabs(gamma_fn(2.5) - 1.329340388179137) < 1e-13);
    CHECK(std::fabs(gamma_fn(1.3) - 0.89747069630627718) < 1e-13);
    CHECK(std::fabs(gamma_fn(1.7) - 0.90863873285329044) < 1e-13);
}

TEST_CASE("gamma matches the library reference on [0.1, 10]") {
    // absolute tolerance scaled by the value once Gamma grows past 1
    for (int i = 0; i <= 9900; ++i) {
        const double x = 0.1 + i * 0.001;
        const double ref = std::tgamma(x);
        CHECK(std::fabs(gamma_fn(x) - ref) < 1e-12 * std::max(1.0, ref));
    }
}

TEST_CASE("gamma recurrence") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const double x = 0.1 + 8.0 * (rng() >> 11) * 0x1.0p-53;
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        CHECK(std::fabs(lhs - rhs) < 1e-12 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("gamma rejects non-positive arguments") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}
