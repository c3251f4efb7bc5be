#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracbvp/fraccalc.hpp"
#include "fracbvp/gamma.hpp"
#include "fracbvp/kernels.hpp"
#include "test_util.hpp"

using namespace fracbvp;

TEST_CASE("green_H point values") {
    CHECK(green_H(0.0, 0.0) == 2.0);
    CHECK(green_H(0.5, 0.25) == doctest::Approx(1.125).epsilon(1e-15));
    for (int j = 0; j <= 8; ++j) {
        const double s = j / 8.0;
        CHECK(green_H(1.0, s) == doctest::Approx(1.0 - s).epsilon(1e-15));
    }
}

TEST_CASE("green_G point values and structure") {
    const FracOrder alpha(2.5);
    SUBCASE("s = 1 column vanishes") {
        for (int i = 0; i <= 16; ++i)
            CHECK(green_G(i / 16.0, 1.0, alpha) == 0.0);
    }
    SUBCASE("frozen spot values") {
        CHECK(std::fabs(green_G(1.0, 0.5, alpha) - 0.26596152026762176) < 1e-13);
        CHECK(std::fabs(green_G(0.0, 0.0, alpha) - 1.8806319451591875) < 1e-13);
    }
    SUBCASE("branches agree on the diagonal") {
        const double a = alpha.value();
        for (int i = 0; i <= 32; ++i) {
            const double t = i / 32.0;
            const double shared = (1.0 - t) * std::pow(1.0 - t, a - 1.0) / gamma_fn(a) +
                                  (1.0 - t) * std::pow(1.0 - t, a - 2.0) / gamma_fn(a - 1.0);
            const double left = std::pow(0.0, a - 1.0) / gamma_fn(a) + shared;
            const double right = shared;
            CHECK(left == right);
            CHECK(green_G(t, t, alpha) == doctest::Approx(right).epsilon(1e-14));
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(green_G(1.2, 0.5, alpha), std::domain_error);
        CHECK_THROWS_AS(green_G(0.5, -0.1, alpha), std::domain_error);
        CHECK_THROWS_AS(green_G(0.5, 0.5, FracOrder(1.5)), std::domain_error);
    }
}

TEST_CASE("green_G_gamma point values") {
    const FracOrder alpha(2.5), gamma(0.5);
    SUBCASE("s = 1 column vanishes") {
        for (int i = 0; i <= 16; ++i)
            CHECK(green_G_gamma(i / 16.0, 1.0, alpha, gamma) == 0.0);
    }
    SUBCASE("frozen spot values (verified against the Caputo oracle below)") {
        CHECK(std::fabs(green_G_gamma(1.0, 0.0, alpha, gamma) - (-1.1220659078919377)) < 1e-13);
        CHECK(std::fabs(green_G_gamma(0.5, 0.75, alpha, gamma) - (-0.52518451775831188)) < 1e-13);
    }
    SUBCASE("continuous down to t = 0") {
        CHECK(green_G_gamma(0.0, 0.5, alpha, gamma) == 0.0);
    }
}

TEST_CASE("green_H_gamma point values") {
    SUBCASE("order one gives the ordinary derivative") {
        const FracOrder one(1.0);
        for (int i = 0; i <= 8; ++i) {
            for (int j = 0; j <= 8; ++j) {
                const double t = i / 8.0, s = j / 8.0;
                const double expected = (s <= t ? 1.0 : 0.0) - (2.0 - s);
                CHECK(green_H_gamma(t, s, one) == doctest::Approx(expected).epsilon(1e-14));
            }
        }
    }
    SUBCASE("frozen spot values (verified against the Caputo oracle below)") {
        CHECK(std::fabs(green_H_gamma(0.5, 0.75, FracOrder(0.5)) - (-0.99735570100358173)) < 1e-13);
        CHECK(std::fabs(green_H_gamma(1.0, 1.0, FracOrder(0.5)) - (-1.1283791670955126)) < 1e-13);
    }
}

TEST_CASE("closed-form kernel derivatives match the Caputo scheme") {
    // oracle: sample t -> G(t,s) at fixed s, differentiate with the L1
    // scheme, compare with the closed form on the whole column
    UniformGrid grid(512);
    for (auto [av, gv] : {std::pair{2.5, 0.5}, std::pair{2.7, 0.7}}) {
        const FracOrder alpha(av), gamma(gv);
        for (double s : {0.0, 0.25, 0.5, 0.75}) {
            SampledFn column =
                SampledFn::sample(grid, [&](double t) { return green_G(t, s, alpha); });
            SampledFn numeric = caputo_deriv(column, gamma);
            double err = 0.0;
            for (int i = 0; i <= grid.intervals(); ++i)
                err = std::max(err, std::fabs(numeric.at(i) -
                                              green_G_gamma(grid.node(i), s, alpha, gamma)));
            CAPTURE(av);
            CAPTURE(s);
            CHECK(err < 2e-3);
        }
    }
    // H is piecewise linear in t with the kink on a node, so the L1 scheme
    // reproduces its derivative exactly
    for (double s : {0.0, 0.5, 1.0}) {
        const FracOrder gamma(0.5);
        SampledFn column = SampledFn::sample(grid, [&](double t) { return green_H(t, s); });
        SampledFn numeric = caputo_deriv(column, gamma);
        double err = 0.0;
        for (int i = 0; i <= grid.intervals(); ++i)
            err = std::max(err,
                           std::fabs(numeric.at(i) - green_H_gamma(grid.node(i), s, gamma)));
        CHECK(err < 1e-12);
    }
}

TEST_CASE("tabulate and kernel_max") {
    UniformGrid grid(64);
    const FracOrder alpha(2.5), gamma(0.5);

    SUBCASE("spot entries match the scalar operations exactly") {
        KernelTable tg = tabulate(KernelKind::G, grid, alpha);
        KernelTable th = tabulate(KernelKind::H, grid);
        KernelTable tgg = tabulate(KernelKind::Ggamma, grid, alpha, gamma);
        for (int i : {0, 7, 32, 64}) {
            for (int j : {0, 5, 33, 64}) {
                const double t = grid.node(i), s = grid.node(j);
                CHECK(tg.at(i, j) == green_G(t, s, alpha));
                CHECK(th.at(i, j) == green_H(t, s));
                CHECK(tgg.at(i, j) == green_G_gamma(t, s, alpha, gamma));
            }
        }
    }
    SUBCASE("G table's s = 1 column is zero") {
        KernelTable tg = tabulate(KernelKind::G, grid, alpha);
        for (int i = 0; i <= 64; ++i) CHECK(tg.at(i, 64) == 0.0);
    }
    SUBCASE("the H maximum is 2, attained at the origin") {
        KernelTable th = tabulate(KernelKind::H, grid);
        CHECK(kernel_max(th) == 2.0);
        CHECK(th.at(0, 0) == 2.0);
    }
    SUBCASE("grid max of |Ggamma| stays below the analytic cap") {
        KernelTable t = tabulate(KernelKind::Ggamma, UniformGrid(256), alpha, gamma);
        CHECK(kernel_max(t) <= bound_G_gamma(alpha, gamma));
        CHECK(kernel_max(t) == doctest::Approx(1.122066).epsilon(1e-3));
    }
    SUBCASE("missing orders are rejected") {
        CHECK_THROWS_AS(tabulate(KernelKind::G, grid), std::invalid_argument);
        CHECK_THROWS_AS(tabulate(KernelKind::Ggamma, grid, alpha), std::invalid_argument);
        CHECK_THROWS_AS(tabulate(KernelKind::Hgamma, grid), std::invalid_argument);
    }
}

TEST_CASE("kernel_bounds_check") {
    const double analytic = bound_G_gamma(FracOrder(2.5), FracOrder(0.5));
    CHECK(std::fabs(analytic - 3.8758194776494626) < 1e-12);

    KernelBoundsReport report =
        kernel_bounds_check(FracOrder(2.5), FracOrder(0.5), UniformGrid(128));
    CHECK(report.all_pass());
    CHECK(report.checks[1].observed_max == 2.0); // |H|
    CHECK(report.checks[1].bound == 3.0);

    KernelBoundsReport report2 =
        kernel_bounds_check(FracOrder(2.7), FracOrder(0.7), UniformGrid(128));
    CHECK(report2.all_pass());
}

TEST_CASE("kernel CSV output") {
    std::ostringstream os;
    write_kernel_csv(tabulate(KernelKind::H, UniformGrid(2)), os);
    const std::string expected =
        "t,s,value\n"
        "0,0,2\n0,0.5,1.5\n0,1,1\n"
        "0.5,0,1.5\n0.5,0.5,0.75\n0.5,1,0.5\n"
        "1,0,1\n1,0.5,0.5\n1,1,0\n";
    CHECK(os.str() == expected);
}
