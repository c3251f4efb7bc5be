#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "fracbvp/certifier.hpp"
#include "fracbvp/gamma.hpp"
#include "test_util.hpp"

using namespace fracbvp;

namespace {

const UniformGrid kGrid(1024);

ProblemSpec modified_example1(const std::map<std::string, std::string>& overrides) {
    std::istringstream in(canonical_text(builtin_problem("example1")));
    std::string out, line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" =");
        const std::string key = eq == std::string::npos ? "" : line.substr(0, eq);
        auto it = overrides.find(key);
        out += it != overrides.end() ? key + " = " + it->second : line;
        out += "\n";
    }
    return parse_problem_text(out);
}

} // namespace

TEST_CASE("contraction constants of the builtin problems") {
    // closed forms: both integrands phi1^q are linear in t, so the grid
    // quadrature is exact up to rounding
    CHECK(std::fabs(contraction_constant(builtin_problem("example1"), kGrid) -
                    0.36795115006907575) < 1e-9);
    CHECK(std::fabs(contraction_constant(builtin_problem("example2"), kGrid) -
                    0.32262039794215358) < 1e-9);
}

TEST_CASE("contraction constant degenerates to zero") {
    ProblemSpec flat = modified_example1({{"phi1", "0"}, {"k1", "0"}, {"k2", "0"}});
    CHECK(contraction_constant(flat, kGrid) == 0.0);
}

TEST_CASE("h4_slack reproduces the published arithmetic") {
    const ProblemSpec ex1 = builtin_problem("example1");
    const ProblemSpec ex2 = builtin_problem("example2");

    // published substitution: w1 caps 1/5 and 1/10, kernel maxima 4.047 / 3.9995
    CHECK(std::fabs(h4_slack(ex1, 2.0, 4.047, 0.2, kGrid) - (-0.30157802609047452)) < 1e-9);
    CHECK(std::fabs(h4_slack(ex2, 2.0, 3.9995, 0.1, kGrid) - (-0.16546258455127519)) < 1e-9);
}

TEST_CASE("all-zero hypothesis data gives slack -R") {
    ProblemSpec zero = modified_example1(
        {{"w", "0"}, {"c", "0"}, {"phi1", "0"}, {"k1", "0"}, {"k2", "0"}});
    CHECK(h4_slack(zero, 2.0, 4.047, 0.0, kGrid) == -2.0);
    CHECK(h4_slack(zero, 7.5, 1.0, 0.0, kGrid) == -7.5);
}

TEST_CASE("certify modes") {
    const ProblemSpec ex1 = builtin_problem("example1");

    SUBCASE("paper + supplied reproduce the published numbers") {
        CertifyOptions options;
        options.g_gamma_mode = GGammaMode::Paper;
        options.w1_mode = W1Mode::Supplied;
        options.grid = kGrid;
        Certificate cert = certify(ex1, options);
        CHECK(cert.contraction_ok);
        CHECK(cert.h4_ok);
        CHECK(cert.g_gamma_star == 4.047);
        CHECK(cert.w1 == 0.2);
        CHECK(std::fabs(cert.h4_slack - (-0.30157802609047452)) < 1e-9);
        CHECK(cert.ok());
    }
    SUBCASE("exact w1 uses the quadrature of |w|") {
        CertifyOptions options;
        options.g_gamma_mode = GGammaMode::Paper;
        options.w1_mode = W1Mode::Exact;
        options.grid = kGrid;
        Certificate cert = certify(ex1, options);
        CHECK(std::fabs(cert.w1 - 0.12642411176571153) < 1e-6);
        CHECK(std::fabs(cert.h4_slack - (-0.59933964577463994)) < 1e-5);

        Certificate cert2 = certify(builtin_problem("example2"), options);
        CHECK(std::fabs(cert2.w1 - 0.045969769413186028) < 1e-6);
        CHECK(std::fabs(cert2.h4_slack - (-0.38155649178323764)) < 1e-5);
    }
    SUBCASE("analytic bound mode is certified and conservative") {
        CertifyOptions options;
        options.grid = kGrid;
        Certificate cert = certify(ex1, options);
        CHECK(cert.g_gamma_mode == GGammaMode::AnalyticBound);
        CHECK(std::fabs(cert.g_gamma_star - 3.8758194776494626) < 1e-12);
        CHECK(cert.ok());
    }
    SUBCASE("grid max mode stays below the analytic bound") {
        CertifyOptions options;
        options.g_gamma_mode = GGammaMode::GridMax;
        options.grid = UniformGrid(256);
        Certificate cert = certify(ex1, options);
        CHECK(cert.g_gamma_star < 3.8758194776494626);
        CHECK(cert.g_gamma_star == doctest::Approx(1.122066).epsilon(1e-3));
        CHECK(cert.ok());
    }
    SUBCASE("paper mode requires the stored constant") {
        ProblemSpec bare = ex1;
        bare.g_gamma_star.reset();
        CertifyOptions options;
        options.g_gamma_mode = GGammaMode::Paper;
        CHECK_THROWS_AS(certify(bare, options), std::invalid_argument);

        ProblemSpec no_w1 = ex1;
        no_w1.w1.reset();
        CertifyOptions options2;
        options2.w1_mode = W1Mode::Supplied;
        CHECK_THROWS_AS(certify(no_w1, options2), std::invalid_argument);
    }
    SUBCASE("oversized Lipschitz constants break the contraction") {
        ProblemSpec heavy = modified_example1({{"k1", "5"}, {"k2", "5"}});
        Certificate cert = certify(heavy, CertifyOptions{});
        CHECK(std::fabs(cert.contraction_constant - 12.973022642947186) < 1e-9);
        CHECK_FALSE(cert.contraction_ok);
        CHECK_FALSE(cert.ok());
    }
}

TEST_CASE("contraction constant is exactly linear in k1 and k2") {
    const ProblemSpec base = builtin_problem("example1");
    const double c0 = contraction_constant(base, kGrid);
    const double c1 = contraction_constant(modified_example1({{"k1", "1/20 + 1/4"}}), kGrid);
    const double g = base.gamma.value();
    const double expected = 0.25 / (gamma_fn(2.0 - g) * gamma_fn(1.0 + g));
    CHECK(std::fabs((c1 - c0) - expected) < 1e-12);
}

TEST_CASE("h4_slack monotonicity") {
    const ProblemSpec ex1 = builtin_problem("example1");
    const double base = h4_slack(ex1, 2.0, 4.047, 0.2, kGrid);
    CHECK(h4_slack(ex1, 2.0, 4.147, 0.2, kGrid) > base);  // in g_gamma_star
    CHECK(h4_slack(ex1, 2.0, 4.047, 0.25, kGrid) > base); // in w1
    ProblemSpec heavier_c = modified_example1({{"c", "1/(164*pi) + 0.001"}});
    CHECK(h4_slack(heavier_c, 2.0, 4.047, 0.2, kGrid) > base); // in c
}

TEST_CASE("h4_slack grows without bound in R") {
    CHECK(h4_slack(builtin_problem("example1"), 1e3, 4.047, 0.2, kGrid) > 0.0);
    CHECK(h4_slack(builtin_problem("example2"), 1e3, 3.9995, 0.1, kGrid) > 0.0);
}

TEST_CASE("R search returns a self-consistent witness") {
    CertifyOptions options;
    options.grid = kGrid;
    options.r_search = RSearch{};
    Certificate cert = certify(builtin_problem("example1"), options);
    REQUIRE(cert.witness_R.has_value());
    CHECK(h4_slack(builtin_problem("example1"), *cert.witness_R, cert.g_gamma_star,
                   cert.w1, kGrid) <= 0.0);
    // and it is the first sign change on the logarithmic grid
    const RSearch rs;
    const double ratio = std::log(rs.max / rs.min);
    for (int i = 0; i < rs.steps; ++i) {
        const double R = rs.min * std::exp(ratio * i / (rs.steps - 1));
        if (R >= *cert.witness_R - 1e-15) break;
        CHECK(h4_slack(builtin_problem("example1"), R, cert.g_gamma_star, cert.w1, kGrid) > 0.0);
    }
}

TEST_CASE("lipschitz probe") {
    CHECK(lipschitz_probe(builtin_problem("example1"), 10000).violations == 0);
    CHECK(lipschitz_probe(builtin_problem("example2"), 10000).violations == 0);

    SUBCASE("an undersized envelope is caught") {
        ProblemSpec bad = modified_example1({{"g", "x"}, {"phi1", "0.5"}});
        CHECK(lipschitz_probe(bad, 10000).violations > 0);
    }
    SUBCASE("identical seeds give identical reports") {
        ProbeReport a = lipschitz_probe(builtin_problem("example1"), 5000, 77);
        ProbeReport b = lipschitz_probe(builtin_problem("example1"), 5000, 77);
        CHECK(a.violations == b.violations);
        CHECK(a.worst_excess == b.worst_excess);
    }
}

TEST_CASE("growth probe") {
    CHECK(growth_probe(builtin_problem("example1"), 10000).violations == 0);

    // the second builtin's printed envelope misses the cosine offset at the
    // origin, which is exactly what an advisory probe should surface
    CHECK(growth_probe(builtin_problem("example2"), 10000).violations > 0);

    SUBCASE("flat f with no envelope is caught") {
        ProblemSpec bad = modified_example1({{"f", "1"}, {"w", "0"}, {"c", "0"}});
        CHECK(growth_probe(bad, 1000).violations == 1000);
    }
}
