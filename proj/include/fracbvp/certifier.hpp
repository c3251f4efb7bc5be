#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fracbvp/grid.hpp"
#include "fracbvp/problem.hpp"

namespace fracbvp {

inline constexpr double kProbeTol = 1e-9;

enum class GGammaMode { Paper, AnalyticBound, GridMax };
enum class W1Mode { Exact, Supplied };

const char* to_string(GGammaMode mode);
const char* to_string(W1Mode mode);
GGammaMode parse_g_gamma_mode(const std::string& name);
W1Mode parse_w1_mode(const std::string& name);

// (3 ||phi1||_q + k1 + k2) / (Gamma(2-gamma) Gamma(1+gamma)); the operator L
// is a contraction when this is < 1. ||phi1||_q by composite trapezoid.
double contraction_constant(const ProblemSpec& spec, const UniformGrid& grid);

// LHS - R of the invariant-ball inequality
//   R * contraction + Gstar * (||w||_1 + c (1 + Gamma(1+gamma)^-p) R^p) <= R.
// Nonpositive slack certifies the ball of radius R.
double h4_slack(const ProblemSpec& spec, double R, double g_gamma_star,
                double w1, const UniformGrid& grid);

struct RSearch {
    double min = 1e-3;
    double max = 1e3;
    int steps = 200;
};

struct CertifyOptions {
    GGammaMode g_gamma_mode = GGammaMode::AnalyticBound;
    W1Mode w1_mode = W1Mode::Exact;
    std::optional<RSearch> r_search;
    UniformGrid grid = UniformGrid(1024);
};

struct Certificate {
    double contraction_constant;
    bool contraction_ok;       // contraction_constant < 1
    double g_gamma_star;
    GGammaMode g_gamma_mode;
    double w1;
    W1Mode w1_mode;
    double h4_slack;
    bool h4_ok;                // h4_slack <= 0
    std::optional<double> witness_R;
    ProblemSpec spec_echo;
    bool ok() const { return contraction_ok && h4_ok; }
};

Certificate certify(const ProblemSpec& spec, const CertifyOptions& options = {});

struct ProbeReport {
    int samples;
    int violations;
    double worst_excess; // max over samples of lhs - rhs*(1+tol); <= 0 when clean
    std::uint64_t seed;
};

// Random spot checks of the Lipschitz hypotheses for g, q1, q2 over
// [0,1] x [-R,R]^4. Advisory: the hypothesis data are inputs, not claims
// this library proves.
ProbeReport lipschitz_probe(const ProblemSpec& spec, int n_samples = 10000,
                            std::uint64_t seed = kDefaultProbeSeed);

// Random spot checks of |f(t,u,v)| <= w(t) + c(|u|^p + |v|^p).
ProbeReport growth_probe(const ProblemSpec& spec, int n_samples = 10000,
                         std::uint64_t seed = kDefaultProbeSeed);

} // namespace fracbvp
