#include "fracbvp/certifier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracbvp/fraccalc.hpp"
#include "fracbvp/gamma.hpp"
#include "fracbvp/kernels.hpp"

namespace fracbvp {

const char* to_string(GGammaMode mode) {
    switch (mode) {
        case GGammaMode::Paper: return "paper";
        case GGammaMode::AnalyticBound: return "analytic_bound";
        case GGammaMode::GridMax: return "grid_max";
    }
    return "?";
}

const char* to_string(W1Mode mode) {
    switch (mode) {
        case W1Mode::Exact: return "exact";
        case W1Mode::Supplied: return "supplied";
    }
    return "?";
}

GGammaMode parse_g_gamma_mode(const std::string& name) {
    if (name == "paper") return GGammaMode::Paper;
    if (name == "analytic_bound") return GGammaMode::AnalyticBound;
    if (name == "grid_max") return GGammaMode::GridMax;
    throw std::invalid_argument("unknown g_gamma_mode '" + name + "'");
}

W1Mode parse_w1_mode(const std::string& name) {
    if (name == "exact") return W1Mode::Exact;
    if (name == "supplied") return W1Mode::Supplied;
    throw std::invalid_argument("unknown w1_mode '" + name + "'");
}

namespace {

SampledFn sample_t_expr(const ExprAst& expr, const UniformGrid& grid) {
    return SampledFn::sample(grid, [&](double t) {
        Bindings b;
        b.t = t;
        return expr.eval(b);
    });
}

double w_l1_norm(const ProblemSpec& spec, const UniformGrid& grid) {
    // trapezoid of |w|
    const SampledFn w = sample_t_expr(spec.hyp.w, grid);
    const int n = grid.intervals();
    double acc = 0.5 * (std::fabs(w.at(0)) + std::fabs(w.at(n)));
    for (int i = 1; i < n; ++i) acc += std::fabs(w.at(i));
    return acc * grid.step();
}

} // namespace

double contraction_constant(const ProblemSpec& spec, const UniformGrid& grid) {
    const double q = spec.conjugate_exponent();
    const double phi1_q = lp_norm(sample_t_expr(spec.hyp.phi1, grid), q);
    const double g = spec.gamma.value();
    return (3.0 * phi1_q + spec.hyp.k1 + spec.hyp.k2) /
           (gamma_fn(2.0 - g) * gamma_fn(1.0 + g));
}

double h4_slack(const ProblemSpec& spec, double R, double g_gamma_star,
                double w1, const UniformGrid& grid) {
    const double g = spec.gamma.value();
    const double growth = 1.0 + std::pow(1.0 / gamma_fn(g + 1.0), spec.p);
    const double lhs = R * contraction_constant(spec, grid) +
                       g_gamma_star * (w1 + spec.hyp.c * growth * std::pow(R, spec.p));
    return lhs - R;
}

Certificate certify(const ProblemSpec& spec, const CertifyOptions& options) {
    const double cc = contraction_constant(spec, options.grid);

    double gstar = 0.0;
    switch (options.g_gamma_mode) {
        case GGammaMode::Paper:
            if (!spec.g_gamma_star)
                throw std::invalid_argument(
                    "paper g_gamma_mode requires the problem to carry g_gamma_star");
            gstar = *spec.g_gamma_star;
            break;
        case GGammaMode::AnalyticBound:
            gstar = bound_G_gamma(spec.alpha, spec.gamma);
            break;
        case GGammaMode::GridMax:
            gstar = kernel_max(
                tabulate(KernelKind::Ggamma, options.grid, spec.alpha, spec.gamma));
            break;
    }

    double w1 = 0.0;
    switch (options.w1_mode) {
        case W1Mode::Exact:
            w1 = w_l1_norm(spec, options.grid);
            break;
        case W1Mode::Supplied:
            if (!spec.w1)
                throw std::invalid_argument(
                    "supplied w1_mode requires the problem to carry w1");
            w1 = *spec.w1;
            break;
    }

    const double slack = h4_slack(spec, spec.hyp.R, gstar, w1, options.grid);

    Certificate cert{cc,   cc < 1.0, gstar, options.g_gamma_mode, w1,
                     options.w1_mode, slack, slack <= 0.0, std::nullopt, spec};

    if (options.r_search) {
        const RSearch& rs = *options.r_search;
        if (!(rs.min > 0.0 && rs.max > rs.min && rs.steps >= 2))
            throw std::invalid_argument("malformed R search grid");
        const double ratio = std::log(rs.max / rs.min);
        for (int i = 0; i < rs.steps; ++i) {
            const double R = rs.min * std::exp(ratio * i / (rs.steps - 1));
            if (h4_slack(spec, R, gstar, w1, options.grid) <= 0.0) {
                cert.witness_R = R;
                break;
            }
        }
    }
    return cert;
}

namespace {

// Portable uniform doubles: identical streams for identical seeds on any
// platform, unlike std::uniform_real_distribution.
class ProbeRng {
public:
    explicit ProbeRng(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 engine_;
};

} // namespace

ProbeReport lipschitz_probe(const ProblemSpec& spec, int n_samples, std::uint64_t seed) {
    ProbeRng rng(seed);
    const double R = spec.hyp.R;
    int violations = 0;
    double worst = -HUGE_VAL;
    for (int i = 0; i < n_samples; ++i) {
        const double t = rng.unit();
        const double x = rng.in(-R, R);
        const double x2 = rng.in(-R, R);
        const double y = rng.in(-R, R);
        const double y2 = rng.in(-R, R);

        Bindings bt;
        bt.t = t;
        const double phi1 = spec.hyp.phi1.eval(bt);

        auto check = [&](double lhs, double rhs) {
            const double excess = lhs - rhs * (1.0 + kProbeTol);
            worst = std::max(worst, excess);
            if (excess > 0.0) ++violations;
        };

        Bindings ba, bb;
        ba.t = t; ba.x = x;
        bb.t = t; bb.x = x2;
        check(std::fabs(spec.g.eval(ba) - spec.g.eval(bb)), phi1 * std::fabs(x - x2));

        Bindings qa, qb;
        qa.x = x;
        qb.x = x2;
        check(std::fabs(spec.q1.eval(qa) - spec.q1.eval(qb)), spec.hyp.k1 * std::fabs(x - x2));
        qa.x = y;
        qb.x = y2;
        check(std::fabs(spec.q2.eval(qa) - spec.q2.eval(qb)), spec.hyp.k2 * std::fabs(y - y2));
    }
    return ProbeReport{n_samples, violations, worst, seed};
}

ProbeReport growth_probe(const ProblemSpec& spec, int n_samples, std::uint64_t seed) {
    ProbeRng rng(seed);
    const double R = spec.hyp.R;
    int violations = 0;
    double worst = -HUGE_VAL;
    for (int i = 0; i < n_samples; ++i) {
        const double t = rng.unit();
        const double u = rng.in(-R, R);
        const double v = rng.in(-R, R);
        Bindings b;
        b.t = t; b.x = u; b.y = v;
        const double lhs = std::fabs(spec.f.eval(b));
        Bindings bt;
        bt.t = t;
        const double rhs = spec.hyp.w.eval(bt) +
                           spec.hyp.c * (std::pow(std::fabs(u), spec.p) +
                                         std::pow(std::fabs(v), spec.p));
        const double excess = lhs - rhs * (1.0 + kProbeTol);
        worst = std::max(worst, excess);
        if (excess > 0.0) ++violations;
    }
    return ProbeReport{n_samples, violations, worst, seed};
}

} // namespace fracbvp
