#include "fracbvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracbvp/certifier.hpp"
#include "fracbvp/fraccalc.hpp"
#include "fracbvp/gamma.hpp"
#include "fracbvp/kernels.hpp"
#include "fracbvp/reports.hpp"

namespace fracbvp {

namespace {

// integral_0^1 (1-s)^beta u(s) ds, exact for the piecewise-linear u
// (closed form per interval in sigma = 1-s).
double right_weighted_integral(const SampledFn& u, double beta) {
    const int n = u.grid().intervals();
    const double h = u.grid().step();
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        const double sj = u.grid().node(j);
        const double slope = (u.at(j + 1) - u.at(j)) / h;
        // u(s) = p + q*sigma with sigma = 1 - s
        const double q = -slope;
        const double p = u.at(j) + slope * (1.0 - sj);
        const double sa = 1.0 - u.grid().node(j + 1);
        const double sb = 1.0 - sj;
        const double m1 = (std::pow(sb, beta + 1.0) - std::pow(sa, beta + 1.0)) / (beta + 1.0);
        const double m2 = (std::pow(sb, beta + 2.0) - std::pow(sa, beta + 2.0)) / (beta + 2.0);
        total += p * m1 + q * m2;
    }
    return total;
}

// integral_0^1 (c0 + c1 s) u(s) ds; integrand is quadratic per interval, so
// one Simpson step per interval is exact.
double linear_weighted_integral(const SampledFn& u, double c0, double c1) {
    const int n = u.grid().intervals();
    const double h = u.grid().step();
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        const double sa = u.grid().node(j);
        const double sb = u.grid().node(j + 1);
        const double sm = 0.5 * (sa + sb);
        const double um = 0.5 * (u.at(j) + u.at(j + 1));
        const double fa = (c0 + c1 * sa) * u.at(j);
        const double fm = (c0 + c1 * sm) * um;
        const double fb = (c0 + c1 * sb) * u.at(j + 1);
        total += h / 6.0 * (fa + 4.0 * fm + fb);
    }
    return total;
}

double trapezoid(const SampledFn& u) {
    const int n = u.grid().intervals();
    double acc = 0.5 * (u.at(0) + u.at(n));
    for (int i = 1; i < n; ++i) acc += u.at(i);
    return acc * u.grid().step();
}

// The part of the kernel action multiplying (1-t): both branches of G carry
// (1-t) * ((1-s)^(a-1)/Gamma(a) + (1-s)^(a-2)/Gamma(a-1)).
double g_right_part(const SampledFn& u, double a) {
    return right_weighted_integral(u, a - 1.0) / gamma_fn(a) +
           right_weighted_integral(u, a - 2.0) / gamma_fn(a - 1.0);
}

// integral_0^1 G(t_i,s) u(s) ds for every node, via the convolution part
// I^alpha u plus the (1-t)-weighted right part.
SampledFn green_G_apply(const SampledFn& u, FracOrder alpha) {
    SampledFn conv = rl_integral(u, alpha);
    const double right = g_right_part(u, alpha.value());
    std::vector<double> out(conv.values());
    for (int i = 0; i <= u.grid().intervals(); ++i)
        out[static_cast<std::size_t>(i)] += (1.0 - u.grid().node(i)) * right;
    return SampledFn(u.grid(), std::move(out));
}

// integral_0^1 H(t_i,s) u(s) ds; the (t-s) convolution equals Gamma(2) I^2 u.
SampledFn green_H_apply(const SampledFn& u) {
    SampledFn conv = rl_integral(u, FracOrder(2.0));
    const double right = linear_weighted_integral(u, 2.0, -1.0);
    std::vector<double> out(conv.values());
    for (int i = 0; i <= u.grid().intervals(); ++i)
        out[static_cast<std::size_t>(i)] += (1.0 - u.grid().node(i)) * right;
    return SampledFn(u.grid(), std::move(out));
}

// One-sided second-order endpoint stencils. The node spacing is capped at
// 1/256: at spacing h the weakly singular kernels leave an O(h)-with-large-
// constant artifact in the second-difference estimate at t = 0.
struct EndpointDerivatives {
    double d0;  // y'(0)
    double d1;  // y'(1)
    double dd0; // y''(0)
};

EndpointDerivatives endpoint_derivatives(const SampledFn& y) {
    const int n = y.grid().intervals();
    int m = std::max(1, n / 256);
    if (3 * m > n) m = std::max(1, n / 3);
    const double d = m * y.grid().step();
    EndpointDerivatives e;
    e.d0 = (-3.0 * y.at(0) + 4.0 * y.at(m) - y.at(2 * m)) / (2.0 * d);
    e.d1 = (3.0 * y.at(n) - 4.0 * y.at(n - m) + y.at(n - 2 * m)) / (2.0 * d);
    if (3 * m <= n) {
        e.dd0 = (2.0 * y.at(0) - 5.0 * y.at(m) + 4.0 * y.at(2 * m) - y.at(3 * m)) / (d * d);
    } else {
        e.dd0 = (y.at(0) - 2.0 * y.at(m) + y.at(2 * m)) / (d * d);
    }
    return e;
}

} // namespace

SampledFn solve_linear(const SampledFn& h, const SampledFn& k,
                       double eta1_int, double eta2_int, FracOrder alpha) {
    if (!alpha.in_two_three())
        throw std::domain_error("solve_linear requires alpha in (2,3)");
    if (!(h.grid() == k.grid()))
        throw std::invalid_argument("solve_linear requires h and k on one grid");
    if (std::fabs(k.at(0)) > 1e-12)
        throw std::invalid_argument("solve_linear requires k(0) = 0");

    const SampledFn gh = green_G_apply(h, alpha);
    const SampledFn hk = green_H_apply(k);
    std::vector<double> out(static_cast<std::size_t>(h.grid().points()));
    for (int i = 0; i < h.grid().points(); ++i) {
        const double t = h.grid().node(i);
        out[static_cast<std::size_t>(i)] =
            gh.at(i) + hk.at(i) + (2.0 - t) * eta1_int + (t - 1.0) * eta2_int;
    }
    return SampledFn(h.grid(), std::move(out));
}

namespace {

SampledFn nonlinear_samples_f(const SampledFn& y, const SampledFn& dy,
                              const ProblemSpec& spec) {
    const UniformGrid& grid = y.grid();
    std::vector<double> v(static_cast<std::size_t>(grid.points()));
    for (int i = 0; i < grid.points(); ++i) {
        Bindings b;
        b.t = grid.node(i);
        b.x = y.at(i);
        b.y = dy.at(i);
        try {
            v[static_cast<std::size_t>(i)] = spec.f.eval(b);
        } catch (const EvalError& e) {
            std::ostringstream msg;
            msg << e.what() << " [f at s=" << format_double(*b.t)
                << ", y=" << format_double(*b.x)
                << ", dgamma_y=" << format_double(*b.y) << "]";
            throw EvalError(msg.str());
        }
    }
    return SampledFn(grid, std::move(v));
}

SampledFn map_scalar(const SampledFn& y, const ExprAst& expr, const char* name) {
    std::vector<double> v(static_cast<std::size_t>(y.grid().points()));
    for (int i = 0; i < y.grid().points(); ++i) {
        Bindings b;
        b.x = y.at(i);
        try {
            v[static_cast<std::size_t>(i)] = expr.eval(b);
        } catch (const EvalError& e) {
            std::ostringstream msg;
            msg << e.what() << " [" << name << " at y=" << format_double(*b.x) << "]";
            throw EvalError(msg.str());
        }
    }
    return SampledFn(y.grid(), std::move(v));
}

SampledFn map_g(const SampledFn& y, const ProblemSpec& spec) {
    std::vector<double> v(static_cast<std::size_t>(y.grid().points()));
    for (int i = 0; i < y.grid().points(); ++i) {
        Bindings b;
        b.t = y.grid().node(i);
        b.x = y.at(i);
        try {
            v[static_cast<std::size_t>(i)] = spec.g.eval(b);
        } catch (const EvalError& e) {
            std::ostringstream msg;
            msg << e.what() << " [g at s=" << format_double(*b.t)
                << ", y=" << format_double(*b.x) << "]";
            throw EvalError(msg.str());
        }
    }
    return SampledFn(y.grid(), std::move(v));
}

} // namespace

SampledFn apply_F(const SampledFn& y, const ProblemSpec& spec) {
    const SampledFn dy = caputo_deriv(y, spec.gamma);
    const SampledFn fs = nonlinear_samples_f(y, dy, spec);
    return green_G_apply(fs, spec.alpha);
}

SampledFn apply_L(const SampledFn& y, const ProblemSpec& spec) {
    const SampledFn gs = map_g(y, spec);
    const double q1_int = trapezoid(map_scalar(y, spec.q1, "q1"));
    const double q2_int = trapezoid(map_scalar(y, spec.q2, "q2"));
    const SampledFn hg = green_H_apply(gs);
    std::vector<double> out(hg.values());
    for (int i = 0; i < y.grid().points(); ++i) {
        const double t = y.grid().node(i);
        out[static_cast<std::size_t>(i)] += (2.0 - t) * q1_int + (t - 1.0) * q2_int;
    }
    return SampledFn(y.grid(), std::move(out));
}

ResidualReport residual(const SampledFn& y, const ProblemSpec& spec) {
    const SampledFn image = apply_F(y, spec) + apply_L(y, spec);
    ResidualReport report;
    report.fixed_point = frac_norm(y - image, spec.gamma, spec.p).equivalent;

    const EndpointDerivatives e = endpoint_derivatives(y);
    const double q1_int = trapezoid(map_scalar(y, spec.q1, "q1"));
    const double q2_int = trapezoid(map_scalar(y, spec.q2, "q2"));
    report.bc.r0 = std::fabs(y.at(0) + e.d0 - q1_int);
    report.bc.r1 = std::fabs(y.at(y.grid().intervals()) + e.d1 - q2_int);
    report.bc.r2 = std::fabs(e.dd0);
    return report;
}

SolveReport fixed_point_solve(const ProblemSpec& spec, const UniformGrid& grid,
                              const SolveOptions& options) {
    if (!(options.damping > 0.0 && options.damping <= 1.0))
        throw std::invalid_argument("damping must lie in (0,1]");
    if (!(options.tol > 0.0) || options.max_iter < 1)
        throw std::invalid_argument("bad solver options");

    CertifyOptions cert_options;
    cert_options.grid = grid;
    const Certificate cert = certify(spec, cert_options);

    double damping = options.damping;
    SampledFn y = SampledFn::zero(grid);
    std::vector<double> delta_norms;
    std::vector<double> prev_delta;
    bool converged = false;
    int negative_correlations = 0;
    int iterations = 0;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        const SampledFn image = apply_F(y, spec) + apply_L(y, spec);
        const SampledFn delta = damping * (image - y);
        y = y + delta;
        ++iterations;

        const double dn = frac_norm(delta, spec.gamma, spec.p).equivalent;
        delta_norms.push_back(dn);

        // damping fallback when consecutive updates keep reversing direction
        if (!prev_delta.empty() && damping == options.damping && options.damping == 1.0) {
            double corr = 0.0;
            for (std::size_t i = 0; i < prev_delta.size(); ++i)
                corr += prev_delta[i] * delta.values()[i];
            negative_correlations = corr < 0.0 ? negative_correlations + 1 : 0;
            if (negative_correlations >= 3) damping = 0.5;
        }
        prev_delta = delta.values();

        if (dn < options.tol) {
            converged = true;
            break;
        }
    }

    const ResidualReport res = residual(y, spec);
    SolveReport report{std::move(y),
                       iterations,
                       std::move(delta_norms),
                       res.fixed_point,
                       res.bc,
                       converged,
                       damping,
                       0.0,
                       cert.contraction_ok,
                       cert.h4_ok};
    report.solution_norm = frac_norm(report.solution, spec.gamma, spec.p).equivalent;
    return report;
}

std::vector<double> translation_modulus(FracOrder alpha, FracOrder gamma,
                                        const UniformGrid& grid,
                                        const std::vector<double>& shifts) {
    std::vector<double> out;
    out.reserve(shifts.size());
    for (double shift : shifts) {
        if (shift < 0.0 || shift >= 1.0)
            throw std::domain_error("translation shift must lie in [0,1)");
        double sup = 0.0;
        for (int i = 0; i <= grid.intervals(); ++i) {
            const double t = grid.node(i);
            if (t + shift > 1.0 + 1e-12) break;
            const double ts = std::min(t + shift, 1.0);
            for (int j = 0; j <= grid.intervals(); ++j) {
                const double s = grid.node(j);
                const double diff = std::fabs(green_G_gamma(ts, s, alpha, gamma) -
                                              green_G_gamma(t, s, alpha, gamma));
                sup = std::max(sup, diff);
            }
        }
        out.push_back(sup);
    }
    return out;
}

void write_solution_csv(const SampledFn& y, const SampledFn& dgamma_y,
                        std::ostream& os) {
    os << "t,y,dgamma_y\n";
    for (int i = 0; i < y.grid().points(); ++i) {
        os << format_double(y.grid().node(i)) << ',' << format_double(y.at(i)) << ','
           << format_double(dgamma_y.at(i)) << '\n';
    }
}

} // namespace fracbvp
