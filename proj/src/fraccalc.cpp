#include "fracbvp/fraccalc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracbvp/gamma.hpp"

namespace fracbvp {

namespace {

// Exact moments of the weight (t_i - s)^(a-1) against the two linear hat
// pieces on one interval, distance k = i - j intervals from the target node:
//   A_k weights u_j, B_k weights u_{j+1}.
void product_trapezoid_weights(int n, double a, double h,
                               std::vector<double>& A, std::vector<double>& B) {
    A.assign(static_cast<std::size_t>(n) + 1, 0.0);
    B.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const double ha = std::pow(h, a);
    std::vector<double> pa(static_cast<std::size_t>(n) + 1), pa1(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        pa[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), a);
        pa1[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), a + 1.0);
    }
    for (int k = 1; k <= n; ++k) {
        const double d1 = (pa[static_cast<std::size_t>(k)] - pa[static_cast<std::size_t>(k) - 1]) / a;
        const double d2 = (pa1[static_cast<std::size_t>(k)] - pa1[static_cast<std::size_t>(k) - 1]) / (a + 1.0);
        A[static_cast<std::size_t>(k)] = ha * (d2 - (k - 1) * d1);
        B[static_cast<std::size_t>(k)] = ha * (k * d1 - d2);
    }
}

} // namespace

SampledFn rl_integral(const SampledFn& u, FracOrder order) {
    const double a = order.value();
    const UniformGrid& grid = u.grid();
    const int n = grid.intervals();

    std::vector<double> A, B;
    product_trapezoid_weights(n, a, grid.step(), A, B);
    const double inv_gamma = 1.0 / gamma_fn(a);

    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j) {
            const int k = i - j;
            acc += u.at(j) * A[static_cast<std::size_t>(k)] +
                   u.at(j + 1) * B[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(i)] = inv_gamma * acc;
    }
    return SampledFn(grid, std::move(out));
}

namespace {

SampledFn first_derivative(const SampledFn& u) {
    const UniformGrid& grid = u.grid();
    const int n = grid.intervals();
    const double h = grid.step();
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    out[0] = (-3.0 * u.at(0) + 4.0 * u.at(1) - u.at(2)) / (2.0 * h);
    for (int i = 1; i < n; ++i)
        out[static_cast<std::size_t>(i)] = (u.at(i + 1) - u.at(i - 1)) / (2.0 * h);
    out[static_cast<std::size_t>(n)] =
        (3.0 * u.at(n) - 4.0 * u.at(n - 1) + u.at(n - 2)) / (2.0 * h);
    return SampledFn(grid, std::move(out));
}

} // namespace

SampledFn caputo_deriv(const SampledFn& u, FracOrder order) {
    if (!order.in_unit_interval())
        throw std::domain_error("caputo_deriv requires an order in (0,1]");
    const double g = order.value();
    if (g == 1.0) return first_derivative(u);

    // L1 scheme: difference quotients convolved with the (t-s)^(-g) weight,
    // integrated exactly per interval.
    const UniformGrid& grid = u.grid();
    const int n = grid.intervals();
    const double scale = std::pow(grid.step(), -g) / gamma_fn(2.0 - g);

    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    double prev = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double cur = std::pow(static_cast<double>(k), 1.0 - g);
        b[static_cast<std::size_t>(k)] = cur - prev;
        prev = cur;
    }

    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j)
            acc += (u.at(j + 1) - u.at(j)) * b[static_cast<std::size_t>(i - j)];
        out[static_cast<std::size_t>(i)] = scale * acc;
    }
    return SampledFn(grid, std::move(out));
}

double lp_norm(const SampledFn& u, double p) {
    if (!(p >= 1.0))
        throw std::domain_error("lp_norm requires p >= 1");
    const int n = u.grid().intervals();
    const double h = u.grid().step();
    double acc = 0.5 * (std::pow(std::fabs(u.at(0)), p) + std::pow(std::fabs(u.at(n)), p));
    for (int i = 1; i < n; ++i) acc += std::pow(std::fabs(u.at(i)), p);
    return std::pow(h * acc, 1.0 / p);
}

double sup_norm(const SampledFn& u) {
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::fabs(v));
    return m;
}

FracNorms frac_norm(const SampledFn& u, FracOrder order, double p) {
    if (!(p > 1.0))
        throw std::domain_error("frac_norm requires p > 1");
    const SampledFn d = caputo_deriv(u, order);
    const double nu = lp_norm(u, p);
    const double nd = lp_norm(d, p);
    FracNorms norms;
    norms.equivalent = nd;
    norms.full = std::pow(std::pow(nu, p) + std::pow(nd, p), 1.0 / p);
    return norms;
}

EmbeddingReport embedding_check(const SampledFn& u, FracOrder order, double p,
                                double tol) {
    if (!(p > 1.0))
        throw std::domain_error("embedding_check requires p > 1");
    if (!order.in_unit_interval())
        throw std::domain_error("embedding_check requires an order in (0,1]");
    if (std::fabs(u.at(0)) > 1e-12)
        throw std::invalid_argument("embedding_check requires u(0) = 0");

    const double g = order.value();
    const double nd = lp_norm(caputo_deriv(u, order), p);

    EmbeddingReport report;
    report.lp.lhs = lp_norm(u, p);
    report.lp.rhs = nd / gamma_fn(g + 1.0);
    report.lp.holds = report.lp.lhs <= report.lp.rhs * (1.0 + tol);

    report.sup_applicable = g > 1.0 / p;
    if (report.sup_applicable) {
        const double q = p / (p - 1.0);
        const double c = gamma_fn(g) * std::pow((g - 1.0) * q + 1.0, 1.0 / q);
        report.sup.lhs = sup_norm(u);
        report.sup.rhs = nd / c;
        report.sup.holds = report.sup.lhs <= report.sup.rhs * (1.0 + tol);
    } else {
        report.sup = {0.0, 0.0, false};
    }
    return report;
}

} // namespace fracbvp
