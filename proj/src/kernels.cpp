#include "fracbvp/kernels.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fracbvp/gamma.hpp"
#include "fracbvp/reports.hpp"

namespace fracbvp {

namespace {

void require_unit_square(double t, double s) {
    if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0)
        throw std::domain_error("kernel arguments must lie in the unit square");
}

void require_equation_order(FracOrder alpha) {
    if (!alpha.in_two_three())
        throw std::domain_error("kernel order alpha must lie in (2,3)");
}

void require_derivative_order(FracOrder gamma) {
    if (!gamma.in_unit_interval())
        throw std::domain_error("kernel order gamma must lie in (0,1]");
}

// (1-s)^(alpha-1)/Gamma(alpha) + (1-s)^(alpha-2)/Gamma(alpha-1); the factor
// multiplying (1-t) in both branches of G. Exponents are positive, so the
// s = 1 column is exactly 0.
double right_factor(double s, double a) {
    const double om = 1.0 - s;
    return std::pow(om, a - 1.0) / gamma_fn(a) + std::pow(om, a - 2.0) / gamma_fn(a - 1.0);
}

} // namespace

const char* to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::G: return "G";
        case KernelKind::H: return "H";
        case KernelKind::Ggamma: return "Ggamma";
        case KernelKind::Hgamma: return "Hgamma";
    }
    return "?";
}

double green_G(double t, double s, FracOrder alpha) {
    require_unit_square(t, s);
    require_equation_order(alpha);
    const double a = alpha.value();
    double value = (1.0 - t) * right_factor(s, a);
    if (s <= t) value += std::pow(t - s, a - 1.0) / gamma_fn(a);
    return value;
}

double green_H(double t, double s) {
    require_unit_square(t, s);
    double value = (1.0 - t) * (2.0 - s);
    if (s <= t) value += t - s;
    return value;
}

double green_G_gamma(double t, double s, FracOrder alpha, FracOrder gamma) {
    require_unit_square(t, s);
    require_equation_order(alpha);
    require_derivative_order(gamma);
    const double a = alpha.value();
    const double g = gamma.value();
    // alpha - gamma - 1 > 0, so the diagonal term vanishes at s = t.
    double value = -std::pow(t, 1.0 - g) / gamma_fn(2.0 - g) * right_factor(s, a);
    if (s <= t)
        value += std::pow(t - s, a - g - 1.0) / gamma_fn(a - g);
    return value;
}

double green_H_gamma(double t, double s, FracOrder gamma) {
    require_unit_square(t, s);
    require_derivative_order(gamma);
    const double g = gamma.value();
    // for gamma = 1 the exponents vanish and pow(0,0) = 1 gives the
    // ordinary derivative [s <= t] - (2 - s)
    double value = -std::pow(t, 1.0 - g) / gamma_fn(2.0 - g) * (2.0 - s);
    if (s <= t)
        value += std::pow(t - s, 1.0 - g) / gamma_fn(2.0 - g);
    return value;
}

KernelTable::KernelTable(KernelKind kind, UniformGrid grid,
                         std::optional<FracOrder> alpha, std::optional<FracOrder> gamma,
                         std::vector<double> values)
    : kind_(kind), grid_(grid), alpha_(alpha), gamma_(gamma), values_(std::move(values)) {
    const std::size_t expected =
        static_cast<std::size_t>(grid_.points()) * static_cast<std::size_t>(grid_.points());
    if (values_.size() != expected)
        throw std::invalid_argument("kernel table size does not match grid");
}

KernelTable tabulate(KernelKind kind, const UniformGrid& grid,
                     std::optional<FracOrder> alpha, std::optional<FracOrder> gamma) {
    const bool needs_alpha = kind == KernelKind::G || kind == KernelKind::Ggamma;
    const bool needs_gamma = kind == KernelKind::Ggamma || kind == KernelKind::Hgamma;
    if (needs_alpha && !alpha)
        throw std::invalid_argument("kernel kind requires alpha");
    if (needs_gamma && !gamma)
        throw std::invalid_argument("kernel kind requires gamma");

    const int m = grid.points();
    std::vector<double> values(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        const double t = grid.node(i);
        for (int j = 0; j < m; ++j) {
            const double s = grid.node(j);
            double v = 0.0;
            switch (kind) {
                case KernelKind::G: v = green_G(t, s, *alpha); break;
                case KernelKind::H: v = green_H(t, s); break;
                case KernelKind::Ggamma: v = green_G_gamma(t, s, *alpha, *gamma); break;
                case KernelKind::Hgamma: v = green_H_gamma(t, s, *gamma); break;
            }
            values[static_cast<std::size_t>(i) * m + j] = v;
        }
    }
    return KernelTable(kind, grid, needs_alpha ? alpha : std::nullopt,
                       needs_gamma ? gamma : std::nullopt, std::move(values));
}

double kernel_max(const KernelTable& table) {
    double m = 0.0;
    for (double v : table.values()) m = std::max(m, std::fabs(v));
    return m;
}

double bound_G(FracOrder alpha) {
    require_equation_order(alpha);
    return 3.0 / gamma_fn(alpha.value() - 1.0);
}

double bound_H() { return 3.0; }

double bound_G_gamma(FracOrder alpha, FracOrder gamma) {
    require_equation_order(alpha);
    require_derivative_order(gamma);
    const double a = alpha.value();
    const double g = gamma.value();
    return gamma_fn(a) / gamma_fn(a - g) + 2.0 / (gamma_fn(2.0 - g) * gamma_fn(a - 1.0));
}

double bound_H_gamma(FracOrder gamma) {
    require_derivative_order(gamma);
    return 3.0 / gamma_fn(2.0 - gamma.value());
}

bool KernelBoundsReport::all_pass() const {
    for (const KernelBound& c : checks)
        if (!c.pass) return false;
    return true;
}

KernelBoundsReport kernel_bounds_check(FracOrder alpha, FracOrder gamma,
                                       const UniformGrid& grid) {
    KernelBoundsReport report;
    report.alpha = alpha.value();
    report.gamma = gamma.value();
    const double observed[4] = {
        kernel_max(tabulate(KernelKind::G, grid, alpha)),
        kernel_max(tabulate(KernelKind::H, grid)),
        kernel_max(tabulate(KernelKind::Ggamma, grid, alpha, gamma)),
        kernel_max(tabulate(KernelKind::Hgamma, grid, std::nullopt, gamma)),
    };
    const double bounds[4] = {bound_G(alpha), bound_H(), bound_G_gamma(alpha, gamma),
                              bound_H_gamma(gamma)};
    const char* names[4] = {"G", "H", "Ggamma", "Hgamma"};
    for (int k = 0; k < 4; ++k) {
        report.checks[static_cast<std::size_t>(k)] = {
            names[k], observed[k], bounds[k], observed[k] <= bounds[k] + 1e-12};
    }
    return report;
}

void write_kernel_csv(const KernelTable& table, std::ostream& os) {
    os << "t,s,value\n";
    const int m = table.grid().points();
    for (int i = 0; i < m; ++i) {
        const std::string t = format_double(table.grid().node(i));
        for (int j = 0; j < m; ++j) {
            os << t << ',' << format_double(table.grid().node(j)) << ','
               << format_double(table.at(i, j)) << '\n';
        }
    }
}

} // namespace fracbvp
