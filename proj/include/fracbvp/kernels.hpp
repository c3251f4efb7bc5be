#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fracbvp/grid.hpp"
#include "fracbvp/orders.hpp"

namespace fracbvp {

enum class KernelKind { G, H, Ggamma, Hgamma };

const char* to_string(KernelKind kind);

// Kernel of the fractional source term; alpha in (2,3), (t,s) in the unit
// square. Branches agree at s = t, and G(t,1) = 0.
double green_G(double t, double s, FracOrder alpha);

// Kernel of the lower-order source term.
double green_H(double t, double s);

// Caputo derivative in t of G, in closed form:
//   (t-s)^(alpha-gamma-1)/Gamma(alpha-gamma) * [s <= t]
//   - t^(1-gamma)/Gamma(2-gamma) * ((1-s)^(alpha-1)/Gamma(alpha)
//                                   + (1-s)^(alpha-2)/Gamma(alpha-1))
double green_G_gamma(double t, double s, FracOrder alpha, FracOrder gamma);

// Caputo derivative in t of H:
//   (t-s)^(1-gamma)/Gamma(2-gamma) * [s <= t] - t^(1-gamma)/Gamma(2-gamma) * (2-s)
double green_H_gamma(double t, double s, FracOrder gamma);

// (n+1) x (n+1) table of kernel values indexed (t_i, s_j), row-major in t.
class KernelTable {
public:
    KernelTable(KernelKind kind, UniformGrid grid,
                std::optional<FracOrder> alpha, std::optional<FracOrder> gamma,
                std::vector<double> values);

    KernelKind kind() const { return kind_; }
    const UniformGrid& grid() const { return grid_; }
    const std::optional<FracOrder>& alpha() const { return alpha_; }
    const std::optional<FracOrder>& gamma() const { return gamma_; }
    double at(int i, int j) const {
        return values_[static_cast<std::size_t>(i) * grid_.points() + j];
    }
    const std::vector<double>& values() const { return values_; }

private:
    KernelKind kind_;
    UniformGrid grid_;
    std::optional<FracOrder> alpha_;
    std::optional<FracOrder> gamma_;
    std::vector<double> values_;
};

// Pointwise tabulation; the diagonal uses the s <= t branch. Throws
// std::invalid_argument when an order the kind needs is missing.
KernelTable tabulate(KernelKind kind, const UniformGrid& grid,
                     std::optional<FracOrder> alpha = std::nullopt,
                     std::optional<FracOrder> gamma = std::nullopt);

// max |values| over all grid points.
double kernel_max(const KernelTable& table);

// Certified analytic caps from the kernel-bounds lemma.
double bound_G(FracOrder alpha);                        // 3/Gamma(alpha-1)
double bound_H();                                       // 3
double bound_G_gamma(FracOrder alpha, FracOrder gamma); // Gamma(a)/Gamma(a-g) + 2/(Gamma(2-g)Gamma(a-1))
double bound_H_gamma(FracOrder gamma);                  // 3/Gamma(2-gamma)

struct KernelBound {
    const char* kernel;
    double observed_max;
    double bound;
    bool pass;
};

struct KernelBoundsReport {
    double alpha;
    double gamma;
    std::array<KernelBound, 4> checks; // G, H, Ggamma, Hgamma
    bool all_pass() const;
};

// Sweeps all four kernels over the grid and compares the observed maxima
// against the analytic caps (pass when observed <= bound + 1e-12).
KernelBoundsReport kernel_bounds_check(FracOrder alpha, FracOrder gamma,
                                       const UniformGrid& grid);

// CSV: header "t,s,value", row-major, 17 significant digits.
void write_kernel_csv(const KernelTable& table, std::ostream& os);

} // namespace fracbvp
