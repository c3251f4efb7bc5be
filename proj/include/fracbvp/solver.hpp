#pragma once

#include <iosfwd>
#include <vector>

#include "fracbvp/grid.hpp"
#include "fracbvp/orders.hpp"
#include "fracbvp/problem.hpp"

namespace fracbvp {

// Green-representation solve of the linear problem
//   D^alpha y = h + D^(alpha-2) k,  y''(0) = 0,
//   y(0) + y'(0) = eta1_int,  y(1) + y'(1) = eta2_int,
// on the (shared) grid of h and k. Requires k(0) = 0.
SampledFn solve_linear(const SampledFn& h, const SampledFn& k,
                       double eta1_int, double eta2_int, FracOrder alpha);

// Fy(t) = integral_0^1 G(t,s) f(s, y(s), D^gamma y(s)) ds.
SampledFn apply_F(const SampledFn& y, const ProblemSpec& spec);

// Ly(t) = integral_0^1 H(t,s) g(s, y(s)) ds
//         + (2-t) integral_0^1 q1(y) + (t-1) integral_0^1 q2(y).
SampledFn apply_L(const SampledFn& y, const ProblemSpec& spec);

struct BcResiduals {
    double r0; // |y(0) + y'(0) - integral q1(y)|
    double r1; // |y(1) + y'(1) - integral q2(y)|
    double r2; // |y''(0)|
};

struct ResidualReport {
    double fixed_point; // equivalent-norm size of y - (Fy + Ly)
    BcResiduals bc;
};

// Fixed-point restatement of the boundary value problem: the order-alpha
// derivative is never formed directly. Endpoint derivatives by one-sided
// second-order differences.
ResidualReport residual(const SampledFn& y, const ProblemSpec& spec);

struct SolveOptions {
    double tol = 1e-8;
    int max_iter = 500;
    double damping = 1.0; // in (0,1]
};

struct SolveReport {
    SampledFn solution;
    int iterations;
    std::vector<double> delta_norms; // equivalent-norm step sizes
    double fixed_point_residual;
    BcResiduals bc_residuals;
    bool converged;
    double damping_used;
    double solution_norm;    // equivalent norm of the final iterate
    bool cert_contraction_ok;
    bool cert_h4_ok;
};

// Picard iteration y <- (1-damping) y + damping (Fy + Ly) from y0 = 0.
// Damping falls back to 0.5 when consecutive updates keep reversing
// direction. Non-convergence is reported, not thrown.
SolveReport fixed_point_solve(const ProblemSpec& spec, const UniformGrid& grid,
                              const SolveOptions& options = {});

// For each shift h: sup over grid (t,s) with t + h <= 1 of
// |G_gamma(t+h, s) - G_gamma(t, s)|. Decay toward 0 as h -> 0 is the
// compactness diagnostic for the operator F.
std::vector<double> translation_modulus(FracOrder alpha, FracOrder gamma,
                                        const UniformGrid& grid,
                                        const std::vector<double>& shifts);

// CSV: header "t,y,dgamma_y", 17 significant digits.
void write_solution_csv(const SampledFn& y, const SampledFn& dgamma_y,
                        std::ostream& os);

} // namespace fracbvp
