#pragma once

#include "fracbvp/grid.hpp"
#include "fracbvp/orders.hpp"

namespace fracbvp {

// Riemann-Liouville integral I^a u on the grid of u. Product-trapezoidal
// quadrature: the weight (t-s)^(a-1) is integrated exactly against the
// piecewise-linear interpolant of u. Output at t_0 is 0.
SampledFn rl_integral(const SampledFn& u, FracOrder order);

// Caputo derivative of order in (0,1] on the grid of u. Orders in (0,1) use
// the L1 scheme; order 1 falls back to second-order finite differences.
SampledFn caputo_deriv(const SampledFn& u, FracOrder order);

// (integral_0^1 |u|^p)^(1/p) by composite trapezoid on |u|^p; p >= 1.
double lp_norm(const SampledFn& u, double p);

// max_i |u(t_i)|
double sup_norm(const SampledFn& u);

struct FracNorms {
    double full;        // (||u||_p^p + ||D^g u||_p^p)^(1/p)
    double equivalent;  // ||D^g u||_p  (default norm for certifier and solver)
};

// Norms of the fractional derivative space; order in (0,1], p > 1.
FracNorms frac_norm(const SampledFn& u, FracOrder order, double p);

struct EmbeddingSide {
    double lhs;
    double rhs;
    bool holds;
};

struct EmbeddingReport {
    EmbeddingSide lp;     // ||u||_p <= ||D^g u||_p / Gamma(g+1)
    EmbeddingSide sup;    // ||u||_inf <= ||D^g u||_p / (Gamma(g)((g-1)q+1)^(1/q))
    bool sup_applicable;  // requires g > 1/p
};

// Checks both embedding inequalities at T = 1. Requires u(0) = 0 (rejected
// otherwise) since constants have vanishing Caputo derivative.
EmbeddingReport embedding_check(const SampledFn& u, FracOrder order, double p,
                                double tol = 1e-9);

} // namespace fracbvp
