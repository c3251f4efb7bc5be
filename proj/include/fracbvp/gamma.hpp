#pragma once

namespace fracbvp {

// Gamma function for strictly positive arguments (Lanczos approximation).
// Throws std::domain_error for x <= 0.
double gamma_fn(double x);

} // namespace fracbvp
