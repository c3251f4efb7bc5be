#pragma once

#include <stdexcept>

namespace fracbvp {

// Positive fractional order. Only positivity is enforced here; each formula
// asserts the interval it actually needs (see in_unit_interval / in_two_three).
class FracOrder {
public:
    explicit FracOrder(double value) : value_(value) {
        if (!(value > 0.0))
            throw std::domain_error("fractional order must be positive");
    }

    double value() const { return value_; }

    // (0, 1] — orders that may be Caputo-differentiated directly.
    bool in_unit_interval() const { return value_ > 0.0 && value_ <= 1.0; }

    // (2, 3) — the equation order of the boundary value problem.
    bool in_two_three() const { return value_ > 2.0 && value_ < 3.0; }

    friend bool operator==(FracOrder a, FracOrder b) { return a.value_ == b.value_; }

private:
    double value_;
};

} // namespace fracbvp
