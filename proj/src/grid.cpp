#include "fracbvp/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fracbvp {

UniformGrid::UniformGrid(int n_intervals) : n_(n_intervals) {
    if (n_intervals < 2)
        throw std::invalid_argument("grid needs at least 2 intervals");
}

SampledFn::SampledFn(UniformGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid_.points()))
        throw std::invalid_argument("sample count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("sampled function has non-finite values");
}

SampledFn SampledFn::zero(UniformGrid grid) {
    return SampledFn(grid, std::vector<double>(static_cast<std::size_t>(grid.points()), 0.0));
}

double SampledFn::operator()(double t) const {
    if (t < -1e-12 || t > 1.0 + 1e-12)
        throw std::domain_error("evaluation point outside [0,1]");
    const int n = grid_.intervals();
    if (t <= 0.0) return values_.front();
    if (t >= 1.0) return values_.back();
    int i = static_cast<int>(t * n);
    if (i >= n) i = n - 1;
    const double local = t * n - i;
    return values_[static_cast<std::size_t>(i)] * (1.0 - local) +
           values_[static_cast<std::size_t>(i) + 1] * local;
}

namespace {

SampledFn combine(const SampledFn& a, const SampledFn& b, double sb) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("grid mismatch");
    std::vector<double> v(a.values());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += sb * b.values()[i];
    return SampledFn(a.grid(), std::move(v));
}

} // namespace

SampledFn operator+(const SampledFn& a, const SampledFn& b) { return combine(a, b, 1.0); }
SampledFn operator-(const SampledFn& a, const SampledFn& b) { return combine(a, b, -1.0); }

SampledFn operator*(double c, const SampledFn& a) {
    std::vector<double> v(a.values());
    for (double& x : v) x *= c;
    return SampledFn(a.grid(), std::move(v));
}

} // namespace fracbvp
