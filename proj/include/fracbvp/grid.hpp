#pragma once

#include <utility>
#include <vector>

namespace fracbvp {

// Uniform partition of [0,1] into n >= 2 intervals, nodes t_i = i/n.
class UniformGrid {
public:
    explicit UniformGrid(int n_intervals);

    int intervals() const { return n_; }
    int points() const { return n_ + 1; }
    double step() const { return 1.0 / n_; }
    double node(int i) const { return static_cast<double>(i) / n_; }

    friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

private:
    int n_;
};

// Real-valued function sampled at the nodes of a uniform grid, read back by
// piecewise-linear interpolation. Values are immutable after construction
// and must all be finite.
class SampledFn {
public:
    SampledFn(UniformGrid grid, std::vector<double> values);

    static SampledFn zero(UniformGrid grid);

    template <typename F>
    static SampledFn sample(UniformGrid grid, F&& f) {
        std::vector<double> v(static_cast<std::size_t>(grid.points()));
        for (int i = 0; i < grid.points(); ++i)
            v[static_cast<std::size_t>(i)] = f(grid.node(i));
        return SampledFn(grid, std::move(v));
    }

    const UniformGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double at(int i) const { return values_[static_cast<std::size_t>(i)]; }

    // Piecewise-linear evaluation; t must lie in [0,1] up to rounding slack.
    double operator()(double t) const;

private:
    UniformGrid grid_;
    std::vector<double> values_;
};

SampledFn operator+(const SampledFn& a, const SampledFn& b);
SampledFn operator-(const SampledFn& a, const SampledFn& b);
SampledFn operator*(double c, const SampledFn& a);

} // namespace fracbvp
