#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lane8/grid.hpp"
#include "lane8/scalar.hpp"

namespace testutil {

// Deterministic generator for property-style tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }

    double uniform(double lo, double hi) {
        const double t = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * t;
    }

private:
    std::uint64_t s_;
};

template <class R>
lane8::GridFunction<R> random_grid_function(int n, Rng& rng, double lo = -2.0, double hi = 2.0) {
    std::vector<R> v;
    v.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v.push_back(R(rng.uniform(lo, hi)));
    return lane8::GridFunction<R>(lane8::UniformGrid<R>(n), std::move(v));
}

// Least-squares slope of lane8::log2(err) against the refinement level (each level
// halves h), i.e. the empirical convergence order.
template <class R>
double fit_order(const std::vector<R>& errs) {
    const int m = static_cast<int>(errs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < m; ++j) {
        const double x = -j;  // lane8::log2(h_j) up to a constant
        const double y = static_cast<double>(lane8::log2(errs[static_cast<std::size_t>(j)]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace testutil
