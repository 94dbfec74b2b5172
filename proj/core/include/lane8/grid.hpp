#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lane8/scalar.hpp"

namespace lane8 {

/// N+1 equispaced nodes x_i = i/N on [0,1]. Nodes are computed by division so
/// that x_0 = 0 and x_N = 1 hold exactly in either precision mode; N >= 8 so
/// every stencil window used by the quadrature operators fits.
template <class R>
class UniformGrid {
public:
    explicit UniformGrid(int intervals) : n_(intervals) {
        if (intervals < 8)
            throw std::invalid_argument("UniformGrid: N must be >= 8, got " +
                                        std::to_string(intervals));
    }

    int intervals() const { return n_; }       // N
    int node_count() const { return n_ + 1; }  // N+1
    R step() const { return R(1) / R(n_); }    // h
    R node(int i) const { return R(i) / R(n_); }

    friend bool operator==(const UniformGrid& a, const UniformGrid& b) { return a.n_ == b.n_; }

private:
    int n_;
};

/// Real-valued samples on the nodes of a UniformGrid; immutable after
/// construction and safe to share across threads.
template <class R>
class GridFunction {
public:
    GridFunction(UniformGrid<R> grid, std::vector<R> values)
        : grid_(grid), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.node_count())
            throw std::invalid_argument("GridFunction: expected " +
                                        std::to_string(grid_.node_count()) + " values, got " +
                                        std::to_string(values_.size()));
    }

    const UniformGrid<R>& grid() const { return grid_; }
    int intervals() const { return grid_.intervals(); }
    const R& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    std::span<const R> values() const { return values_; }

private:
    UniformGrid<R> grid_;
    std::vector<R> values_;
};

template <class R>
R max_norm(const GridFunction<R>& g) {
    R m(0);
    for (const R& v : g.values())
        if (abs(v) > m) m = abs(v);
    return m;
}

/// Keeps every second value: output[i] = fine[2i]. The fine grid must have an
/// even interval count.
template <class R>
GridFunction<R> restrict_to_coarse(const GridFunction<R>& fine) {
    const int n2 = fine.intervals();
    if (n2 % 2 != 0)
        throw std::invalid_argument("restrict_to_coarse: interval count " + std::to_string(n2) +
                                    " is odd");
    const int n = n2 / 2;
    std::vector<R> vals;
    vals.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) vals.push_back(fine[2 * i]);
    return GridFunction<R>(UniformGrid<R>(n), std::move(vals));
}

/// Evaluates g at every node; a non-finite sample is reported with its node.
template <class R, class F>
GridFunction<R> sample(const UniformGrid<R>& grid, F&& g) {
    std::vector<R> vals;
    vals.reserve(static_cast<std::size_t>(grid.node_count()));
    for (int i = 0; i <= grid.intervals(); ++i) {
        R v = g(grid.node(i));
        if (!isfinite(v))
            throw std::domain_error("sample: non-finite value at node i=" + std::to_string(i) +
                                    " (x=" + scalar_traits<R>::str(grid.node(i), 17) + ")");
        vals.push_back(v);
    }
    return GridFunction<R>(grid, std::move(vals));
}

}  // namespace lane8
