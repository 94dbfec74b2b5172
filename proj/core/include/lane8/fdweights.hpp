#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "lane8/grid.hpp"

namespace lane8 {

/// Finite-difference weights for the n-th derivative with accuracy order m.
/// The window is w = n+m consecutive nodes; `offsets` are node indices
/// relative to the evaluation index and `weights` carry units of 1/h^n,
/// applied when the stencil is evaluated on a grid function.
template <class R>
struct Stencil {
    int deriv_order;    // n
    int accuracy_order; // m
    std::vector<int> offsets;
    std::vector<R> weights;

    int width() const { return static_cast<int>(offsets.size()); }
};

namespace detail {

// Weights of the n-th derivative at offset 0 given node offsets; the usual
// divided-difference recurrence, exact on polynomials of degree < w.
template <class R>
std::vector<R> fornberg_weights(const std::vector<int>& offs, int n) {
    const int w = static_cast<int>(offs.size());
    std::vector<std::vector<R>> c(static_cast<std::size_t>(w),
                                  std::vector<R>(static_cast<std::size_t>(n) + 1, R(0)));
    c[0][0] = R(1);
    R c1(1);
    R c4 = R(offs[0]);
    for (int i = 1; i < w; ++i) {
        const int mn = std::min(i, n);
        R c2(1);
        R c5 = c4;
        c4 = R(offs[i]);
        for (int j = 0; j < i; ++j) {
            const R c3 = R(offs[i] - offs[j]);
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (R(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - R(k) * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<R> out;
    out.reserve(static_cast<std::size_t>(w));
    for (int j = 0; j < w; ++j) out.push_back(c[j][n]);
    return out;
}

}  // namespace detail

/// Builds the w = n+m point stencil at grid index i. The window is centered
/// on i where possible (even widths break toward the left) and shifted
/// minimally to stay inside [0, N].
template <class R>
Stencil<R> make_stencil(int n, int m, int i, int N) {
    if (n < 1 || m < 1) throw std::invalid_argument("make_stencil: need n >= 1 and m >= 1");
    const int w = n + m;
    if (w > N + 1)
        throw std::invalid_argument("make_stencil: grid too small, window of " +
                                    std::to_string(w) + " points exceeds " +
                                    std::to_string(N + 1) + " nodes");
    if (i < 0 || i > N) throw std::out_of_range("make_stencil: index outside grid");
    int j0 = (w % 2 == 1) ? i - (w - 1) / 2 : i - w / 2;
    j0 = std::clamp(j0, 0, N - w + 1);

    Stencil<R> st;
    st.deriv_order = n;
    st.accuracy_order = m;
    st.offsets.reserve(static_cast<std::size_t>(w));
    for (int j = j0; j < j0 + w; ++j) st.offsets.push_back(j - i);
    st.weights = detail::fornberg_weights<R>(st.offsets, n);
    return st;
}

/// sum_j weights[j] * g[i + offsets[j]] / h^n
template <class R>
R apply(const Stencil<R>& st, const GridFunction<R>& g, int i) {
    const int N = g.intervals();
    if (i + st.offsets.front() < 0 || i + st.offsets.back() > N)
        throw std::out_of_range("apply: stencil window leaves the grid at i=" + std::to_string(i));
    R acc(0);
    for (std::size_t j = 0; j < st.offsets.size(); ++j)
        acc += st.weights[j] * g[i + st.offsets[j]];
    R hn(1);
    const R h = g.grid().step();
    for (int p = 0; p < st.deriv_order; ++p) hn *= h;
    return acc / hn;
}

}  // namespace lane8
