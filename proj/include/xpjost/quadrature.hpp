#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace xpjost::quad {

using cplx = std::complex<double>;

/// Gauss-Legendre rule on [-1, 1] plus the matrix that integrates the
/// interpolating polynomial from -1 up to each node.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<std::vector<double>> partial;  // partial[i][j] = ∫_{-1}^{x_i} ℓ_j
};

/// Cached n-point rule (thread safe after first use per n).
const GaussRule& gauss_rule(int n);

/// Fixed-order Gauss-Legendre on [a, b].
template <class F>
auto gauss(F&& f, double a, double b, int n = 16) {
    const GaussRule& r = gauss_rule(n);
    const double hh = 0.5 * (b - a), mid = 0.5 * (a + b);
    decltype(f(a)) acc{};
    for (int i = 0; i < n; ++i) acc += r.w[i] * f(mid + hh * r.x[i]);
    return acc * hh;
}

/// Adaptive Gauss-Kronrod (7/15) integration of a complex integrand on [a, b].
/// Throws ConvergenceError if the error estimate stays above
/// max(abs_tol, rel_tol*|I|) after max_intervals subdivisions.
cplx adaptive(const std::function<cplx(double)>& f, double a, double b, double abs_tol = 1e-12,
              double rel_tol = 1e-10, int max_intervals = 20000);

/// Panels covering [0, q_end] with all `breaks` as panel edges and no panel
/// longer than max_width(q) evaluated at the panel start.
std::vector<double> panel_edges(double q_end, std::vector<double> breaks,
                                const std::function<double(double)>& max_width);

/// Composite Simpson weights for n+1 equispaced nodes (n even) with spacing h.
std::vector<double> simpson_weights(int n, double h);

}  // namespace xpjost::quad
