#include "xpjost/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "xpjost/errors.hpp"

namespace xpjost::quad {

namespace {

GaussRule make_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
                break;
            }
        }
        r.x[i] = x;
    }
    // Recompute weights at the converged nodes.
    for (int i = 0; i < n; ++i) {
        const double x = r.x[i];
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return r.x[a] < r.x[b]; });
    GaussRule s;
    for (int i : order) {
        s.x.push_back(r.x[i]);
        s.w.push_back(r.w[i]);
    }
    // Lagrange basis integrated from -1 to x_i, using the same rule mapped to
    // [-1, x_i] (exact for the degree n-1 basis polynomials).
    auto lagrange = [&](int j, double y) {
        double v = 1.0;
        for (int m = 0; m < n; ++m)
            if (m != j) v *= (y - s.x[m]) / (s.x[j] - s.x[m]);
        return v;
    };
    s.partial.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const double hh = 0.5 * (s.x[i] + 1.0), mid = 0.5 * (s.x[i] - 1.0);
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += s.w[k] * lagrange(j, mid + hh * s.x[k]);
            s.partial[i][j] = acc * hh;
        }
    }
    return s;
}

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

Segment kronrod(const std::function<cplx(double)>& f, double a, double b) {
    const double hh = 0.5 * (b - a), mid = 0.5 * (a + b);
    const cplx fc = f(mid);
    cplx k = fc * kWgk[7];
    cplx g = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = hh * kXgk[j];
        const cplx s = f(mid - dx) + f(mid + dx);
        k += kWgk[j] * s;
        if (j % 2 == 1) g += kWg[j / 2] * s;
    }
    return {a, b, k * hh, std::abs((k - g) * hh)};
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

cplx adaptive(const std::function<cplx(double)>& f, double a, double b, double abs_tol, double rel_tol,
              int max_intervals) {
    if (a == b) return 0.0;
    std::priority_queue<Segment> heap;
    Segment first = kronrod(f, a, b);
    cplx total = first.value;
    double err = first.err;
    heap.push(first);
    int count = 1;
    if (!std::isfinite(err)) throw ConvergenceError("adaptive quadrature: non-finite integrand");
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (count >= max_intervals)
            throw ConvergenceError("adaptive quadrature: tolerance not reached");
        Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        Segment l = kronrod(f, s.a, m), r = kronrod(f, m, s.b);
        total += l.value + r.value - s.value;
        err += l.err + r.err - s.err;
        heap.push(l);
        heap.push(r);
        ++count;
        if (!std::isfinite(err)) throw ConvergenceError("adaptive quadrature: non-finite integrand");
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    cplx sum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

std::vector<double> panel_edges(double q_end, std::vector<double> breaks,
                                const std::function<double(double)>& max_width) {
    breaks.push_back(0.0);
    breaks.push_back(q_end);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> edges;
    for (double b : breaks) {
        if (b < 0.0 || b > q_end) continue;
        if (!edges.empty() && b - edges.back() <= 1e-14 * (1.0 + q_end)) continue;
        edges.push_back(b);
    }
    std::vector<double> out{edges.front()};
    for (std::size_t i = 1; i < edges.size(); ++i) {
        const double a = edges[i - 1], b = edges[i];
        double q = a;
        while (b - q > 0.0) {
            const double w = max_width(q);
            const int pieces = std::max(1, static_cast<int>(std::ceil((b - q) / w - 1e-9)));
            if (pieces == 1) {
                q = b;
            } else {
                q += (b - q) / pieces;
            }
            out.push_back(q);
        }
    }
    return out;
}

std::vector<double> simpson_weights(int n, double h) {
    if (n < 2 || n % 2 != 0) throw DomainError("simpson_weights: n must be even and >= 2");
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    for (double& v : w) v *= h / 3.0;
    return w;
}

}  // namespace xpjost::quad
