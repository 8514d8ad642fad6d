#include "xpjost/specialfn.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "xpjost/errors.hpp"

namespace xpjost {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k-1)) for k = 1..9.
constexpr double kStirling[] = {
    1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,          -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,    43867.0 / 244188.0,
};

// Weights (d_n - d_k)/d_n of the Borwein/Cohen-Villegas-Zagier transform for
// an alternating series, cached per thread and per n.
const std::vector<double>& alternating_weights(int n) {
    thread_local std::map<int, std::vector<double>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // log tau_i with tau_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), tau_0 = 1.
    std::vector<double> log_tau(n + 1);
    double log_max = 0.0;
    for (int i = 0; i <= n; ++i) {
        log_tau[i] = (i == 0) ? 0.0
                              : std::log(double(n)) + std::lgamma(double(n + i)) +
                                    i * std::log(4.0) - std::lgamma(double(n - i + 1)) -
                                    std::lgamma(double(2 * i + 1));
        log_max = std::max(log_max, log_tau[i]);
    }
    std::vector<double> suffix(n + 2, 0.0);
    for (int i = n; i >= 0; --i) suffix[i] = suffix[i + 1] + std::exp(log_tau[i] - log_max);
    std::vector<double> w(n);
    for (int k = 0; k < n; ++k) w[k] = suffix[k + 1] / suffix[0];
    return cache.emplace(n, std::move(w)).first->second;
}

// Accelerated sum of sum_{k>=0} (-1)^k term(k). The truncation is increased
// until two successive estimates agree to opts.tolerance.
template <class Term>
cplx accelerated_alternating(Term term, double im_s, const SeriesOptions& opts,
                             const char* what) {
    auto partial = [&](int n) {
        const auto& w = alternating_weights(n);
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            acc += sgn * w[k] * term(k);
        }
        return acc;
    };
    int budget = opts.term_budget;
    int n = 40 + static_cast<int>(std::ceil(0.9 * std::abs(im_s)));
    cplx prev = partial(std::min(n, budget));
    for (int doubling = 0; doubling <= opts.max_doublings;) {
        const int next = n + n / 4 + 10;
        if (next > budget) {
            ++doubling;
            budget *= 2;
            continue;
        }
        cplx cur = partial(next);
        const double scale = std::max(1.0, std::abs(cur));
        if (std::abs(cur - prev) <= opts.tolerance * scale) return cur;
        prev = cur;
        n = next;
    }
    throw ConvergenceError(std::string(what) + ": accelerated series did not converge within the term budget");
}

// Hurwitz zeta(s, a) by Euler-Maclaurin summation, Re s > 0, s != 1, 0 < a <= 1.
cplx hurwitz_zeta(cplx s, double a, double tolerance) {
    // B_{2j} / (2j)! for j = 1..12.
    static constexpr double kB[] = {
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
        -3617.0 / 10670622842880000.0,
        43867.0 / 5109094217170944000.0,
        -174611.0 / 802857662698291200000.0,
        77683.0 / 14101100039391805440000.0,
        -236364091.0 / 1693824136731743669452800000.0,
    };
    const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
    cplx sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::exp(-s * std::log(k + a));
    const double x = N + a;
    const cplx xs = std::exp(-s * std::log(x));
    sum += x * xs / (s - 1.0) + 0.5 * xs;
    cplx rising = s;  // s (s+1) ... (s+2j-2)
    cplx pw = xs / x;
    cplx term = 0.0;
    for (int j = 0; j < 12; ++j) {
        term = kB[j] * rising * pw;
        sum += term;
        rising *= (s + double(2 * j + 1)) * (s + double(2 * j + 2));
        pw /= x * x;
    }
    if (std::abs(term) > tolerance * std::max(1.0, std::abs(sum)))
        throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin remainder above tolerance");
    return sum;
}

}  // namespace

cplx log_gamma(cplx z) {
    if (!(z.real() > 0.0)) throw DomainError("log_gamma: requires Re z > 0");
    cplx shift = 0.0;
    while (std::abs(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx pw = inv;
    for (double c : kStirling) {
        series += c * pw;
        pw *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

double riemann_siegel_theta(double t) {
    if (t < 0.0) return -riemann_siegel_theta(-t);
    if (t == 0.0) return 0.0;
    return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

cplx zeta(cplx s, const SeriesOptions& opts) {
    if (!(s.real() > 0.0)) throw DomainError("zeta: requires Re s > 0");
    const cplx denom = 1.0 - std::pow(2.0, 1.0 - s);
    if (std::abs(denom) < 1e-14) throw PoleError("zeta: pole at s = 1");
    const cplx eta = accelerated_alternating(
        [&](int k) { return std::exp(-s * std::log(double(k + 1))); }, s.imag(), opts, "zeta");
    return eta / denom;
}

cplx zeta_critical(double t, const SeriesOptions& opts) {
    if (t < 0.0) return std::conj(zeta_critical(-t, opts));
    return zeta(cplx(0.5, t), opts);
}

double riemann_siegel_Z(double t) {
    const double th = riemann_siegel_theta(t);
    const cplx v = std::exp(cplx(0.0, th)) * zeta_critical(t);
    if (std::abs(v.imag()) > 1e-6)
        throw ConsistencyError("riemann_siegel_Z: Im[e^{i theta} zeta] = " + std::to_string(v.imag()));
    return v.real();
}

cplx dirichlet_L(cplx s, int modulus, const SeriesOptions& opts) {
    if (!(s.real() > 0.0)) throw DomainError("dirichlet_L: requires Re s > 0");
    if (modulus == 4) {
        return accelerated_alternating(
            [&](int k) { return std::exp(-s * std::log(double(2 * k + 1))); }, s.imag(), opts,
            "dirichlet_L");
    }
    if (modulus == 3) {
        // chi = (1, -1, 0). The nonzero terms do alternate, but n = 1, 2, 4, 5, ...
        // is not smooth in the index, which defeats the alternating transform.
        return std::exp(-s * std::log(3.0)) *
               (hurwitz_zeta(s, 1.0 / 3.0, opts.tolerance) - hurwitz_zeta(s, 2.0 / 3.0, opts.tolerance));
    }
    throw DomainError("dirichlet_L: modulus must be 3 or 4");
}

cplx dirichlet_L_critical(double t, int modulus, const SeriesOptions& opts) {
    if (t < 0.0) return std::conj(dirichlet_L_critical(-t, modulus, opts));
    return dirichlet_L(cplx(0.5, t), modulus, opts);
}

double smooth_counting(double E) {
    if (E == 0.0) return 1.0;
    const double im = (E > 0.0) ? log_gamma(cplx(0.25, 0.5 * E)).imag()
                                : -log_gamma(cplx(0.25, -0.5 * E)).imag();
    return im / kPi - E / (2.0 * kPi) * std::log(kPi) + 1.0;
}

double smooth_counting_asymptotic(double E) {
    const double u = E / (2.0 * kPi);
    return u * (std::log(u) - 1.0) + 7.0 / 8.0;
}

double smooth_zero(int n) {
    if (n < 1) throw DomainError("smooth_zero: n must be positive");
    const double target = (n - 1.5) * kPi;
    // theta has its minimum near t = 6.2898 and increases beyond it.
    double lo = 6.29;
    if (riemann_siegel_theta(lo) > target) throw ConvergenceError("smooth_zero: target below the increasing branch");
    double hi = 20.0;
    int guard = 0;
    while (riemann_siegel_theta(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 40) throw ConvergenceError("smooth_zero: bracket search exhausted");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (riemann_siegel_theta(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

cplx zeta_hardy(cplx s) {
    if (std::abs(s - 1.0) < 1e-10) return 1.0;
    return (s - 1.0) * zeta(s) / s;
}

CountingPoint counting_point(double t) {
    CountingPoint p;
    p.t = t;
    p.theta = riemann_siegel_theta(t);
    p.zeta = zeta_critical(t);
    p.Z = (std::exp(cplx(0.0, p.theta)) * p.zeta).real();
    p.n_smooth = p.theta / kPi + 1.0;
    return p;
}

}  // namespace xpjost
