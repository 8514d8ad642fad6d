#include "xpjost/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xpjost/errors.hpp"
#include "xpjost/quadrature.hpp"
#include "xpjost/specialfn.hpp"

namespace xpjost {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// ln((d − x)/(d + x)), the PV integral of 1/(y − x) over [−d, d].
double window_log(double d, double x) { return std::log1p(-x / d) - std::log1p(x / d); }

}  // namespace

void validate(const PVWindow& win) {
    if (!(win.mesh > 0.0) || !std::isfinite(win.d) || !(win.d > 10.0 * win.mesh))
        throw ConfigError("PV window requires d > 10 * mesh > 0");
}

template <class T>
PVTransform<T>::PVTransform(std::function<T(double)> g, PVWindow win) : g_(std::move(g)), win_(win) {
    validate(win_);
    int n = static_cast<int>(std::lround(2.0 * win_.d / win_.mesh));
    if (n % 2 == 1) ++n;
    const double h = 2.0 * win_.d / n;
    grid_.resize(n + 1);
    values_.resize(n + 1);
    for (int j = 0; j <= n; ++j) grid_[j] = -win_.d + j * h;
    grid_[n / 2] = 0.0;
    for (int j = 0; j <= n; ++j) values_[j] = g_(grid_[j]);
    weights_ = quad::simpson_weights(n, h);
}

template <class T>
T PVTransform<T>::operator()(double x) const {
    return at(x, g_(x));
}

template <class T>
T PVTransform<T>::at(double x, T g_x) const {
    const double d = win_.d;
    if (std::abs(x) > d - 10.0 * win_.mesh)
        throw WindowError("principal value: x = " + std::to_string(x) + " too close to the window edge");
    const int n = static_cast<int>(grid_.size()) - 1;
    const double h = 2.0 * d / n;
    T acc{};
    for (int j = 0; j <= n; ++j) {
        const double dy = grid_[j] - x;
        if (std::abs(dy) < 1e-6 * h) {
            // Integrand limit g'(x) from a centred stencil on the grid.
            T deriv;
            if (j >= 2 && j <= n - 2)
                deriv = (values_[j - 2] - 8.0 * values_[j - 1] + 8.0 * values_[j + 1] - values_[j + 2]) / (12.0 * h);
            else
                deriv = (values_[j + 1] - values_[j - 1]) / (2.0 * h);
            acc += weights_[j] * deriv;
        } else {
            acc += weights_[j] * (values_[j] - g_x) / dy;
        }
    }
    return (acc + g_x * window_log(d, x)) / kPi;
}

template <class T>
T PVTransform<T>::edge_level() const {
    T acc{};
    int count = 0;
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        if (std::abs(grid_[j]) > 0.9 * win_.d) {
            acc += values_[j];
            ++count;
        }
    }
    return acc / double(count);
}

template class PVTransform<double>;
template class PVTransform<cplx>;

double hilbert_pv(const RealFn& g, double x, const PVWindow& win) { return PVTransform<double>(g, win)(x); }

SpectralS::SpectralS(ComplexFn fhat, ComplexFn ghat, PVWindow win)
    : fhat_(std::move(fhat)),
      ghat_(std::move(ghat)),
      pv_([this](double t) { return t * fhat_(t) * ghat_(-t); }, win) {}

cplx SpectralS::operator()(double E) const {
    if (E == 0.0) return 0.0;
    const double d = pv_.window().d;
    const cplx fE = fhat_(E), gE = ghat_(-E);
    const cplx inner = pv_.at(E, E * fE * gE);
    // h(t) ≈ K/t beyond the window; ∫_d^∞ dt/(t(t−E)) and ∫_{−∞}^{−d} in closed form.
    const cplx k_right = d * pv_.right_value();
    const cplx k_left = -d * pv_.left_value();
    const double right = -std::log1p(-E / d) / E;
    const double left = std::log1p(E / d) / E;
    const cplx tail = (k_right * right + k_left * left) / kPi;
    return -(E * E / 4.0) * fE * gE + (kI * E / 4.0) * (inner + tail);
}

cplx s_spectral(const ComplexFn& fhat, const ComplexFn& ghat, double E, const PVWindow& win) {
    return SpectralS(fhat, ghat, win)(E);
}

Dispersion::Dispersion(RealFn f1sq, PVWindow win)
    : f1sq_(std::move(f1sq)), pv_(f1sq_, win), level_(pv_.edge_level()) {}

cplx Dispersion::operator()(double E) const {
    const double g = f1sq_(E);
    const double h = pv_.at(E, g) - level_ * window_log(pv_.window().d, E) / kPi;
    return {g, -h};
}

cplx F1_dispersion(const RealFn& f1sq, double E, const PVWindow& win) { return Dispersion(f1sq, win)(E); }

FZIntegral::FZIntegral(PVWindow win)
    : pv_(
          [](double t) {
              const double z = riemann_siegel_Z(std::abs(t));
              return z * z;
          },
          win) {}

cplx FZIntegral::operator()(double E) const {
    const double z = riemann_siegel_Z(std::abs(E));
    return {z * z, -pv_.at(E, z * z)};
}

double FZIntegral::tail_bound(double E) const {
    const double d = pv_.window().d;
    // (2|E|/π) ∫_d^∞ t^{1/2}/(t² − E²) dt <= (2|E|/π) (2/√d) / (1 − E²/d²).
    return 4.0 * std::abs(E) / (kPi * std::sqrt(d)) / (1.0 - (E * E) / (d * d));
}

cplx FZ_integral(double E, const PVWindow& win) { return FZIntegral(win)(E); }

cplx series_p(cplx t) { return std::pow(2.0, 0.5 + kI * t) - 1.0; }

namespace {

cplx fz_series_raw(cplx t, int M);

// Distance from t to the nearest zero of p(t) or p(−t), t = ±(i/2 + 2πk/ln 2).
double distance_to_p_zero(cplx t) {
    const double period = 2.0 * std::numbers::pi / std::log(2.0);
    double best = std::numeric_limits<double>::infinity();
    for (double sign : {1.0, -1.0}) {
        const cplx u = sign * t;
        const cplx zero(std::round(u.real() / period) * period, 0.5);
        best = std::min(best, std::abs(u - zero));
    }
    return best;
}

}  // namespace

cplx FZ_series(cplx t, int M) {
    if (M < 1) throw DomainError("FZ_series: M must be positive");
    if (M > 100000) throw DomainError("FZ_series: M above the 1e5 guard");
    // The 1/p poles cancel between terms already at finite M; evaluate the
    // removable point by the mean over a small circle.
    if (distance_to_p_zero(t) < 1e-3) {
        constexpr int kPoints = 16;
        cplx acc = 0.0;
        for (int j = 0; j < kPoints; ++j)
            acc += fz_series_raw(t + 1e-2 * std::exp(kI * (2.0 * std::numbers::pi * (j + 0.5) / kPoints)), M);
        return acc / double(kPoints);
    }
    return fz_series_raw(t, M);
}

namespace {

cplx fz_series_raw(cplx t, int M) {
    const cplx s = 0.5 + kI * t, sb = 0.5 - kI * t;
    const cplx pt = series_p(t), pm = series_p(-t);

    // a_n = (−1)^n n^{-(1/2 − it)}, b_m = (−1)^m m^{-(1/2 + it)}, u_n = 2(−1)^n n^{s−1}.
    std::vector<cplx> a(M + 1), b(M + 1), u_pref(M + 1, 0.0), ub_pref(M + 1, 0.0);
    std::vector<cplx> m_s(M + 1), m_sb(M + 1);
    double harmonic = 0.0;
    for (int n = 1; n <= M; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        const double ln = std::log(double(n));
        m_s[n] = std::exp(-s * ln);
        m_sb[n] = std::exp(-sb * ln);
        a[n] = sgn * m_sb[n];
        b[n] = sgn * m_s[n];
        u_pref[n] = u_pref[n - 1] + 2.0 * sgn * std::exp((s - 1.0) * ln);
        ub_pref[n] = ub_pref[n - 1] + 2.0 * sgn * std::exp((sb - 1.0) * ln);
        harmonic += 1.0 / n;
    }
    cplx ordered = 0.0, b_prefix = 0.0;
    for (int n = 1; n <= M; ++n) {
        ordered += a[n] * b_prefix;
        b_prefix += b[n];
    }
    // Σ_{n>m} 2(−1)^{n+m}/n [2^{s {log2(n/m)}}/p(t) − 2^{sb {log2(n/m)}}/p(−t)], grouped by
    // k = floor(log2(n/m)) so that 2^{s{·}} = (n/m)^s 2^{−sk} factorizes.
    const cplx half_s = std::pow(2.0, -s), half_sb = std::pow(2.0, -sb);
    cplx fractional = 0.0;
    for (int m = 1; m < M; ++m) {
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        cplx scale_s = m_s[m] / pt, scale_sb = m_sb[m] / pm;
        long long lo = m + 1, upper = 2LL * m;
        while (lo <= M) {
            const long long hi = std::min<long long>(M, upper - 1);
            if (hi >= lo) {
                fractional += sgn * (scale_s * (u_pref[hi] - u_pref[lo - 1]) -
                                     scale_sb * (ub_pref[hi] - ub_pref[lo - 1]));
            }
            lo = std::max(lo, upper);
            upper *= 2;
            scale_s *= half_s;
            scale_sb *= half_sb;
        }
    }
    const cplx ppm = pt * pm;
    return 2.0 / ppm * ordered + (1.0 + pt - pm) / ppm * harmonic - fractional;
}

}  // namespace

}  // namespace xpjost
