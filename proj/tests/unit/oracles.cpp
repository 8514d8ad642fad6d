#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

namespace {

using lcplx = std::complex<long double>;

// B_2, B_4, ..., B_24.
constexpr long double kBernoulli[] = {1.0L / 6,        -1.0L / 30,       1.0L / 42,         -1.0L / 30,
                                      5.0L / 66,       -691.0L / 2730,   7.0L / 6,          -3617.0L / 510,
                                      43867.0L / 798,  -174611.0L / 330, 854513.0L / 138,   -236364091.0L / 2730};

cplx em_tail(cplx s, double a, int N) {
    // Σ_{n>=N} (n + a)^{-s} by Euler-Maclaurin from the point x0 = N + a.
    const lcplx S(s.real(), s.imag());
    const long double x0 = N + a;
    const lcplx xs = std::pow(lcplx(x0), -S);
    lcplx acc = x0 * xs / (S - 1.0L) + 0.5L * xs;
    lcplx rising = S;  // s (s+1) ... (s + 2k − 2)
    long double fact = 2.0L;
    lcplx xpow = xs / x0;
    for (int k = 1; k <= 12; ++k) {
        acc += kBernoulli[k - 1] / fact * rising * xpow;
        rising *= (S + lcplx(2 * k - 1)) * (S + lcplx(2 * k));
        fact *= (2.0L * k + 1) * (2.0L * k + 2);
        xpow /= x0 * x0;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace

cplx log_gamma_shifted(cplx z, int shift) {
    lcplx w(z.real(), z.imag());
    lcplx correction = 0.0L;
    for (int k = 0; k < shift; ++k) correction += std::log(w + lcplx(k));
    w += lcplx(shift);
    const long double half_log_2pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
    lcplx acc = (w - 0.5L) * std::log(w) - w + half_log_2pi;
    lcplx wpow = w;
    for (int k = 1; k <= 10; ++k) {
        acc += kBernoulli[k - 1] / ((2.0L * k) * (2.0L * k - 1)) / wpow;
        wpow *= w * w;
    }
    acc -= correction;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

cplx hurwitz_euler_maclaurin(cplx s, double a) {
    const int N = 30 + static_cast<int>(std::abs(s.imag()));
    cplx acc = 0.0;
    for (int n = 0; n < N; ++n) acc += std::pow(cplx(n + a), -s);
    return acc + em_tail(s, a, N);
}

cplx zeta_euler_maclaurin(cplx s) { return hurwitz_euler_maclaurin(s, 1.0); }

cplx dirichlet_L_hurwitz(cplx s, int modulus) {
    const double f = modulus;
    const cplx scale = std::pow(cplx(f), -s);
    return scale * (hurwitz_euler_maclaurin(s, 1.0 / f) - hurwitz_euler_maclaurin(s, (f - 1.0) / f));
}

double dense_pv(const std::function<double(double)>& g, double x, double d, double h) {
    const double r = std::min(d - x, d + x);
    const int k = static_cast<int>(std::floor(r / h));
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
        const double u = (j + 0.5) * h;
        acc += (g(x + u) - g(x - u)) / u * h;
    }
    // Remainder away from the pole on the longer side.
    const double lo = x + k * h, hi = d;
    const double lo2 = -d, hi2 = x - k * h;
    auto plain = [&](double a, double b) {
        if (b <= a) return 0.0;
        const int m = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
        const double step = (b - a) / m;
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
            const double y = a + (j + 0.5) * step;
            s += g(y) / (y - x) * step;
        }
        return s;
    };
    acc += plain(lo, hi) + plain(lo2, hi2);
    return acc / std::numbers::pi;
}

cplx brute_R(const std::function<double(double)>& f, cplx E, double Q, int n) {
    const double h = Q / n;
    const cplx I(0.0, 1.0);
    cplx acc = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double q = j * h, w = (j == 0 || j == n) ? 0.5 : 1.0;
        acc += w * f(q) * std::exp(I * E * q);
    }
    return (I * E / 2.0) * acc * h;
}

cplx brute_S(const std::function<double(double)>& f, const std::function<double(double)>& g, cplx E, double Q,
             int n) {
    const double h = Q / n;
    const cplx I(0.0, 1.0);
    cplx same = 0.0, ordered = 0.0, inner = 0.0;
    cplx prev_g = g(0.0);
    for (int j = 0; j <= n; ++j) {
        const double q = j * h, w = (j == 0 || j == n) ? 0.5 : 1.0;
        const cplx gq = g(q) * std::exp(-I * E * q);
        if (j > 0) inner += 0.5 * h * (prev_g + gq);
        prev_g = gq;
        same += w * h * f(q) * g(q);
        ordered += w * h * f(q) * std::exp(I * E * q) * inner;
    }
    return (I * E / 2.0) * same - (E * E / 2.0) * ordered;
}

std::array<double, 4> antisymmetric4_eigenvalues(const std::array<std::array<double, 4>, 4>& K) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) s += K[j][k] * K[j][k];
    const double pf = K[0][1] * K[2][3] - K[0][2] * K[1][3] + K[0][3] * K[1][2];
    // Eigenvalues of K are ±iω with ω⁴ − s ω² + pf² = 0; those of iK are ∓ω.
    const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * pf * pf));
    const double w1 = std::sqrt(0.5 * (s + disc)), w2 = std::sqrt(std::max(0.0, 0.5 * (s - disc)));
    return {-w1, -w2, w2, w1};
}

std::array<cplx, 2> algebraic_pair_zeros(double a1, double b1, double mu1, double mu2) {
    const double rho = a1 * b1 * (mu1 - mu2) / (2.0 * (mu1 + mu2));
    const double kappa = rho * rho / 4.0 - rho;
    const cplx A = 1.0 + kappa, B(0.0, mu1 + mu2), C = -mu1 * mu2;
    const cplx root = std::sqrt(B * B - 4.0 * A * C);
    return {(-B + root) / (2.0 * A), (-B - root) / (2.0 * A)};
}

xpjost::PotentialSpec random_step(std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-2.0, 2.0), edge(0.2, 3.0);
    return xpjost::Step{amp(rng), edge(rng)};
}

xpjost::PotentialSpec random_expsum(std::mt19937& rng, int terms) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0), rate(0.3, 4.0);
    xpjost::ExpSum s;
    for (int i = 0; i < terms; ++i) s.terms.push_back({coef(rng), rate(rng)});
    return s;
}

xpjost::ModelSpec random_real_model(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    switch (pick(rng)) {
        case 0: return xpjost::make_m1(random_step(rng));
        case 1: return xpjost::make_m1(random_expsum(rng));
        case 2: return xpjost::make_m2(random_step(rng), random_step(rng));
        default: return xpjost::make_m2(random_expsum(rng), random_expsum(rng));
    }
}

}  // namespace oracle
