#include "xpjost/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xpjost/errors.hpp"
#include "xpjost/quadrature.hpp"
#include "xpjost/specialfn.hpp"

namespace xpjost {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
}

// Partial sums A(x) = Σ_{n<=x} χ(n) over one period, and the constant
// B = -Σ_a a χ(a) / f that makes B - A(x) mean-free.
int character_prefix(int modulus, long long floor_x) {
    const long long r = floor_x % modulus;
    if (modulus == 4) return (r == 1 || r == 2) ? 1 : 0;
    return r == 1 ? 1 : 0;
}

double character_offset(int modulus) { return modulus == 4 ? 0.5 : 1.0 / 3.0; }

int character(int modulus, long long n) {
    const long long r = n % modulus;
    if (modulus == 4) return r == 1 ? 1 : (r == 3 ? -1 : 0);
    return r == 1 ? 1 : (r == 2 ? -1 : 0);
}

// Value of an analytic function at z0 from its mean on a small circle; used at
// removable singularities of closed forms.
template <class F>
cplx circle_mean(F&& f, cplx z0, double radius) {
    constexpr int kPoints = 16;
    cplx acc = 0.0;
    for (int j = 0; j < kPoints; ++j) acc += f(z0 + radius * std::exp(kI * (2.0 * kPi * (j + 0.5) / kPoints)));
    return acc / double(kPoints);
}

cplx bessel_hat_raw(const BesselHalf& p, cplx t) {
    const cplx it = kI * t;
    const double lam = p.lambda;
    // Mellin transform of c J_{1/2}(λx) x^{-1} over (0, ∞) ...
    const cplx whole = p.c * std::exp((it - 1.0) * std::log(2.0) - it * std::log(lam) +
                                      log_gamma_continued((0.5 + it) / 2.0) -
                                      log_gamma_continued(1.0 + (0.5 - it) / 2.0));
    // ... minus the (0, 1) part, from the power series of sin(λx).
    std::complex<long double> series = 0.0L;
    const std::complex<long double> itl(it.real(), it.imag());
    long double term = lam;  // λ^{2k+1}/(2k+1)!
    for (int k = 0; k < 400; ++k) {
        const std::complex<long double> contrib = term / (2.0L * k + 0.5L + itl);
        series += (k % 2 == 0) ? contrib : -contrib;
        if (k > lam && std::abs(contrib) < 1e-22L * (1.0L + std::abs(series))) break;
        term *= (long double)lam * lam / ((2.0L * k + 2.0L) * (2.0L * k + 3.0L));
    }
    const cplx head(static_cast<double>(series.real()), static_cast<double>(series.imag()));
    return whole - p.c * std::sqrt(2.0 / (kPi * lam)) * head;
}

cplx bessel_hat(const BesselHalf& p, cplx t) {
    // Removable singularities where 2k + 1/2 + it = 0.
    for (int k = 0; k < 400; ++k) {
        const cplx pole(0.0, 2.0 * k + 0.5);
        if (std::abs(t - pole) < 0.05) return circle_mean([&](cplx z) { return bessel_hat_raw(p, z); }, t, 0.1);
        if (pole.imag() > t.imag() + 1.0) break;
    }
    return bessel_hat_raw(p, t);
}

cplx sawtooth_hat_raw(const SawtoothZeta& p, cplx t) {
    const cplx s = 0.5 - kI * t;
    return p.c / s * (zeta(s) + 1.0 / (0.5 + kI * t) - 0.5);
}

cplx sawtooth_hat(const SawtoothZeta& p, cplx t) {
    if (t.imag() <= -0.5) throw DomainError("fourier_hat: SawtoothZeta requires Im E > -1/2");
    // ζ(s) and 1/(1/2 + it) have cancelling poles at t = i/2.
    if (std::abs(t - cplx(0.0, 0.5)) < 0.05)
        return circle_mean([&](cplx z) { return sawtooth_hat_raw(p, z); }, t, 0.1);
    return sawtooth_hat_raw(p, t);
}

cplx dirichlet_hat_raw(const DirichletSaw& p, cplx t) {
    const cplx s = 0.5 - kI * t;
    const double f = p.modulus;
    return p.c * kPi / std::sqrt(f) * (character_offset(p.modulus) - dirichlet_L(s, p.modulus)) / s;
}

cplx dirichlet_hat(const DirichletSaw& p, cplx t) {
    if (t.imag() <= -0.5) throw DomainError("fourier_hat: DirichletSaw requires Im E > -1/2");
    // L(s) is regular at s = 1 but its evaluation is a removable 0/0 there.
    if (std::abs(t - cplx(0.0, 0.5)) < 0.05)
        return circle_mean([&](cplx z) { return dirichlet_hat_raw(p, z); }, t, 0.1);
    return dirichlet_hat_raw(p, t);
}

double sampled_value(const GridPotential& g, double q) {
    if (q < 0.0 || q > g.q_max) return 0.0;
    if (q == g.q_max) return g.values.back();
    const double u = q / g.h();
    const int j = std::min(static_cast<int>(u), g.n() - 2);
    const double frac = u - j;
    return g.values[j] + frac * (g.values[j + 1] - g.values[j]);
}

}  // namespace

cplx log_gamma_continued(cplx z) {
    cplx shift = 0.0;
    while (z.real() <= 0.5) {
        if (std::abs(z - std::round(z.real())) < 1e-14 && z.real() <= 0.0)
            throw PoleError("log_gamma_continued: pole of Γ");
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma(z) - shift;
}

cplx exp_integral(cplx k, double e) {
    if (std::isinf(e)) {
        if (k == 0.0) throw PoleError("exp_integral: divergent integral (k = 0, infinite edge)");
        return 1.0 / k;
    }
    const cplx x = k * e;
    if (std::abs(x) < 1e-3) return e * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0 + x * x * x * x / 120.0);
    return (1.0 - std::exp(-x)) / k;
}

void validate(const PotentialSpec& p) {
    std::visit(overloaded{
                   [](const Step& s) {
                       require_finite(s.amplitude, "step amplitude");
                       require_finite(s.q_edge, "step q_edge");
                       if (s.q_edge <= 0.0) throw ConfigError("step q_edge must be positive");
                   },
                   [](const ExpSum& s) {
                       for (const auto& t : s.terms) {
                           require_finite(t.coef, "exp_sum coef");
                           require_finite(t.rate, "exp_sum rate");
                           if (t.rate <= 0.0) throw ConfigError("exp_sum rates must be positive");
                       }
                   },
                   [](const BesselHalf& s) {
                       require_finite(s.c, "bessel c");
                       require_finite(s.lambda, "bessel lambda");
                       if (s.lambda <= 0.0) throw ConfigError("bessel lambda must be positive");
                   },
                   [](const SawtoothZeta& s) { require_finite(s.c, "sawtooth c"); },
                   [](const DirichletSaw& s) {
                       require_finite(s.c, "dirichlet c");
                       if (s.modulus != 3 && s.modulus != 4) throw ConfigError("dirichlet modulus must be 3 or 4");
                   },
                   [](const ConstantOne&) {},
                   [](const Sampled& s) {
                       require_finite(s.grid.q_max, "sampled q_max");
                       if (s.grid.q_max <= 0.0) throw ConfigError("sampled q_max must be positive");
                       if (s.grid.n() < 2) throw ConfigError("sampled grid needs at least 2 values");
                       for (double v : s.grid.values) require_finite(v, "sampled value");
                   },
               },
               p);
}

std::string family_name(const PotentialSpec& p) {
    return std::visit(overloaded{
                          [](const Step&) { return std::string("step"); },
                          [](const ExpSum&) { return std::string("exp_sum"); },
                          [](const BesselHalf&) { return std::string("bessel_half"); },
                          [](const SawtoothZeta&) { return std::string("sawtooth_zeta"); },
                          [](const DirichletSaw&) { return std::string("dirichlet_saw"); },
                          [](const ConstantOne&) { return std::string("constant_one"); },
                          [](const Sampled&) { return std::string("sampled"); },
                      },
                      p);
}

bool is_zero(const PotentialSpec& p) {
    return std::visit(overloaded{
                          [](const Step& s) { return s.amplitude == 0.0; },
                          [](const ExpSum& s) {
                              return std::all_of(s.terms.begin(), s.terms.end(),
                                                 [](const ExpTerm& t) { return t.coef == 0.0; });
                          },
                          [](const BesselHalf& s) { return s.c == 0.0; },
                          [](const SawtoothZeta& s) { return s.c == 0.0; },
                          [](const DirichletSaw& s) { return s.c == 0.0; },
                          [](const ConstantOne&) { return false; },
                          [](const Sampled& s) {
                              return std::all_of(s.grid.values.begin(), s.grid.values.end(),
                                                 [](double v) { return v == 0.0; });
                          },
                      },
                      p);
}

bool is_decaying(const PotentialSpec& p) { return !std::holds_alternative<ConstantOne>(p); }

double eval_q(const PotentialSpec& p, double q) {
    return std::visit(overloaded{
                          [q](const Step& s) { return (q >= 0.0 && q < s.q_edge) ? s.amplitude : 0.0; },
                          [q](const ExpSum& s) {
                              double v = 0.0;
                              for (const auto& t : s.terms) v += t.coef * std::exp(-t.rate * q);
                              return v;
                          },
                          [q](const BesselHalf& s) {
                              const double x = std::exp(q);
                              return s.c * std::sin(s.lambda * x) * std::sqrt(2.0 / (kPi * s.lambda * x));
                          },
                          [q](const SawtoothZeta& s) {
                              const double x = std::exp(q);
                              return s.c * (std::floor(x) - x + 0.5) / std::sqrt(x);
                          },
                          [q](const DirichletSaw& s) {
                              const double x = std::exp(q);
                              const double a = character_prefix(s.modulus, static_cast<long long>(std::floor(x)));
                              return s.c * kPi / std::sqrt(double(s.modulus)) * (character_offset(s.modulus) - a) /
                                     std::sqrt(x);
                          },
                          [](const ConstantOne&) { return 1.0; },
                          [q](const Sampled& s) { return sampled_value(s.grid, q); },
                      },
                      p);
}

double eval_q_left(const PotentialSpec& p, double q) {
    if (const auto* s = std::get_if<Step>(&p)) return (q >= 0.0 && q <= s->q_edge) ? s->amplitude : 0.0;
    if (const auto* s = std::get_if<SawtoothZeta>(&p)) {
        const double x = std::exp(q);
        double fl = std::floor(x);
        if (fl == x) fl -= 1.0;
        return s->c * (fl - x + 0.5) / std::sqrt(x);
    }
    return eval_q(p, q);
}

cplx fourier_hat(const PotentialSpec& p, cplx E) {
    return std::visit(
        overloaded{
            [E](const Step& s) { return s.amplitude * exp_integral(-kI * E, s.q_edge); },
            [E](const ExpSum& s) {
                cplx acc = 0.0;
                for (const auto& t : s.terms) {
                    const cplx k = t.rate - kI * E;
                    if (std::abs(k) < 1e-14 * (1.0 + t.rate)) throw PoleError("fourier_hat: pole at E = -i*rate");
                    acc += t.coef / k;
                }
                return acc;
            },
            [E](const BesselHalf& s) { return bessel_hat(s, E); },
            [E](const SawtoothZeta& s) { return sawtooth_hat(s, E); },
            [E](const DirichletSaw& s) { return dirichlet_hat(s, E); },
            [E](const ConstantOne&) {
                if (std::abs(E) < 1e-300) throw PoleError("fourier_hat: constant potential at E = 0");
                return exp_integral(-kI * E, kInfinite);
            },
            [E](const Sampled& s) {
                const GridPotential& g = s.grid;
                cplx acc = 0.0;
                for (int j = 0; j + 1 < g.n(); ++j) {
                    const double a = j * g.h(), b = (j + 1) * g.h();
                    acc += quad::gauss(
                        [&](double q) {
                            const double v = g.values[j] + (q - a) / g.h() * (g.values[j + 1] - g.values[j]);
                            return v * std::exp(kI * E * q);
                        },
                        a, b, 16);
                }
                return acc;
            },
        },
        p);
}

cplx fourier_hat_quadrature(const PotentialSpec& p, cplx E, double x_max) {
    if (std::holds_alternative<BesselHalf>(p) || std::holds_alternative<SawtoothZeta>(p) ||
        std::holds_alternative<DirichletSaw>(p)) {
        // ∫_1^{x_max} a(x) x^{iE - 1} dx between consecutive zeros / jumps.
        std::vector<double> nodes{1.0};
        if (const auto* b = std::get_if<BesselHalf>(&p)) {
            const double period = kPi / b->lambda;
            for (double x = period * std::ceil(1.0 / period); x < x_max; x += period)
                if (x > 1.0) nodes.push_back(x);
        } else {
            for (double x = 2.0; x < x_max; x += 1.0) nodes.push_back(x);
        }
        nodes.push_back(x_max);
        cplx acc = 0.0;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const double a = nodes[i], b = nodes[i + 1];
            const double mid = 0.5 * (a + b);
            acc += quad::gauss(
                [&](double x) {
                    const double q = std::log(x);
                    // Evaluate inside the cell so jumps at its edges do not leak in.
                    const double v = (x == a || x == b) ? eval_q(p, std::log(mid)) : eval_q(p, q);
                    return v * std::exp((kI * E - 1.0) * q);
                },
                a, b, 16);
        }
        return acc;
    }
    if (std::holds_alternative<ConstantOne>(p)) return fourier_hat(p, E);
    // Step, ExpSum, Sampled: integrate in q over the support.
    double q_end = std::log(x_max);
    if (const auto* s = std::get_if<Step>(&p)) q_end = s->q_edge;
    if (const auto* s = std::get_if<Sampled>(&p)) q_end = s->grid.q_max;
    const auto edges = quad::panel_edges(q_end, breakpoints(p, q_end), [&](double q) {
        return std::min(resolution_width(p, q), 1.0 / (1.0 + std::abs(E)));
    });
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        acc += quad::gauss([&](double q) { return eval_q(p, q) * std::exp(kI * E * q); }, edges[i], edges[i + 1], 16);
    return acc;
}

GridPotential sample(const PotentialSpec& p, double q_max, int n) {
    if (!(q_max > 0.0)) throw DomainError("sample: q_max must be positive");
    if (n < 2) throw DomainError("sample: n must be at least 2");
    GridPotential g;
    g.q_max = q_max;
    g.values.resize(n);
    const double h = q_max / (n - 1);
    for (int j = 0; j < n; ++j) g.values[j] = eval_q_left(p, j * h);
    return g;
}

std::optional<std::vector<Piece>> pieces(const PotentialSpec& p, double L) {
    if (const auto* s = std::get_if<Step>(&p)) {
        if (s->amplitude == 0.0) return std::vector<Piece>{};
        return std::vector<Piece>{{s->amplitude, 0.0, std::min(s->q_edge, L)}};
    }
    if (const auto* s = std::get_if<ExpSum>(&p)) {
        std::vector<Piece> out;
        for (const auto& t : s->terms)
            if (t.coef != 0.0) out.push_back({t.coef, t.rate, L});
        return out;
    }
    if (std::holds_alternative<ConstantOne>(p)) return std::vector<Piece>{{1.0, 0.0, L}};
    if (is_zero(p)) return std::vector<Piece>{};
    return std::nullopt;
}

std::vector<double> breakpoints(const PotentialSpec& p, double q_end) {
    std::vector<double> out;
    if (const auto* s = std::get_if<Step>(&p)) {
        if (s->q_edge < q_end) out.push_back(s->q_edge);
    } else if (std::holds_alternative<SawtoothZeta>(p)) {
        const double x_end = std::exp(std::min(q_end, 40.0));
        for (double m = 2.0; m < x_end; m += 1.0) out.push_back(std::log(m));
    } else if (const auto* s = std::get_if<DirichletSaw>(&p)) {
        const double x_end = std::exp(std::min(q_end, 40.0));
        for (long long m = 2; m < x_end; ++m)
            if (character(s->modulus, m) != 0) out.push_back(std::log(double(m)));
    } else if (const auto* s = std::get_if<Sampled>(&p)) {
        for (int j = 1; j < s->grid.n(); ++j) {
            const double q = j * s->grid.h();
            if (q < q_end) out.push_back(q);
        }
    }
    return out;
}

double resolution_width(const PotentialSpec& p, double q) {
    if (const auto* b = std::get_if<BesselHalf>(&p)) return std::min(0.25, 1.0 / (b->lambda * std::exp(q)));
    if (const auto* s = std::get_if<ExpSum>(&p)) {
        double w = 0.25;
        for (const auto& t : s->terms) w = std::min(w, 2.0 / t.rate);
        return w;
    }
    return 0.25;
}

double min_decay_rate(const PotentialSpec& p) {
    if (const auto* s = std::get_if<ExpSum>(&p)) {
        double r = kInfinite;
        for (const auto& t : s->terms) r = std::min(r, t.rate);
        return std::isinf(r) ? 0.0 : r;
    }
    return 0.0;
}

}  // namespace xpjost
