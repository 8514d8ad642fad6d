#include "xpjost/spectrum.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "xpjost/errors.hpp"
#include "xpjost/specialfn.hpp"

namespace xpjost {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double bound_tolerance(double E) { return 1e-8 * (1.0 + std::abs(E)); }

// Root of a bracketed real function to near machine precision.
double refine_root(const std::function<double(double)>& g, double lo, double hi, double glo, double ghi) {
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-14 * (1.0 + std::abs(a)); };
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, iters);
    return 0.5 * (r.first + r.second);
}

double refine_min(const std::function<double(double)>& fn, double lo, double hi) {
    std::uintmax_t iters = 200;
    return boost::math::tools::brent_find_minima(fn, lo, hi, 50, iters).first;
}

bool is_dispersion_family(const PotentialSpec& p) {
    return std::holds_alternative<BesselHalf>(p) || std::holds_alternative<SawtoothZeta>(p) ||
           std::holds_alternative<DirichletSaw>(p);
}

// Decay rates whose poles e^{-μq} transforms place at E = −iμ.
std::vector<double> pole_rates(const ModelSpec& m) {
    std::set<double> rates;
    auto collect = [&](const PotentialSpec& p) {
        if (auto pc = pieces(p, m.L))
            for (const auto& piece : *pc)
                if (piece.rate > 0.0) rates.insert(piece.rate);
    };
    collect(m.a);
    if (m.kind == ModelKind::M2) collect(m.b);
    return {rates.begin(), rates.end()};
}

// F times Π (E + iμ)^k, which is analytic in the rectangle.
struct Regularized {
    const ModelSpec& m;
    std::vector<double> rates;
    int order;
    bool active;

    cplx F(cplx E) const { return jost_function(m, E); }
    cplx operator()(cplx E, cplx* F_out = nullptr) const {
        const cplx f = F(E);
        if (F_out) *F_out = f;
        if (!active) return f;
        cplx p = 1.0;
        for (double mu : rates) p *= std::pow(E + kI * mu, order);
        return f * p;
    }
};

bool pole_inside(double mu, const Rect& r) {
    const double pad = 1e-3;
    return r.re_lo - pad <= 0.0 && r.re_hi + pad >= 0.0 && r.im_lo - pad <= -mu && r.im_hi + pad >= -mu;
}

// The factor is applied only when a pole lies in (or next to) the rectangle.
Regularized regularized(const ModelSpec& m, const Rect& rect) {
    std::vector<double> rates;
    for (double mu : pole_rates(m))
        if (pole_inside(mu, rect)) rates.push_back(mu);
    const bool active = !rates.empty();
    return {m, rates, m.kind == ModelKind::M1 ? 1 : 2, active};
}

struct ArgAccumulator {
    const Regularized& G;
    double total = 0.0;

    cplx sample(cplx z) {
        cplx f;
        const cplx g = G(z, &f);
        if (std::abs(f) < 1e-10)
            throw BoundaryZeroError("argument principle: |F| < 1e-10 on the contour at E = (" +
                                    std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
            throw PoleError("argument principle: non-finite F on the contour");
        return g;
    }

    void segment(cplx z0, cplx g0, cplx z1, cplx g1, int depth) {
        const double d = std::arg(g1 / g0);
        if (std::abs(d) <= kPi / 4.0) {
            total += d;
            return;
        }
        if (depth > 48 || std::abs(z1 - z0) < 1e-12 * (1.0 + std::abs(z0)))
            throw BoundaryZeroError("argument principle: phase jump unresolved near E = (" +
                                    std::to_string(z0.real()) + ", " + std::to_string(z0.imag()) + ")");
        const cplx zm = 0.5 * (z0 + z1);
        const cplx gm = sample(zm);
        segment(z0, g0, zm, gm, depth + 1);
        segment(zm, gm, z1, g1, depth + 1);
    }

    void edge(cplx a, cplx b) {
        const int n = std::max(16, static_cast<int>(std::ceil(std::abs(b - a) / 0.05)));
        cplx z0 = a, g0 = sample(a);
        for (int k = 1; k <= n; ++k) {
            const cplx z1 = a + (b - a) * (double(k) / n);
            const cplx g1 = sample(z1);
            segment(z0, g0, z1, g1, 0);
            z0 = z1;
            g0 = g1;
        }
    }
};

int winding(const Regularized& G, const Rect& r) {
    ArgAccumulator acc{G};
    const cplx c0{r.re_lo, r.im_lo}, c1{r.re_hi, r.im_lo}, c2{r.re_hi, r.im_hi}, c3{r.re_lo, r.im_hi};
    acc.edge(c0, c1);
    acc.edge(c1, c2);
    acc.edge(c2, c3);
    acc.edge(c3, c0);
    const double turns = acc.total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.1)
        throw ConvergenceError("argument principle: winding " + std::to_string(turns) + " is not an integer");
    return static_cast<int>(rounded);
}

void check_rect(const Rect& r) {
    if (!(r.re_lo < r.re_hi) || !(r.im_lo < r.im_hi))
        throw ConfigError("rectangle requires re_lo < re_hi and im_lo < im_hi");
}

// Newton with a central-difference derivative.
std::optional<cplx> newton(const ModelSpec& m, cplx E) {
    for (int it = 0; it < 100; ++it) {
        const double h = 1e-6 * (1.0 + std::abs(E));
        const cplx f = jost_function(m, E);
        const cplx df = (jost_function(m, E + h) - jost_function(m, E - h)) / (2.0 * h);
        if (df == 0.0 || !std::isfinite(std::abs(f))) return std::nullopt;
        const cplx step = f / df;
        E -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(E))) break;
    }
    if (!std::isfinite(E.real()) || !std::isfinite(E.imag())) return std::nullopt;
    return E;
}

struct ZeroSearch {
    const ModelSpec& m;
    const Regularized& G;
    std::vector<double> rates;
    std::vector<Resonance> found;

    bool near_pole(cplx E) const {
        for (double mu : rates)
            if (std::abs(E + kI * mu) < 1e-6 * (1.0 + mu)) return true;
        return false;
    }

    bool try_newton(const Rect& c) {
        const cplx centre{0.5 * (c.re_lo + c.re_hi), 0.5 * (c.im_lo + c.im_hi)};
        const auto E = newton(m, centre);
        if (!E) return false;
        const double margin = 1e-6 * (1.0 + std::abs(*E));
        if (E->real() < c.re_lo - margin || E->real() > c.re_hi + margin || E->imag() < c.im_lo - margin ||
            E->imag() > c.im_hi + margin)
            return false;
        if (near_pole(*E)) return true;  // the regularizing factor's own zero
        const double res = std::abs(jost_function(m, *E));
        if (!(res < bound_tolerance(std::abs(*E)))) return false;
        found.push_back({*E, res});
        return true;
    }

    void run(const Rect& c, int count, int depth) {
        if (count <= 0) return;
        const double size = std::max(c.re_hi - c.re_lo, c.im_hi - c.im_lo);
        if (count == 1 || size < 1e-7) {
            if (try_newton(c)) return;
            // A lone zero of the regularizing factor (F has a lower-order pole there).
            if (count == 1 && size < 1e-4)
                for (double mu : rates)
                    if (c.re_lo <= 0.0 && c.re_hi >= 0.0 && c.im_lo <= -mu && c.im_hi >= -mu) return;
            if (size < 1e-7 || depth > 60)
                throw ConvergenceError("resonances: Newton failed in a cell of size " + std::to_string(size));
        }
        // Split slightly off-centre; shift the lines if they hit a zero.
        static constexpr double kSplits[] = {0.5137, 0.4711, 0.5523, 0.4402, 0.5891};
        for (double s : kSplits) {
            const double xr = c.re_lo + s * (c.re_hi - c.re_lo);
            const double xi = c.im_lo + (1.0 - s) * (c.im_hi - c.im_lo);
            const Rect cells[4] = {{c.re_lo, xr, c.im_lo, xi},
                                   {xr, c.re_hi, c.im_lo, xi},
                                   {c.re_lo, xr, xi, c.im_hi},
                                   {xr, c.re_hi, xi, c.im_hi}};
            int counts[4];
            try {
                for (int k = 0; k < 4; ++k) counts[k] = winding(G, cells[k]);
            } catch (const BoundaryZeroError&) {
                continue;
            }
            for (int k = 0; k < 4; ++k) run(cells[k], counts[k], depth + 1);
            return;
        }
        throw BoundaryZeroError("resonances: could not place subdivision lines away from zeros");
    }
};

}  // namespace

std::vector<double> free_spectrum(double L, double theta, double E_lo, double E_hi) {
    if (!(L > 0.0) || std::isinf(L)) throw DomainError("free_spectrum: L must be finite and positive");
    const double spacing = 2.0 * kPi / L, shift = theta / (2.0 * kPi);
    std::vector<double> out;
    const long long n_lo = static_cast<long long>(std::ceil(E_lo / spacing - shift));
    for (long long n = n_lo;; ++n) {
        const double E = spacing * (n + shift);
        if (E > E_hi) break;
        if (E >= E_lo) out.push_back(E);
    }
    return out;
}

JostEvaluator::JostEvaluator(ModelSpec m, PVWindow win) : m_(std::move(m)) {
    validate(m_);
    if (m_.kind == ModelKind::M1 && std::isinf(m_.L) && is_dispersion_family(m_.a))
        dispersion_ = std::make_shared<Dispersion>(f1_squared(m_), win);
}

cplx JostEvaluator::operator()(double E) const {
    if (dispersion_) return (*dispersion_)(E);
    return jost_function(m_, E);
}

RealFn f1_squared(const ModelSpec& m) {
    if (m.kind != ModelKind::M1) throw DomainError("f1_squared: requires an M1 model");
    return [a = m.a, L = m.L](double t) { return std::norm(1.0 + transform_R(a, t, L)); };
}

SpectrumReport finite_spectrum(const ModelSpec& model, double L, double E_lo, double E_hi, double mesh) {
    if (!(L > 0.0) || std::isinf(L)) throw DomainError("finite_spectrum: requires a finite positive L");
    if (!(E_lo < E_hi)) throw DomainError("finite_spectrum: requires E_lo < E_hi");
    ModelSpec m = model;
    m.L = L;
    if (mesh <= 0.0) mesh = std::min(kPi / (4.0 * L), 0.01);
    const int n = std::max(2, static_cast<int>(std::ceil((E_hi - E_lo) / mesh)));
    const double step = (E_hi - E_lo) / n;

    // g(E) = Re[D(E) e^{−iEL/2}] is real for real potentials; its sign changes are the levels.
    struct Sample {
        double E, g;
        cplx F;
    };
    auto eval = [&](double E) {
        const cplx F = jost_function(m, E), Fn = jost_function(m, -E);
        const cplx h = F * std::exp(-0.5 * kI * E * L) + Fn * std::exp(0.5 * kI * E * L);
        return Sample{E, h.real(), F};
    };
    auto g_of = [&](double E) { return eval(E).g; };

    std::vector<Sample> s(n + 1);
    for (int j = 0; j <= n; ++j) s[j] = eval(E_lo + j * step);
    for (int j = 1; j <= n; ++j) {
        const cplx u0 = s[j - 1].F * std::exp(-0.5 * kI * s[j - 1].E * L);
        const cplx u1 = s[j].F * std::exp(-0.5 * kI * s[j].E * L);
        const double f0 = std::abs(s[j - 1].F), f1 = std::abs(s[j].F);
        if (f0 <= 1e-3 || f1 <= 1e-3 || std::abs(std::arg(u1 / u0)) <= kPi / 2.0) continue;
        // F close to linear over the step: the jump comes from passing near a zero, not aliasing.
        const cplx mid = jost_function(m, 0.5 * (s[j - 1].E + s[j].E));
        if (std::abs(mid - 0.5 * (s[j - 1].F + s[j].F)) < 0.1 * std::max(f0, f1)) continue;
        throw ConvergenceError("finite_spectrum: phase-unwrap failure in [" + std::to_string(s[j - 1].E) + ", " +
                                   std::to_string(s[j].E) + "]; reduce the mesh");
    }

    std::vector<double> roots;
    for (int j = 1; j <= n; ++j) {
        const Sample &p = s[j - 1], &q = s[j];
        if (p.g == 0.0 && j > 1) continue;  // already taken as the right end of the previous step
        if ((p.g <= 0.0) != (q.g <= 0.0) || p.g == 0.0) roots.push_back(refine_root(g_of, p.E, q.E, p.g, q.g));
    }
    // Touching roots (no sign change): minima of |g| that reach zero.
    for (int j = 1; j < n; ++j) {
        const double a = std::abs(s[j - 1].g), b = std::abs(s[j].g), c = std::abs(s[j + 1].g);
        if (!(b < a && b <= c)) continue;
        if ((s[j - 1].g <= 0.0) != (s[j].g <= 0.0) || (s[j].g <= 0.0) != (s[j + 1].g <= 0.0)) continue;
        const double E = refine_min([&](double x) { return std::abs(g_of(x)); }, s[j - 1].E, s[j + 1].E);
        if (std::abs(g_of(E)) < 1e-9 * (1.0 + std::abs(E))) roots.push_back(E);
    }
    std::sort(roots.begin(), roots.end());

    SpectrumReport rep;
    rep.L = L;
    for (double E : roots) {
        if (!rep.scattering_levels.empty() && std::abs(rep.scattering_levels.back().E - E) < 1e-9) continue;
        if (!rep.bound_states.empty() && std::abs(rep.bound_states.back().E - E) < 1e-9) continue;
        const cplx F = jost_function(m, E);
        const double D = std::abs(F + jost_function(m, -E) * std::exp(kI * E * L));
        if (std::abs(F) < bound_tolerance(E)) {
            rep.bound_states.push_back({E, std::abs(F)});
            // M1 exceptional coincidence: a delocalized solution shares the level.
            if (m.kind == ModelKind::M1 && std::abs(1.0 + transform_R(m.a, E, L)) < 1e-6 &&
                std::abs(std::exp(kI * E * L) - 1.0) < 1e-6)
                rep.scattering_levels.push_back({E, D});
        } else {
            rep.scattering_levels.push_back({E, D});
        }
    }
    return rep;
}

std::vector<Level> bound_states(const ModelSpec& m, double E_lo, double E_hi, double mesh) {
    if (!(E_lo < E_hi) || !(mesh > 0.0)) throw DomainError("bound_states: requires E_lo < E_hi and mesh > 0");
    const JostEvaluator F(m);
    auto absF = [&](double E) { return std::abs(F(E)); };
    std::vector<Level> out;
    for (double E0 : local_minima(absF, E_lo, E_hi, mesh)) {
        // Gauss-Newton on |F|² along the real axis.
        double E = E0;
        for (int it = 0; it < 60; ++it) {
            const double h = 1e-6 * (1.0 + std::abs(E));
            const cplx f = F(E);
            const cplx df = (F(E + h) - F(E - h)) / (2.0 * h);
            if (std::norm(df) == 0.0) break;
            const double step = (std::conj(df) * f).real() / std::norm(df);
            if (std::abs(step) > 10.0 * mesh) break;
            E -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(E))) break;
        }
        if (E < E_lo || E > E_hi) continue;
        const double res = absF(E);
        if (res < bound_tolerance(E) && (out.empty() || std::abs(out.back().E - E) > 1e-7)) out.push_back({E, res});
    }
    return out;
}

int zero_count(const ModelSpec& m, const Rect& rect) {
    check_rect(rect);
    const Regularized G = regularized(m, rect);
    // Without poles inside, the winding of F is its zero count; otherwise the
    // pole orders are unknown and the zeros are located explicitly.
    if (!G.active) return winding(G, rect);
    return static_cast<int>(resonances(m, rect).size());
}

int upper_halfplane_zero_count(const ModelSpec& m, const Rect& rect) {
    if (!(rect.im_lo > 0.0)) throw DomainError("upper_halfplane_zero_count: rectangle must lie in Im E > 0");
    return zero_count(m, rect);
}

std::vector<Resonance> resonances(const ModelSpec& m, const Rect& rect) {
    check_rect(rect);
    const Regularized G = regularized(m, rect);
    ZeroSearch search{m, G, G.rates, {}};
    search.run(rect, winding(G, rect), 0);
    auto& out = search.found;
    std::sort(out.begin(), out.end(), [](const Resonance& x, const Resonance& y) {
        return x.E.real() != y.E.real() ? x.E.real() < y.E.real() : x.E.imag() < y.E.imag();
    });
    return out;
}

std::vector<double> local_minima(const std::function<double(double)>& fn, double lo, double hi, double step) {
    if (!(lo < hi) || !(step > 0.0)) throw DomainError("local_minima: requires lo < hi and step > 0");
    const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
    const double h = (hi - lo) / n;
    std::vector<double> v(n + 1);
    for (int j = 0; j <= n; ++j) v[j] = fn(lo + j * h);
    std::vector<double> out;
    for (int j = 1; j < n; ++j)
        if (v[j] < v[j - 1] && v[j] <= v[j + 1]) out.push_back(refine_min(fn, lo + (j - 1) * h, lo + (j + 1) * h));
    return out;
}

std::vector<SmoothComparison> compare_smooth(const std::vector<double>& levels, int n_max) {
    std::vector<SmoothComparison> out;
    const int count = std::min<int>(n_max, static_cast<int>(levels.size()));
    for (int n = 1; n <= count; ++n) {
        const double sz = smooth_zero(n);
        out.push_back({n, levels[n - 1], sz, std::abs(levels[n - 1] - sz) / sz});
    }
    return out;
}

std::vector<double> jost_minima(const ModelSpec& m, double lo, double hi, double step, PVWindow win) {
    const JostEvaluator F(m, win);
    return local_minima([&](double E) { return std::abs(F(E)); }, lo, hi, step);
}

}  // namespace xpjost
