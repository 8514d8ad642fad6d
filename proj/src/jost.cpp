#include "xpjost/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xpjost/errors.hpp"
#include "xpjost/hilbert.hpp"
#include "xpjost/quadrature.hpp"

namespace xpjost {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kPanelOrder = 10;

// μ_k(z) = ∫_0^1 s^k e^{−z s} ds.
cplx moment(int k, cplx z) {
    const double az = std::abs(z);
    if (az < 2.0) {
        cplx acc = 0.0, pw = 1.0;
        double fact = 1.0;
        for (int j = 0; j < 60; ++j) {
            const cplx term = pw / (fact * (k + j + 1));
            acc += term;
            if (std::abs(term) < 1e-18 * std::abs(acc)) break;
            pw *= -z;
            fact *= (j + 1);
        }
        return acc;
    }
    if (az > k + 10.0) {
        const cplx ez = std::exp(-z);
        cplx mu = (1.0 - ez) / z;
        for (int j = 1; j <= k; ++j) mu = (double(j) * mu - ez) / z;
        return mu;
    }
    return quad::gauss([&](double s) { return std::pow(s, k) * std::exp(-z * s); }, 0.0, 1.0, 48);
}

// T = ∫_0^m e^{−a q} (1 − e^{−c q})/c dq.
cplx inner_ordered(cplx a, cplx c, double m) {
    if (std::isinf(m)) {
        if (std::abs(a) < 1e-300) throw PoleError("transform_S: pole of the exponential closed form");
        return 1.0 / (a * (a + c));
    }
    if (std::abs(c * m) < 0.5) {
        const cplx am = a * m;
        cplx acc = 0.0;
        cplx coef = m * m;  // (−c)^{k−1} m^{k+1} / k!
        for (int k = 1; k < 80; ++k) {
            const cplx term = coef * moment(k, am);
            acc += term;
            if (std::abs(term) < 1e-18 * std::abs(acc)) break;
            coef *= -c * m / double(k + 1);
        }
        return acc;
    }
    return (exp_integral(a, m) - exp_integral(a + c, m)) / c;
}

cplx s_piece(const Piece& f, const Piece& g, cplx E) {
    const cplx a = f.rate - kI * E;
    const cplx c = g.rate + kI * E;
    const double m = std::min(f.edge, g.edge);
    if (std::isinf(m) && std::abs(a) < 1e-14 * (1.0 + f.rate)) throw PoleError("transform_S: pole at E = -i*rate");
    cplx ordered = inner_ordered(a, c, m);
    if (g.edge < f.edge) ordered += exp_integral(c, g.edge) * std::exp(-a * g.edge) * exp_integral(a, f.edge - g.edge);
    const cplx same = exp_integral(f.rate + g.rate, m);
    return f.alpha * g.alpha * ((kI * E / 2.0) * same - (E * E / 2.0) * ordered);
}

cplx r_piece(const Piece& f, cplx E) {
    const cplx a = f.rate - kI * E;
    if (std::isinf(f.edge) && std::abs(a) < 1e-14 * (1.0 + f.rate)) throw PoleError("transform_R: pole at E = -i*rate");
    return (kI * E / 2.0) * f.alpha * exp_integral(a, f.edge);
}

// End of the support of f inside [0, L], or infinity.
double support_end(const PotentialSpec& f, double L) {
    if (const auto* s = std::get_if<Step>(&f)) return std::min(s->q_edge, L);
    if (const auto* s = std::get_if<Sampled>(&f)) return std::min(s->grid.q_max, L);
    return L;
}

// Truncation point for exponentially decaying families with infinite L.
double quadrature_end(const PotentialSpec& f, cplx E, double L) {
    double end = support_end(f, L);
    if (!std::isinf(end)) return end;
    const double rate = min_decay_rate(f);
    if (rate <= 0.0)
        throw DomainError("quadrature: infinite L needs an exponentially decaying or finitely supported potential");
    if (E.imag() < -0.5 * rate)
        throw DomainError("quadrature: Im E below -rate/2, truncation error would dominate");
    return 40.0 / (rate + 2.0 * std::min(0.0, E.imag()));
}

std::vector<double> quadrature_panels(const PotentialSpec& f, const PotentialSpec& g, cplx E, double q_end) {
    auto br = breakpoints(f, q_end);
    auto bg = breakpoints(g, q_end);
    br.insert(br.end(), bg.begin(), bg.end());
    return quad::panel_edges(q_end, br, [&](double q) {
        return std::min({resolution_width(f, q), resolution_width(g, q), 0.5 / (1.0 + std::abs(E))});
    });
}

// Evaluate inside the panel so jumps on its edges are taken from the correct side.
double eval_in_panel(const PotentialSpec& p, double q, double lo, double hi) {
    const double eps = 1e-12 * (1.0 + hi);
    return eval_q(p, std::clamp(q, lo + eps, hi - eps));
}

// Rough number of panels needed to resolve p on [0, end].
double panel_cost(const PotentialSpec& p, double end) {
    if (const auto* b = std::get_if<BesselHalf>(&p)) return b->lambda * std::exp(std::min(end, 700.0));
    if (std::holds_alternative<SawtoothZeta>(p) || std::holds_alternative<DirichletSaw>(p))
        return std::exp(std::min(end, 700.0));
    return 4.0 * end;
}

cplx sum_pieces_R(const std::vector<Piece>& f, cplx E) {
    cplx acc = 0.0;
    for (const auto& p : f) acc += r_piece(p, E);
    return acc;
}

cplx sum_pieces_S(const std::vector<Piece>& f, const std::vector<Piece>& g, cplx E) {
    cplx acc = 0.0;
    for (const auto& p : f)
        for (const auto& r : g) acc += s_piece(p, r, E);
    return acc;
}

cplx phase_L(double E, double L) { return std::isinf(L) ? cplx(1.0) : std::exp(kI * E * L); }

const PotentialSpec& b_of(const ModelSpec& m) {
    static const PotentialSpec one = ConstantOne{};
    return m.kind == ModelKind::M1 ? one : m.b;
}

struct Transforms {
    cplx Ra, Rb, Ra_neg, Rb_neg, Sab, Sba, Saa, Sbb;
};

Transforms transforms(const ModelSpec& m, double E) {
    Transforms t{};
    const auto& b = b_of(m);
    t.Ra = transform_R(m.a, E, m.L);
    t.Ra_neg = transform_R(m.a, -E, m.L);
    t.Saa = transform_S(m.a, m.a, E, m.L);
    if (m.kind == ModelKind::M2) {
        t.Rb = transform_R(b, E, m.L);
        t.Rb_neg = transform_R(b, -E, m.L);
        t.Sab = transform_S(m.a, b, E, m.L);
        t.Sba = transform_S(b, m.a, E, m.L);
        t.Sbb = transform_S(b, b, E, m.L);
    }
    return t;
}

std::array<cplx, 3> cross(const std::array<cplx, 3>& u, const std::array<cplx, 3>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double norm3(const std::array<cplx, 3>& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

// ∫_0^q e^{−iEq'} f(q') dq'.
cplx conj_partial(const PotentialSpec& f, double E, double q, double L) {
    if (q <= 0.0) return 0.0;
    if (auto pc = pieces(f, L)) {
        cplx acc = 0.0;
        for (const auto& p : *pc) acc += p.alpha * exp_integral(p.rate + kI * E, std::min(q, p.edge));
        return acc;
    }
    const double end = std::min(q, support_end(f, L));
    const auto edges = quadrature_panels(f, f, E, end);
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        acc += quad::gauss([&](double x) { return eval_in_panel(f, x, lo, hi) * std::exp(-kI * E * x); }, lo, hi,
                           kPanelOrder);
    }
    return acc;
}

// S_{f, q g} for pieces: q e^{−νq} = −∂_ν e^{−νq}, by a five-point stencil. The step
// follows the rate since slow decays make S steep in ν.
cplx s_piece_qweighted(const Piece& f, const Piece& g, cplx E) {
    const double h = 1e-3 * g.rate + 1e-5;
    auto at = [&](double dr) {
        Piece gg = g;
        gg.rate += dr;
        return s_piece(f, gg, E);
    };
    const cplx deriv = (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12.0 * h);
    return -deriv;
}

}  // namespace

ModelSpec make_m1(PotentialSpec a, double L) {
    ModelSpec m;
    m.kind = ModelKind::M1;
    m.a = std::move(a);
    m.b = ConstantOne{};
    m.L = L;
    return m;
}

ModelSpec make_m2(PotentialSpec a, PotentialSpec b, double L) {
    ModelSpec m;
    m.kind = ModelKind::M2;
    m.a = std::move(a);
    m.b = std::move(b);
    m.L = L;
    return m;
}

void validate(const ModelSpec& m) {
    validate(m.a);
    validate(m.b);
    if (!(m.L > 0.0)) throw ConfigError("model L must be positive or infinite");
    if (m.kind == ModelKind::M1 && !std::holds_alternative<ConstantOne>(m.b))
        throw ConfigError("M1 model requires b = constant_one");
    if (std::isinf(m.L)) {
        if (!is_decaying(m.a)) throw ConfigError("infinite L requires a decaying potential a");
        if (m.kind == ModelKind::M2 && !is_decaying(m.b)) throw ConfigError("infinite L requires a decaying potential b");
    }
}

cplx transform_R(const PotentialSpec& f, cplx E, double L) {
    if (E == 0.0) return 0.0;
    if (auto pc = pieces(f, L)) return sum_pieces_R(*pc, E);
    if (std::isinf(support_end(f, L))) return (kI * E / 2.0) * fourier_hat(f, E);
    return transform_R_quadrature(f, E, L);
}

cplx transform_R_quadrature(const PotentialSpec& f, cplx E, double L) {
    if (E == 0.0) return 0.0;
    const double end = quadrature_end(f, E, L);
    const auto edges = quadrature_panels(f, f, E, end);
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        acc += quad::gauss([&](double q) { return eval_in_panel(f, q, lo, hi) * std::exp(kI * E * q); }, lo, hi,
                           kPanelOrder);
    }
    return (kI * E / 2.0) * acc;
}

cplx transform_S(const PotentialSpec& f, const PotentialSpec& g, cplx E, double L) {
    if (E == 0.0) return 0.0;
    auto pf = pieces(f, L), pg = pieces(g, L);
    if (pf && pg) return sum_pieces_S(*pf, *pg, E);
    double end = support_end(f, L);
    if (std::isinf(end) && min_decay_rate(f) > 0.0) end = 40.0 / min_decay_rate(f);
    if (!std::isinf(end) && panel_cost(f, end) + panel_cost(g, end) < 2e6) return transform_S_quadrature(f, g, E, L);
    if (!std::isinf(L)) throw DomainError("transform_S: potential too oscillatory for panel quadrature up to L");
    if (E.imag() != 0.0)
        throw DomainError("transform_S: the spectral representation is available for real E only");
    SpectralS spectral([&](double t) { return fourier_hat(f, t); }, [&](double t) { return fourier_hat(g, t); },
                       PVWindow{});
    return spectral(E.real());
}

cplx transform_S_quadrature(const PotentialSpec& f, const PotentialSpec& g, cplx E, double L) {
    if (E == 0.0) return 0.0;
    // The outer integral runs over the support of f; g only enters below it.
    const double end = quadrature_end(f, E, L);
    const auto edges = quadrature_panels(f, g, E, end);
    const quad::GaussRule& rule = quad::gauss_rule(kPanelOrder);
    cplx inner_total = 0.0, ordered = 0.0, same = 0.0;
    std::vector<cplx> G(kPanelOrder);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        const double hh = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        std::vector<double> fv(kPanelOrder), gv(kPanelOrder);
        std::vector<cplx> ph(kPanelOrder);
        for (int i = 0; i < kPanelOrder; ++i) {
            const double q = mid + hh * rule.x[i];
            fv[i] = eval_in_panel(f, q, lo, hi);
            gv[i] = eval_in_panel(g, q, lo, hi);
            ph[i] = std::exp(kI * E * q);
            G[i] = gv[i] / ph[i];
        }
        cplx panel_g = 0.0;
        for (int i = 0; i < kPanelOrder; ++i) {
            cplx partial = 0.0;
            for (int j = 0; j < kPanelOrder; ++j) partial += rule.partial[i][j] * G[j];
            const cplx inner = inner_total + hh * partial;
            ordered += hh * rule.w[i] * fv[i] * ph[i] * inner;
            same += hh * rule.w[i] * fv[i] * gv[i];
            panel_g += rule.w[i] * G[i];
        }
        inner_total += hh * panel_g;
    }
    return (kI * E / 2.0) * same - (E * E / 2.0) * ordered;
}

cplx transform_S_qweighted(const PotentialSpec& f, const PotentialSpec& g, cplx E, double L) {
    auto pf = pieces(f, L), pg = pieces(g, L);
    if (!pf || !pg) throw DomainError("transform_S_qweighted: requires step or exponential potentials");
    cplx acc = 0.0;
    for (const auto& p : *pf)
        for (const auto& r : *pg) acc += s_piece_qweighted(p, r, E);
    return acc;
}

double overlap(const PotentialSpec& f, const PotentialSpec& g, double L) {
    auto pf = pieces(f, L), pg = pieces(g, L);
    if (pf && pg) {
        double acc = 0.0;
        for (const auto& p : *pf)
            for (const auto& r : *pg) acc += p.alpha * r.alpha * exp_integral(p.rate + r.rate, std::min(p.edge, r.edge)).real();
        return acc;
    }
    const double end = std::min(quadrature_end(f, 0.0, L), quadrature_end(g, 0.0, L));
    const auto edges = quadrature_panels(f, g, 0.0, end);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        acc += quad::gauss([&](double q) { return eval_in_panel(f, q, lo, hi) * eval_in_panel(g, q, lo, hi); }, lo,
                           hi, kPanelOrder);
    }
    return acc;
}

JostValue jost_F1(const ModelSpec& m, cplx E) {
    if (m.kind != ModelKind::M1) throw DomainError("jost_F1: model is not M1");
    auto eval = [&](cplx e) {
        const cplx R = transform_R(m.a, e, m.L);
        const cplx S = transform_S(m.a, m.a, e, m.L);
        return std::pair{1.0 + 2.0 * R - S, 1.0 + R};
    };
    auto [F, f1] = eval(E);
    auto [Fn, f1n] = eval(-E);
    (void)f1n;
    return {E, F, Fn, f1};
}

JostValue jost_F(const ModelSpec& m, cplx E) {
    if (m.kind != ModelKind::M2) throw DomainError("jost_F: model is not M2");
    auto eval = [&](cplx e) {
        const cplx Sab = transform_S(m.a, m.b, e, m.L);
        const cplx Sba = transform_S(m.b, m.a, e, m.L);
        const cplx Saa = transform_S(m.a, m.a, e, m.L);
        const cplx Sbb = transform_S(m.b, m.b, e, m.L);
        return 1.0 + Sab - Sba + Saa * Sbb - Sab * Sba;
    };
    return {E, eval(E), eval(-E), std::nullopt};
}

JostValue jost(const ModelSpec& m, cplx E) { return m.kind == ModelKind::M1 ? jost_F1(m, E) : jost_F(m, E); }

cplx jost_function(const ModelSpec& m, cplx E) {
    if (m.kind == ModelKind::M1) return 1.0 + 2.0 * transform_R(m.a, E, m.L) - transform_S(m.a, m.a, E, m.L);
    const cplx Sab = transform_S(m.a, m.b, E, m.L);
    const cplx Sba = transform_S(m.b, m.a, E, m.L);
    return 1.0 + Sab - Sba + transform_S(m.a, m.a, E, m.L) * transform_S(m.b, m.b, E, m.L) - Sab * Sba;
}

cplx eigencondition(const ModelSpec& m, cplx E) {
    if (std::isinf(m.L)) throw DomainError("eigencondition: requires finite L");
    return jost_function(m, E) + jost_function(m, -E) * std::exp(kI * E * m.L);
}

Matrix3 system_matrix(const ModelSpec& m, double E) {
    const Transforms t = transforms(m, E);
    const cplx ph = phase_L(E, m.L);
    Matrix3 S;
    if (m.kind == ModelKind::M1) {
        S[0] = {1.0 + 2.0 * t.Ra, -t.Saa, ph * t.Ra};
        S[1] = {-1.0, 1.0, -ph};
        S[2] = {2.0, 2.0 * t.Ra_neg, ph + 1.0};
    } else {
        S[0] = {1.0 + t.Sab, -t.Saa, ph * t.Ra};
        S[1] = {t.Sbb, 1.0 - t.Sba, ph * t.Rb};
        S[2] = {-2.0 * t.Rb_neg, 2.0 * t.Ra_neg, ph + 1.0};
    }
    return S;
}

AmplitudeVector amplitudes(const ModelSpec& m, double E) {
    const Matrix3 S = system_matrix(m, E);
    const auto w = cross(S[0], S[1]);
    if (norm3(w) < 1e-12 * norm3(S[0]) * norm3(S[1]))
        throw CollinearityError("amplitudes: rows v1 and v2 are collinear (exceptional case)");
    return {w[0], w[1], w[2]};
}

AmplitudeVector amplitudes_exceptional(const ModelSpec& m, double E) {
    const Matrix3 S = system_matrix(m, E);
    const std::array<std::array<cplx, 3>, 3> candidates{cross(S[0], S[1]), cross(S[0], S[2]), cross(S[1], S[2])};
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (norm3(candidates[i]) > norm3(candidates[best])) best = i;
    const auto& w = candidates[best];
    if (norm3(w) == 0.0) throw CollinearityError("amplitudes_exceptional: system has rank below 2");
    return {w[0], w[1], w[2]};
}

double system_residual(const ModelSpec& m, double E, const AmplitudeVector& w) {
    const Matrix3 S = system_matrix(m, E);
    const std::array<cplx, 3> v{w.A, w.B, w.C_inf};
    std::array<cplx, 3> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i] += S[i][j] * v[j];
    return norm3(r) / norm3(v);
}

cplx wavefunction_q(const ModelSpec& m, double E, const AmplitudeVector& w, double q) {
    if (q < 0.0 || q > m.L) throw DomainError("wavefunction: q outside [0, L]");
    const auto& b = b_of(m);
    const cplx phL = phase_L(E, m.L);
    cplx C_inf = w.C_inf;
    if (m.kind == ModelKind::M1) C_inf += w.A / phL;
    const cplx eq = std::exp(kI * E * q);
    const cplx integral = w.B * conj_partial(m.a, E, q, m.L) - w.A * conj_partial(b, E, q, m.L);
    const double aq = q < m.L ? eval_q(m.a, q) : 0.0;
    const double bq = q < m.L ? eval_q(b, q) : 0.0;
    return -phL * eq * C_inf + w.B * aq - w.A * bq + kI * E * eq * integral;
}

cplx wavefunction(const ModelSpec& m, double E, const AmplitudeVector& w, double x) {
    if (x < 1.0) throw DomainError("wavefunction: x must be >= 1");
    return wavefunction_q(m, E, w, std::log(x)) / std::sqrt(x);
}

double norm_localized(const ModelSpec& m, double E, const AmplitudeVector& w) {
    if (m.kind != ModelKind::M2) throw DomainError("norm_localized: requires an M2 model");
    if (!std::isinf(m.L)) throw DomainError("norm_localized: requires infinite L");
    if (E == 0.0) throw DomainError("norm_localized: E must be nonzero");
    const double L = m.L;
    auto omega = [&](const PotentialSpec& f, const PotentialSpec& g) {
        const cplx t1 = transform_S_qweighted(g, f, E, L);
        const cplx t2 = transform_S_qweighted(f, g, -E, L);
        const cplx t3 = transform_S(g, f, E, L) - transform_S(f, g, -E, L);
        return -2.0 * (t1 + t2 + kI / E * t3) - overlap(f, g, L);
    };
    const cplx Obb = omega(m.b, m.b), Oab = omega(m.a, m.b), Oba = omega(m.b, m.a), Oaa = omega(m.a, m.a);
    const cplx v = std::conj(w.A) * (Obb * w.A - Oab * w.B) + std::conj(w.B) * (-Oba * w.A + Oaa * w.B);
    const double scale = std::norm(w.A) + std::norm(w.B);
    if (v.real() < -1e-8 * scale) throw Error("norm_localized: negative norm (inconsistent inputs)");
    return v.real();
}

}  // namespace xpjost
