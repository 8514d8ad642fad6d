#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "xpjost/hilbert.hpp"
#include "xpjost/jost.hpp"

namespace xpjost {

/// A located zero together with the |F| (or |D|) residual at it.
struct Level {
    double E = 0.0;
    double residual = 0.0;
};

struct Resonance {
    cplx E;
    double residual = 0.0;
};

struct SpectrumReport {
    double L = kInfinite;
    std::vector<Level> scattering_levels;  // delocalized, sorted
    std::vector<Level> bound_states;       // localized, F(E) = 0
    std::vector<Resonance> resonances;     // Im E < 0
    int upper_zero_count = 0;
};

/// Axis-aligned rectangle in the complex E plane.
struct Rect {
    double re_lo = -1.0, re_hi = 1.0;
    double im_lo = -1.0, im_hi = 1.0;
};

/// E_n = (2π/L)(n + θ/2π) inside [E_lo, E_hi].
std::vector<double> free_spectrum(double L, double theta, double E_lo, double E_hi);

/// Evaluates F on the real axis: closed forms / quadrature where available,
/// the dispersion path for M1 models whose S has no closed form at infinite L.
class JostEvaluator {
public:
    explicit JostEvaluator(ModelSpec m, PVWindow win = {});
    cplx operator()(double E) const;
    const ModelSpec& model() const { return m_; }
    bool uses_dispersion() const { return dispersion_ != nullptr; }

private:
    ModelSpec m_;
    std::shared_ptr<Dispersion> dispersion_;
};

/// |1 + R_a(t)|² for an M1 model with infinite L.
RealFn f1_squared(const ModelSpec& m);

/// Real roots of F(E) + F(−E) e^{iEL} = 0 on [E_lo, E_hi] at cutoff L.
/// mesh <= 0 selects min(π/(4L), 0.01). Roots where |F| < 1e-8(1+|E|) are
/// reported as bound states.
SpectrumReport finite_spectrum(const ModelSpec& m, double L, double E_lo, double E_hi, double mesh = 0.0);

/// Real zeros of F on [E_lo, E_hi] from minima of |F| polished by Gauss-Newton.
std::vector<Level> bound_states(const ModelSpec& m, double E_lo, double E_hi, double mesh = 0.01);

/// Number of zeros of F inside rect (argument principle, poles of the
/// exponential closed forms removed). Throws BoundaryZeroError if F nearly
/// vanishes on the boundary.
int zero_count(const ModelSpec& m, const Rect& rect);

/// zero_count on a rectangle with Im E > 0.
int upper_halfplane_zero_count(const ModelSpec& m, const Rect& rect);

/// Complex zeros inside rect (recursive quadrisection plus Newton polish).
std::vector<Resonance> resonances(const ModelSpec& m, const Rect& rect);

/// Local minima of fn on [lo, hi], scanned with `step` and refined.
std::vector<double> local_minima(const std::function<double(double)>& fn, double lo, double hi, double step);

struct SmoothComparison {
    int n = 0;
    double E = 0.0;
    double smooth = 0.0;
    double gap = 0.0;  // |E − smooth| / smooth
};

/// Pairs the n-th entry of `levels` with smooth_zero(n), n = 1..n_max.
std::vector<SmoothComparison> compare_smooth(const std::vector<double>& levels, int n_max);

/// Minima of |F1| on [lo, hi] for an M1 model (dispersion path when needed).
std::vector<double> jost_minima(const ModelSpec& m, double lo, double hi, double step = 0.01, PVWindow win = {});

}  // namespace xpjost
