#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace xpjost {

using cplx = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

/// Symmetric integration window [-d, d] sampled with spacing `mesh`.
struct PVWindow {
    double d = 400.0;
    double mesh = 0.05;
};

/// Throws ConfigError unless d > 10 mesh > 0.
void validate(const PVWindow& win);

/// Principal-value transform H[g](x) = P∫_{-d}^{d} (dy/π) g(y)/(y − x) of a
/// function sampled once on the window grid, with singularity subtraction.
template <class T>
class PVTransform {
public:
    PVTransform(std::function<T(double)> g, PVWindow win);

    /// Throws WindowError if x lies within 10 mesh of ±d.
    T operator()(double x) const;

    /// Same, with g(x) supplied by the caller.
    T at(double x, T g_x) const;

    /// Mean of g over the outer 10% of the window on both sides.
    T edge_level() const;

    /// g at the first and last grid node.
    T left_value() const { return values_.front(); }
    T right_value() const { return values_.back(); }

    const PVWindow& window() const { return win_; }
    const std::vector<double>& grid() const { return grid_; }

private:
    std::function<T(double)> g_;
    PVWindow win_;
    std::vector<double> grid_;
    std::vector<T> values_;
    std::vector<double> weights_;
};

extern template class PVTransform<double>;
extern template class PVTransform<cplx>;

/// One-shot principal value (samples g on every call).
double hilbert_pv(const RealFn& g, double x, const PVWindow& win);

/// S_{f,g}(E) = −(E²/4) f̂(E) ĝ(−E) + (iE/4) P∫ (dt/π) t f̂(t) ĝ(−t)/(t − E),
/// with the 1/t tail beyond the window added in closed form.
class SpectralS {
public:
    SpectralS(ComplexFn fhat, ComplexFn ghat, PVWindow win);
    SpectralS(const SpectralS&) = delete;
    SpectralS& operator=(const SpectralS&) = delete;
    cplx operator()(double E) const;

private:
    ComplexFn fhat_, ghat_;
    PVTransform<cplx> pv_;
};

cplx s_spectral(const ComplexFn& fhat, const ComplexFn& ghat, double E, const PVWindow& win);

/// F1(E) = |f1|²(E) − i H[|f1|²](E), with the constant level at the window
/// edges removed (its full-line transform vanishes).
class Dispersion {
public:
    Dispersion(RealFn f1sq, PVWindow win);
    cplx operator()(double E) const;

private:
    RealFn f1sq_;
    PVTransform<double> pv_;
    double level_;
};

cplx F1_dispersion(const RealFn& f1sq, double E, const PVWindow& win);

/// F_Z(E) = Z(E)² − i H[Z²](E) over the window (Z² sampled once).
class FZIntegral {
public:
    explicit FZIntegral(PVWindow win = {});
    cplx operator()(double E) const;

    /// Bound on the neglected |t| > d contribution to Im F_Z, from |Z|² ≲ t^{1/2}.
    double tail_bound(double E) const;

private:
    PVTransform<double> pv_;
};

cplx FZ_integral(double E, const PVWindow& win = {});

/// Truncated series for F_Z at (possibly complex) t with M terms; M <= 1e5.
cplx FZ_series(cplx t, int M);

/// p(t) = 2^{1/2 + it} − 1.
cplx series_p(cplx t);

}  // namespace xpjost
