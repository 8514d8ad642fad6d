#pragma once

#include <array>
#include <complex>
#include <optional>

#include "xpjost/potentials.hpp"

namespace xpjost {

enum class ModelKind { M1, M2 };

/// Interacting model: M1 uses a single potential a (b ≡ 1), M2 uses a and b.
/// L is the cutoff log N, or kInfinite.
struct ModelSpec {
    ModelKind kind = ModelKind::M1;
    PotentialSpec a = ExpSum{};
    PotentialSpec b = ConstantOne{};
    double L = kInfinite;
};

ModelSpec make_m1(PotentialSpec a, double L = kInfinite);
ModelSpec make_m2(PotentialSpec a, PotentialSpec b, double L = kInfinite);

/// Throws ConfigError on invalid potentials, non-positive L, or a
/// non-decaying potential with infinite L.
void validate(const ModelSpec& m);

struct JostValue {
    cplx E;
    cplx F;
    cplx F_neg;               // F(-E)
    std::optional<cplx> f1;   // 1 + R_a(E), M1 only
};

/// Null vector of the 3x3 amplitude system. For M1 the third entry is C_{1,∞}.
struct AmplitudeVector {
    cplx A;
    cplx B;
    cplx C_inf;
};

using Matrix3 = std::array<std::array<cplx, 3>, 3>;

/// R_f(E) = (iE/2) ∫_0^L f(q) e^{iEq} dq.
cplx transform_R(const PotentialSpec& f, cplx E, double L);

/// S_{f,g}(E) = (iE/2) ∫ f g − (E²/2) ∫_0^L dq f e^{iEq} ∫_0^q dq' g e^{-iEq'}.
/// Closed forms for step/exponential families; panel quadrature for finite
/// support; the spectral (dispersion) representation for the remaining
/// infinite-L cases (real E only).
cplx transform_S(const PotentialSpec& f, const PotentialSpec& g, cplx E, double L);

/// Quadrature paths, bypassing the closed forms (used to cross-check them).
cplx transform_R_quadrature(const PotentialSpec& f, cplx E, double L);
cplx transform_S_quadrature(const PotentialSpec& f, const PotentialSpec& g, cplx E, double L);

/// S_{f, q·g}: second argument multiplied pointwise by q (step/exponential families).
cplx transform_S_qweighted(const PotentialSpec& f, const PotentialSpec& g, cplx E, double L);

/// ∫_0^L f g dq.
double overlap(const PotentialSpec& f, const PotentialSpec& g, double L);

/// F1 = 1 + 2R_a − S_{a,a}, f1 = 1 + R_a.
JostValue jost_F1(const ModelSpec& m, cplx E);

/// F = 1 + S_{a,b} − S_{b,a} + S_{a,a} S_{b,b} − S_{a,b} S_{b,a}.
JostValue jost_F(const ModelSpec& m, cplx E);

/// Dispatches on m.kind.
JostValue jost(const ModelSpec& m, cplx E);

/// F(E) only (no F(-E) evaluation).
cplx jost_function(const ModelSpec& m, cplx E);

/// D(E) = F(E) + F(−E) e^{iEL}; real roots are the finite-L levels.
cplx eigencondition(const ModelSpec& m, cplx E);

/// Rows of the homogeneous system acting on (A, B, C_∞) (M2) or (A, B, C_{1,∞}) (M1).
/// With infinite L the phase e^{iEL} is replaced by 1.
Matrix3 system_matrix(const ModelSpec& m, double E);

/// w = v1 × v2. Throws CollinearityError when |v1 × v2| < 1e-12 |v1||v2|.
AmplitudeVector amplitudes(const ModelSpec& m, double E);

/// Null vector from the best-conditioned pair of rows; for use where v1 ∥ v2.
AmplitudeVector amplitudes_exceptional(const ModelSpec& m, double E);

/// |S w| / |w| for the system at E.
double system_residual(const ModelSpec& m, double E, const AmplitudeVector& w);

/// φ̃(q) = √x ψ(x) at q = log x.
cplx wavefunction_q(const ModelSpec& m, double E, const AmplitudeVector& w, double q);

/// ψ(x) = x^{-1/2+iE} [C + ∫_1^x dx' x'^{-iE} (a'B − b'A)] for x in [1, e^L].
cplx wavefunction(const ModelSpec& m, double E, const AmplitudeVector& w, double x);

/// ⟨ψ|ψ⟩ of a localized M2 state with infinite L, from the Ω quadratic form.
double norm_localized(const ModelSpec& m, double E, const AmplitudeVector& w);

}  // namespace xpjost
