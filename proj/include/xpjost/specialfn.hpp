#pragma once

#include <complex>

namespace xpjost {

using cplx = std::complex<double>;

/// Row of the zeta table: θ, Z, ζ(1/2+it) and the smooth count at one ordinate.
struct CountingPoint {
    double t = 0.0;
    double theta = 0.0;
    double Z = 0.0;
    cplx zeta;
    double n_smooth = 0.0;
};

/// Analytic log Γ(z) for Re z > 0 (real on the positive axis, continuous in
/// the right half plane). Throws DomainError when Re z <= 0.
cplx log_gamma(cplx z);

/// θ(t) = Im log Γ(1/4 + it/2) − (t/2) ln π, for |t| <= 1e4.
double riemann_siegel_theta(double t);

/// Options for the accelerated alternating series behind ζ and L.
struct SeriesOptions {
    int term_budget = 2000;
    int max_doublings = 3;
    double tolerance = 1e-12;
};

/// ζ(s) for Re s > 0 via the accelerated alternating (η) series.
cplx zeta(cplx s, const SeriesOptions& opts = {});

/// ζ(1/2 + it) for |t| <= 500.
cplx zeta_critical(double t, const SeriesOptions& opts = {});

/// Z(t) = Re[e^{iθ(t)} ζ(1/2+it)]. Throws ConsistencyError if the imaginary
/// part exceeds 1e-6.
double riemann_siegel_Z(double t);

/// L(s, χ) for the real non-principal character mod 3 or mod 4, Re s > 0.
cplx dirichlet_L(cplx s, int modulus, const SeriesOptions& opts = {});

/// L(1/2 + it, χ) for modulus 3 or 4.
cplx dirichlet_L_critical(double t, int modulus, const SeriesOptions& opts = {});

/// Smooth zero count ⟨N(E)⟩ = (1/π) Im log Γ(1/4 + iE/2) − (E/2π) ln π + 1.
double smooth_counting(double E);

/// Large-E form (E/2π)(log(E/2π) − 1) + 7/8. The 7/8 is the +1 of
/// smooth_counting plus the −π/8 term of θ, so the two agree as E grows.
double smooth_counting_asymptotic(double E);

/// n-th smooth Riemann zero: the root of ⟨N(t)⟩ = n − 1/2, i.e.
/// θ(t) = (n − 3/2)π, on the increasing branch of θ (t > 6.29).
double smooth_zero(int n);

/// ζ_H(s) = (s − 1) ζ(s) / s.
cplx zeta_hardy(cplx s);

CountingPoint counting_point(double t);

}  // namespace xpjost
