#pragma once

// Reference implementations used only by the tests. They deliberately take
// different numerical routes from the library code they check.

#include <array>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "xpjost/jost.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// log Γ(z) by shifting z up by `shift` with the recurrence and applying a
/// Stirling series with Bernoulli terms up to B_20, in long double.
cplx log_gamma_shifted(cplx z, int shift = 20);

/// ζ(s) by Euler-Maclaurin summation (direct sum to N, 12 correction terms).
cplx zeta_euler_maclaurin(cplx s);

/// Hurwitz ζ(s, a) by Euler-Maclaurin.
cplx hurwitz_euler_maclaurin(cplx s, double a);

/// L(s, χ) for the real character mod 3 or 4 through Hurwitz zeta.
cplx dirichlet_L_hurwitz(cplx s, int modulus);

/// Principal value P∫_{-d}^{d} dy/π g(y)/(y − x) by a midpoint rule placed
/// symmetrically around x with spacing h (symmetric excision of the pole).
double dense_pv(const std::function<double(double)>& g, double x, double d, double h);

/// S_{f,g}(E) and R_f(E) by brute-force trapezoid sums on [0, Q] with n steps,
/// the inner integral accumulated alongside.
cplx brute_S(const std::function<double(double)>& f, const std::function<double(double)>& g, cplx E, double Q,
             int n);
cplx brute_R(const std::function<double(double)>& f, cplx E, double Q, int n);

/// Eigenvalues (ascending) of i K for a real antisymmetric 4x4 K via its
/// characteristic polynomial λ⁴ − s λ² + Pf² with s = Σ_{j<k} K_jk².
std::array<double, 4> antisymmetric4_eigenvalues(const std::array<std::array<double, 4>, 4>& K);

/// Roots of (1 + κ)E² + i(μ1 + μ2)E − μ1μ2 = 0, κ = ρ²/4 − ρ.
std::array<cplx, 2> algebraic_pair_zeros(double a1, double b1, double mu1, double mu2);

/// Random model generators (fixed seeds are the caller's business).
xpjost::PotentialSpec random_step(std::mt19937& rng);
xpjost::PotentialSpec random_expsum(std::mt19937& rng, int terms = 2);
xpjost::ModelSpec random_real_model(std::mt19937& rng);

}  // namespace oracle
