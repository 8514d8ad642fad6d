#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace xpjost {

using cplx = std::complex<double>;

inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

/// f(q) = amplitude for 0 <= q < q_edge, 0 beyond.
struct Step {
    double amplitude = 0.0;
    double q_edge = 1.0;
};

struct ExpTerm {
    double coef = 0.0;
    double rate = 1.0;
};

/// f(q) = Σ coef_i e^{-rate_i q}. An empty sum is the zero potential.
struct ExpSum {
    std::vector<ExpTerm> terms;
};

/// a(x) = c J_{1/2}(λx) = c sin(λx) sqrt(2/(πλx)), x = e^q.
struct BesselHalf {
    double c = 0.0;
    double lambda = 1.0;
};

/// a(x) = (c/√x) ([x] − x + 1/2), x = e^q.
struct SawtoothZeta {
    double c = 0.0;
};

/// a(x) = (c/√x) Σ χ(m) cos(2π m x / f) / m for the real odd character mod f
/// (f = 3 or 4), summed in closed form.
struct DirichletSaw {
    double c = 0.0;
    int modulus = 4;
};

/// b(x) = 1 (the M1 model).
struct ConstantOne {};

/// Uniform samples values[j] = f(j h), h = q_max/(n-1); linear in between and
/// zero beyond q_max.
struct GridPotential {
    double q_max = 1.0;
    std::vector<double> values;

    int n() const { return static_cast<int>(values.size()); }
    double h() const { return q_max / (values.size() - 1); }
};

struct Sampled {
    GridPotential grid;
};

using PotentialSpec = std::variant<Step, ExpSum, BesselHalf, SawtoothZeta, DirichletSaw, ConstantOne, Sampled>;

/// Exponential piece α e^{-μ q} restricted to 0 <= q < edge (edge may be infinite).
struct Piece {
    double alpha = 0.0;
    double rate = 0.0;
    double edge = kInfinite;
};

/// Throws ConfigError on non-finite parameters, non-positive rates, etc.
void validate(const PotentialSpec& p);

/// Family tag as used in the JSON config ("step", "exp_sum", ...).
std::string family_name(const PotentialSpec& p);

/// True when the potential vanishes identically.
bool is_zero(const PotentialSpec& p);

/// True for families whose values decay as q -> ∞ (allowed with infinite L).
bool is_decaying(const PotentialSpec& p);

/// f(q) for q >= 0.
double eval_q(const PotentialSpec& p, double q);

/// Like eval_q but taking the left limit at a discontinuity (used for sampling).
double eval_q_left(const PotentialSpec& p, double q);

/// â(E) = ∫_0^∞ f(q) e^{iEq} dq, closed forms for every family except Sampled.
cplx fourier_hat(const PotentialSpec& p, cplx E);

/// â(E) by direct quadrature in x = e^q (cross-check path, real E or Im E > 0).
cplx fourier_hat_quadrature(const PotentialSpec& p, cplx E, double x_max = 1e4);

/// Uniform samples on [0, q_max] with n >= 2 nodes.
GridPotential sample(const PotentialSpec& p, double q_max, int n);

/// Exponential pieces of p restricted to [0, L), if p is a Step, ExpSum or
/// ConstantOne; std::nullopt otherwise.
std::optional<std::vector<Piece>> pieces(const PotentialSpec& p, double L);

/// Points in (0, q_end) where p or its derivative jumps.
std::vector<double> breakpoints(const PotentialSpec& p, double q_end);

/// Upper bound on a quadrature panel width that resolves p near q.
double resolution_width(const PotentialSpec& p, double q);

/// Smallest decay rate of p (0 for non-exponential families).
double min_decay_rate(const PotentialSpec& p);

/// J(k, e) = ∫_0^e e^{-k q} dq = (1 - e^{-k e})/k, with J(k, ∞) = 1/k.
cplx exp_integral(cplx k, double e);

/// Log Γ(z) away from the poles, continued to Re z <= 0 by recurrence.
cplx log_gamma_continued(cplx z);

}  // namespace xpjost
