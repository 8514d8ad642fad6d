#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "xpjost/errors.hpp"
#include "xpjost/hilbert.hpp"
#include "xpjost/jost.hpp"
#include "xpjost/specialfn.hpp"
#include "xpjost/spectrum.hpp"

using namespace xpjost;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
double lorentz(double y) { return 1.0 / (1.0 + y * y); }
}  // namespace

TEST_CASE("window validation") {
    CHECK_THROWS_AS(validate(PVWindow{1.0, 0.5}), ConfigError);
    CHECK_THROWS_AS(validate(PVWindow{10.0, 0.0}), ConfigError);
    CHECK_NOTHROW(validate(PVWindow{}));
    CHECK_THROWS_AS(hilbert_pv(lorentz, 399.9, PVWindow{}), WindowError);
}

TEST_CASE("principal value of simple functions") {
    const PVWindow win{};
    CHECK(std::abs(hilbert_pv([](double) { return 2.5; }, 0.0, win)) < 1e-12);
    for (double x : {0.3, 1.0, 2.7, 11.0}) {
        const double lib = hilbert_pv(lorentz, x, win);
        const double ref = oracle::dense_pv(lorentz, x, win.d, win.mesh / 10);
        CAPTURE(x);
        CHECK(std::abs(lib - ref) < 1e-6);
        // Even in, odd out.
        CHECK(std::abs(hilbert_pv(lorentz, -x, win) + lib) < 1e-12);
    }
}

TEST_CASE("principal value is linear") {
    const PVWindow win{50.0, 0.05};
    auto f = [](double y) { return std::exp(-y * y); };
    auto g = [](double y) { return std::sin(y) / (1.0 + y * y); };
    const double alpha = 1.7, beta = -0.4;
    for (double x : {-3.0, 0.2, 4.4}) {
        const double lhs = hilbert_pv([&](double y) { return alpha * f(y) + beta * g(y); }, x, win);
        const double rhs = alpha * hilbert_pv(f, x, win) + beta * hilbert_pv(g, x, win);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("spectral representation of S") {
    const PotentialSpec f = ExpSum{{{1.0, 1.0}}}, g = ExpSum{{{1.0, 3.0}}};
    auto fhat = [&](double t) { return fourier_hat(f, t); };
    auto ghat = [&](double t) { return fourier_hat(g, t); };
    const PVWindow win{};
    CHECK(std::abs(s_spectral(fhat, ghat, 0.0, win)) < 1e-14);
    const cplx closed = -1.0 / (2 * (1.0 + 3.0)) * 1.0 / (1.0 + kI * 1.0);
    CHECK(std::abs(s_spectral(fhat, ghat, 1.0, win) - closed) < 1e-4);
    for (double E : {0.5, 2.0, 7.0}) {
        CHECK(std::abs(s_spectral(fhat, ghat, E, win) - transform_S(f, g, E, kInfinite)) < 1e-4);
        // S*(E) = S(−E) for real potentials.
        CHECK(std::abs(std::conj(s_spectral(fhat, ghat, E, win)) - s_spectral(fhat, ghat, -E, win)) < 1e-10);
    }
}

TEST_CASE("dispersion construction of F1") {
    const PVWindow win{};
    CHECK(std::abs(F1_dispersion([](double) { return 1.0; }, 3.0, win) - 1.0) < 1e-10);

    const ModelSpec m = make_m1(ExpSum{{{0.9, 1.3}, {-0.4, 0.6}}});
    const RealFn f1sq = f1_squared(m);
    for (double E : {-5.0, 0.4, 2.0, 9.0}) {
        CAPTURE(E);
        CHECK(std::abs(F1_dispersion(f1sq, E, win) - jost_function(m, E)) < 1e-4);
    }

    // Bessel potential: F1 ≈ 4 cos θ e^{iθ} on (20, 30).
    const JostEvaluator bes(make_m1(BesselHalf{-2.0, 2 * kPi}));
    CHECK(bes.uses_dispersion());
    for (double t = 20.5; t < 30.0; t += 0.5) {
        const double th = riemann_siegel_theta(t);
        CAPTURE(t);
        CHECK(std::abs(bes(t) - 4.0 * std::cos(th) * std::exp(kI * th)) < 0.5);
    }
}

TEST_CASE("F_Z by the Cauchy integral") {
    const FZIntegral fz{};
    for (double E : {12.0, 21.3, 37.0}) {
        const double z2 = std::pow(riemann_siegel_Z(E), 2);
        CHECK(fz(E).real() == doctest::Approx(z2).epsilon(1e-12));
        CHECK(std::abs(fz(E) + fz(-E) - 2.0 * z2) < 1e-10);
        CHECK(fz.tail_bound(E) > 0.0);
    }
    const double g1 = 14.134725141734693;
    CHECK(std::abs(fz(g1).real()) < 1e-4);
    CHECK(std::abs(fz(g1).imag()) > 0.01);
}

TEST_CASE("F_Z series") {
    CHECK(std::abs(series_p(0.0) - (std::sqrt(2.0) - 1.0)) < 1e-15);
    CHECK_THROWS(FZ_series(20.0, 100001));
    // 1/p(t) poles in the upper half plane cancel between terms.
    for (double x : {-3.7, 0.0, 1.1, 9.4}) {
        const cplx v = FZ_series(cplx(x, 0.5), 300);
        CAPTURE(x);
        CHECK(std::isfinite(v.real()));
        CHECK(std::isfinite(v.imag()));
    }
    const cplx s = FZ_series(20.0, 5000);
    CHECK(std::abs(s.imag() - FZ_integral(20.0).imag()) < 0.5);
}
