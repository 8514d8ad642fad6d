#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xpjost/errors.hpp"
#include "xpjost/jost.hpp"
#include "xpjost/potentials.hpp"
#include "xpjost/specialfn.hpp"

using namespace xpjost;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
}  // namespace

TEST_CASE("eval_q per family") {
    const Step s{1.0, std::log(2.0)};
    CHECK(eval_q(s, 0.5) == 1.0);
    CHECK(eval_q(s, 0.8) == 0.0);
    CHECK(eval_q(s, std::log(2.0)) == 0.0);
    CHECK(eval_q_left(s, std::log(2.0)) == 1.0);

    const ExpSum e{{{10.0 / 3, 1.0}, {-10.0 / 3, 4.0}}};
    CHECK(eval_q(e, 0.0) == doctest::Approx(0.0));

    const BesselHalf b{-2.0, 2 * kPi};
    for (double x : {1.0, 1.3, 2.75, 10.2}) {
        const double expect = -(2.0 / kPi) * std::sin(2 * kPi * x) / std::sqrt(x);
        CHECK(eval_q(b, std::log(x)) == doctest::Approx(expect).epsilon(1e-12));
    }

    const SawtoothZeta z{-4.0};
    const double x = 2.3;
    CHECK(eval_q(z, std::log(x)) == doctest::Approx(-4.0 / std::sqrt(x) * (2.0 - x + 0.5)).epsilon(1e-12));
    CHECK(eval_q(ConstantOne{}, 5.0) == 1.0);
}

TEST_CASE("validation rejects bad parameters") {
    CHECK_THROWS_AS(validate(Step{1.0, -1.0}), ConfigError);
    CHECK_THROWS_AS(validate(ExpSum{{{1.0, 0.0}}}), ConfigError);
    CHECK_THROWS_AS(validate(ExpSum{{{NAN, 1.0}}}), ConfigError);
    CHECK_THROWS_AS(validate(BesselHalf{1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(validate(DirichletSaw{1.0, 5}), ConfigError);
    CHECK_THROWS_AS(validate(Sampled{{1.0, {1.0}}}), ConfigError);
    CHECK_NOTHROW(validate(Sampled{{1.0, {1.0, 2.0}}}));
}

TEST_CASE("fourier_hat closed forms") {
    const double mu = 1.7;
    for (cplx E : {cplx(0.0), cplx(2.0, 0.0), cplx(-1.0, 0.5)})
        CHECK(std::abs(fourier_hat(ExpSum{{{1.0, mu}}}, E) - 1.0 / (mu - kI * E)) < 1e-14);
    const Step s{0.7, 1.3};
    const cplx E(1.1, 0.2);
    CHECK(std::abs(fourier_hat(s, E) - 0.7 * (std::exp(kI * E * 1.3) - 1.0) / (kI * E)) < 1e-14);
    CHECK(std::abs(fourier_hat(s, 0.0) - 0.7 * 1.3) < 1e-14);
    CHECK_THROWS_AS(fourier_hat(ExpSum{{{1.0, 2.0}}}, cplx(0.0, -2.0)), PoleError);
}

TEST_CASE("fourier_hat against quadrature in x") {
    for (const PotentialSpec& p :
         {PotentialSpec{SawtoothZeta{-4.0}}, PotentialSpec{BesselHalf{-2.0, 2 * kPi}}, PotentialSpec{DirichletSaw{1.0, 4}},
          PotentialSpec{DirichletSaw{1.0, 3}}}) {
        for (double t : {0.0, 1.0, 3.0}) {
            CAPTURE(family_name(p));
            CAPTURE(t);
            CHECK(std::abs(fourier_hat(p, t) - fourier_hat_quadrature(p, t, 1e4)) < 1e-4);
        }
    }
    // Off the real axis the continuation matches the convergent integral.
    const cplx E(1.0, 0.3);
    CHECK(std::abs(fourier_hat(SawtoothZeta{-4.0}, E) - fourier_hat_quadrature(SawtoothZeta{-4.0}, E, 1e4)) < 1e-5);
}

TEST_CASE("Bessel transform approaches its large-t asymptotic") {
    // R(t) = (it/2) â(t) → −(c/2)[e^{2iθ(t)} + J_{1/2}(λ)], J_{1/2}(2π) = 0. The next
    // order is ≈ cλJ'(λ)/(2t), so the deviation falls like 1/t.
    const BesselHalf b{-2.0, 2 * kPi};
    auto deviation = [&](double t) {
        return std::abs(transform_R(b, t, kInfinite) - std::exp(2.0 * kI * riemann_siegel_theta(t)));
    };
    CHECK(deviation(40.0) < 0.06);
    CHECK(deviation(80.0) < 0.05);
    CHECK(deviation(160.0) == doctest::Approx(0.5 * deviation(80.0)).epsilon(0.1));
}

TEST_CASE("fourier_hat is analytic in the upper half plane") {
    const PotentialSpec families[] = {Step{1.2, 0.8}, ExpSum{{{1.0, 0.5}, {-0.5, 2.0}}}, BesselHalf{-2.0, 2 * kPi},
                                      SawtoothZeta{-4.0}, DirichletSaw{1.0, 4}, DirichletSaw{1.0, 3}};
    const double h = 1e-4;
    for (const auto& p : families) {
        for (double x = -20.0; x <= 20.0; x += 2.5) {
            const cplx z(x, 0.5);
            const cplx v = fourier_hat(p, z);
            CAPTURE(family_name(p));
            CAPTURE(x);
            CHECK(std::isfinite(std::abs(v)));
            // Cauchy-Riemann: ∂_x f = −i ∂_y f.
            const cplx dx = (fourier_hat(p, z + h) - fourier_hat(p, z - h)) / (2 * h);
            const cplx dy = (fourier_hat(p, z + kI * h) - fourier_hat(p, z - kI * h)) / (2 * h);
            CHECK(std::abs(dx + kI * dy) < 1e-4);
        }
    }
}

TEST_CASE("sawtooth Fourier partial sums converge away from integers") {
    // [x] − x + 1/2 = Σ_m sin(2πmx)/(πm) away from the integers.
    for (double x : {1.5, 1.3, 2.77}) {
        double partial = 0.0;
        for (int m = 1; m <= 10000; ++m) partial += std::sin(2 * kPi * m * x) / (kPi * m);
        const double value = eval_q(SawtoothZeta{1.0}, std::log(x)) * std::sqrt(x);
        CHECK(std::abs(partial - value) < 1e-3);
    }
}

TEST_CASE("sampling") {
    const GridPotential one = sample(ConstantOne{}, 1.0, 3);
    CHECK(one.values == std::vector<double>{1.0, 1.0, 1.0});
    const GridPotential step = sample(Step{2.0, 0.5}, 1.0, 5);
    CHECK(step.values == std::vector<double>{2.0, 2.0, 2.0, 0.0, 0.0});
    CHECK_THROWS_AS(sample(ConstantOne{}, 1.0, 1), DomainError);

    // Linear interpolation error is O(h²): halving h quarters the max error.
    const ExpSum p{{{1.0, 1.5}, {0.5, 0.4}}};
    auto max_error = [&](int n) {
        const Sampled s{sample(p, 4.0, n)};
        double worst = 0.0;
        for (double q = 0.0; q <= 4.0; q += 0.0013) worst = std::max(worst, std::abs(eval_q(s, q) - eval_q(p, q)));
        return worst;
    };
    CHECK(max_error(41) / max_error(81) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("pieces cover step and exponential families only") {
    CHECK(pieces(Step{1.0, 2.0}, 1.5)->front().edge == 1.5);
    CHECK(pieces(ExpSum{{{1.0, 2.0}}}, kInfinite)->size() == 1);
    CHECK_FALSE(pieces(BesselHalf{1.0, 1.0}, kInfinite).has_value());
    CHECK(is_decaying(SawtoothZeta{1.0}));
    CHECK_FALSE(is_decaying(ConstantOne{}));
    CHECK(is_zero(ExpSum{}));
}
