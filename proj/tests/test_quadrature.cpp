#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <berezin/quadrature.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"

using namespace berezin;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Complex monomial_pair(Complex z, int a, int b) {
    return std::pow(z, a) * std::pow(std::conj(z), b);
}

}

TEST_CASE("rule metadata and normalization constants") {
    const QuadratureRule plane = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 10);
    CHECK(plane.normalization() == doctest::Approx(1.0));
    CHECK(plane.angular_order() == 44);
    CHECK(plane.max_degree() == 10);
    CHECK(plane.tolerance() == 1e-10);
    CHECK(plane.node_count() == static_cast<int>(plane.radial_nodes().size()) * 44);

    const QuadratureRule sphere = build_rule(PhaseSpace::sphere(), 4.0, 1e-10, 4);
    CHECK(sphere.normalization() == doctest::Approx(5.0));
    const QuadratureRule disc = build_rule(PhaseSpace::disc(), 4.0, 1e-10, 8);
    CHECK(disc.normalization() == doctest::Approx(3.0));

    const QuadratureRule scaled = build_rule(PhaseSpace::plane(), 2.0, 1e-10, 6);
    CHECK(scaled.normalization() == doctest::Approx(2.0));

    const Complex node = plane.node(3, 7);
    const double r = plane.radial_nodes()(3);
    CHECK(std::abs(node) == doctest::Approx(r));
    CHECK(std::arg(node) == doctest::Approx(2.0 * 3.14159265358979323846 * 7 / 44));
    CHECK(plane.node_weight(3, 7) == doctest::Approx(plane.radial_weights()(3) / 44.0));
}

TEST_CASE("constant integrates to one on every model space") {
    auto one = [](Complex) { return Complex(1.0, 0.0); };
    for (double inv_hbar : {1.0, 2.0, 8.0}) {
        const QuadratureRule rule = build_rule(PhaseSpace::plane(), inv_hbar, 1e-10, 12);
        CHECK(integrate(rule, one).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (double big_n : {4.0, 8.0, 16.0}) {
        const QuadratureRule rule = build_rule(PhaseSpace::sphere(), big_n, 1e-10,
                                               static_cast<int>(big_n));
        CHECK(integrate(rule, one).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (double s : {1.5, 4.0, 10.0}) {
        const QuadratureRule rule = build_rule(PhaseSpace::disc(), s, 1e-10, 10);
        CHECK(integrate(rule, one).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("monomial norms match the closed forms") {
    const QuadratureRule plane = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 10);
    for (int m = 0; m <= 10; ++m) {
        const Complex value = integrate(plane, [m](Complex z) {
            return Complex(std::pow(std::norm(z), m), 0.0);
        });
        CHECK(value.real() == doctest::Approx(oracles::plane_gram(1.0, m)).epsilon(1e-10));
    }

    const QuadratureRule scaled = build_rule(PhaseSpace::plane(), 2.0, 1e-10, 8);
    for (int m = 0; m <= 8; ++m) {
        const Complex value = integrate(scaled, [m](Complex z) {
            return Complex(std::pow(std::norm(z), m), 0.0);
        });
        CHECK(value.real() == doctest::Approx(oracles::plane_gram(0.5, m)).epsilon(1e-10));
    }

    const QuadratureRule sphere = build_rule(PhaseSpace::sphere(), 8.0, 1e-10, 8);
    for (int m = 0; m <= 8; ++m) {
        const Complex value = integrate(sphere, [m](Complex z) {
            return Complex(std::pow(std::norm(z), m), 0.0);
        });
        CHECK(value.real() == doctest::Approx(oracles::sphere_gram(8, m)).epsilon(1e-10));
    }

    const QuadratureRule disc = build_rule(PhaseSpace::disc(), 6.0, 1e-10, 10);
    for (int m = 0; m <= 10; ++m) {
        const Complex value = integrate(disc, [m](Complex z) {
            return Complex(std::pow(std::norm(z), m), 0.0);
        });
        CHECK(value.real() == doctest::Approx(oracles::disc_gram(6.0, m)).epsilon(1e-10));
    }
}

TEST_CASE("non-polynomial radial integrands match adaptive Simpson") {
    const QuadratureRule plane = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 30);
    const double smooth = integrate(plane, [](Complex z) {
                              return Complex(std::exp(-0.5 * std::norm(z)), 0.0);
                          }).real();
    CHECK(smooth == doctest::Approx(oracles::plane_radial_integral(
                        1.0, 0, [](double t) { return std::exp(-0.5 * t); }))
                        .epsilon(1e-11));
    const double rational = integrate(plane, [](Complex z) {
                                return Complex(1.0 / (1.0 + std::norm(z)), 0.0);
                            }).real();
    CHECK(rational == doctest::Approx(oracles::plane_radial_integral(
                          1.0, 0, [](double t) { return 1.0 / (1.0 + t); }))
                          .epsilon(1e-6));

    const QuadratureRule sphere = build_rule(PhaseSpace::sphere(), 6.0, 1e-10, 6);
    const double sphere_value = integrate(sphere, [](Complex z) {
                                    return Complex(1.0 / (2.0 + std::norm(z)), 0.0);
                                }).real();
    CHECK(sphere_value == doctest::Approx(oracles::sphere_radial_integral(
                              6, 0, [](double t) { return 1.0 / (2.0 + t); }))
                              .epsilon(1e-11));

    const QuadratureRule disc = build_rule(PhaseSpace::disc(), 4.0, 1e-10, 10);
    const double disc_value = integrate(disc, [](Complex z) {
                                  return Complex(1.0 / (2.0 - std::norm(z)), 0.0);
                              }).real();
    CHECK(disc_value == doctest::Approx(oracles::disc_radial_integral(
                            4.0, 0, [](double t) { return 1.0 / (2.0 - t); }))
                            .epsilon(1e-11));
}

TEST_CASE("angular orthogonality of distinct monomials is exact") {
    const QuadratureRule plane = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 10);
    const QuadratureRule disc = build_rule(PhaseSpace::disc(), 5.0, 1e-10, 10);
    for (int a = 0; a <= 6; ++a) {
        for (int b = 0; b <= 6; ++b) {
            if (a == b) continue;
            const Complex p = integrate(plane, [&](Complex z) { return monomial_pair(z, a, b); });
            CHECK(std::abs(p) <= 1e-10);
            const Complex d = integrate(disc, [&](Complex z) { return monomial_pair(z, a, b); });
            CHECK(std::abs(d) <= 1e-10);
        }
    }
}

TEST_CASE("integrate is linear") {
    const QuadratureRule rule = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 12);
    std::mt19937 rng(987654);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Complex> cf(5), cg(5);
        for (auto& c : cf) c = Complex(coeff(rng), coeff(rng));
        for (auto& c : cg) c = Complex(coeff(rng), coeff(rng));
        const Complex alpha(coeff(rng), coeff(rng));
        auto f = [&](Complex z) {
            Complex acc(0.0, 0.0);
            for (int d = 4; d >= 0; --d) acc = acc * z + cf[d];
            return acc * std::conj(z);
        };
        auto g = [&](Complex z) {
            Complex acc(0.0, 0.0);
            for (int d = 4; d >= 0; --d) acc = acc * z + cg[d];
            return acc;
        };
        const Complex combined = integrate(rule, [&](Complex z) { return alpha * f(z) + g(z); });
        const Complex split = alpha * integrate(rule, f) + integrate(rule, g);
        CHECK(std::abs(combined - split) <= 1e-12);
    }
}

TEST_CASE("integrals agree across rules sized for different degrees") {
    const QuadratureRule small = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 8);
    const QuadratureRule large = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 24);
    auto f = [](Complex z) {
        return Complex(std::norm(z) * std::norm(z), 0.0) + 0.5 * z * std::conj(z);
    };
    const Complex a = integrate(small, f);
    const Complex b = integrate(large, f);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
}

TEST_CASE("custom rule reproduces displaced-Gaussian moments") {
    const double kappa = 0.3;
    auto potential = [kappa](Complex z) {
        return std::norm(z) + kappa * (z + std::conj(z)).real();
    };
    const PhaseSpace space = PhaseSpace::custom(potential, kInf);
    const QuadratureRule rule = build_rule(space, 1.0, 1e-10, 8);

    const Complex one = integrate(rule, [](Complex) { return Complex(1.0, 0.0); });
    CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(one.imag()) <= 1e-12);

    const Complex t1 = integrate(rule, [](Complex z) { return Complex(std::norm(z), 0.0); });
    CHECK(t1.real() ==
          doctest::Approx(oracles::displaced_gaussian_gram(kappa, 1, 1)).epsilon(1e-8));

    const Complex zbar_moment = integrate(rule, [](Complex z) { return z; });
    CHECK(zbar_moment.real() ==
          doctest::Approx(oracles::displaced_gaussian_gram(kappa, 0, 1)).epsilon(1e-8));
    CHECK(std::abs(zbar_moment.imag()) <= 1e-10);
}

TEST_CASE("tighter tolerance does not lose accuracy") {
    const double kappa = 0.3;
    auto potential = [kappa](Complex z) {
        return std::norm(z) + kappa * (z + std::conj(z)).real();
    };
    const PhaseSpace space = PhaseSpace::custom(potential, kInf);
    const double exact = oracles::displaced_gaussian_gram(kappa, 1, 1);
    auto moment = [](const QuadratureRule& rule) {
        return integrate(rule, [](Complex z) { return Complex(std::norm(z), 0.0); }).real();
    };
    const double loose = moment(build_rule(space, 1.0, 1e-4, 8));
    const double tight = moment(build_rule(space, 1.0, 1e-12, 8));
    CHECK(std::abs(loose - exact) <= 1e-2);
    CHECK(std::abs(tight - exact) <= 1e-8);
    CHECK(std::abs(tight - exact) <= std::abs(loose - exact) + 1e-12);
}

TEST_CASE("build_rule validates its parameters") {
    CHECK_THROWS_AS(build_rule(PhaseSpace::sphere(), 4.5, 1e-10, 4), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_rule(PhaseSpace::sphere(), 4.5, 1e-10, 4),
                         "1/hbar must be an integer for the sphere space", std::invalid_argument);
    CHECK_THROWS_AS(build_rule(PhaseSpace::disc(), 1.0, 1e-10, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(PhaseSpace::disc(), 0.5, 1e-10, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(PhaseSpace::plane(), 0.0, 1e-10, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(PhaseSpace::plane(), -1.0, 1e-10, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(PhaseSpace::plane(), 1.0, 1e-15, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(PhaseSpace::plane(), 1.0, 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_rule(PhaseSpace::plane(), 1.0, 1e-10, -1), std::invalid_argument);
}

TEST_CASE("unreachable tolerance exhausts the node budget") {
    auto barely_divergent = [](Complex z) { return -0.05 * std::log1p(-std::norm(z)); };
    const PhaseSpace space = PhaseSpace::custom(barely_divergent, 1.0);
    CHECK_THROWS_AS(build_rule(space, 1.0, 1e-10, 4), std::runtime_error);
}

TEST_CASE("non-finite integrand values are reported") {
    const QuadratureRule rule = build_rule(PhaseSpace::plane(), 1.0, 1e-10, 4);
    CHECK_THROWS_AS(integrate(rule, [](Complex) { return Complex(kInf, 0.0); }),
                    std::runtime_error);
    CHECK_THROWS_AS(
        integrate(rule, [](Complex) { return Complex(std::nan(""), 0.0); }),
        std::runtime_error);
}

TEST_CASE("divergence detection on the model spaces") {
    for (int m : {0, 3, 10, 20, 60})
        for (double inv_hbar : {0.5, 1.0, 4.0})
            CHECK_FALSE(detect_divergence(PhaseSpace::plane(), inv_hbar, m));

    for (int big_n : {4, 8}) {
        for (int m = 0; m <= big_n; ++m)
            CHECK_FALSE(detect_divergence(PhaseSpace::sphere(), big_n, m));
        for (int m = big_n + 1; m <= big_n + 3; ++m)
            CHECK(detect_divergence(PhaseSpace::sphere(), big_n, m));
    }

    for (int m : {0, 2, 7}) {
        CHECK_FALSE(detect_divergence(PhaseSpace::disc(), 4.0, m));
        CHECK_FALSE(detect_divergence(PhaseSpace::disc(), 1.2, m));
        CHECK(detect_divergence(PhaseSpace::disc(), 1.0, m));
        CHECK(detect_divergence(PhaseSpace::disc(), 0.8, m));
    }

    CHECK_THROWS_AS(detect_divergence(PhaseSpace::plane(), 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(detect_divergence(PhaseSpace::plane(), 1.0, -1), std::invalid_argument);
}

TEST_CASE("growth probe corroborates the analytic divergence rules") {
    for (int m : {0, 3, 10, 20})
        CHECK(divergence_growth_probe(PhaseSpace::plane(), 1.0, m) ==
              detect_divergence(PhaseSpace::plane(), 1.0, m));
    for (int big_n : {4, 8})
        for (int m = 0; m <= big_n + 3; ++m)
            CHECK(divergence_growth_probe(PhaseSpace::sphere(), big_n, m) ==
                  detect_divergence(PhaseSpace::sphere(), big_n, m));
    for (double s : {0.8, 1.0, 1.5, 4.0, 10.0})
        for (int m : {0, 2, 5})
            CHECK(divergence_growth_probe(PhaseSpace::disc(), s, m) ==
                  detect_divergence(PhaseSpace::disc(), s, m));
}

TEST_CASE("custom divergence goes through the growth probe") {
    auto sphere_like = [](Complex z) { return 2.0 * std::log1p(std::norm(z)); };
    const PhaseSpace space = PhaseSpace::custom(sphere_like, kInf);
    CHECK_FALSE(detect_divergence(space, 1.0, 0));
    CHECK_FALSE(detect_divergence(space, 1.0, 2));
    CHECK(detect_divergence(space, 1.0, 3));
    CHECK(detect_divergence(space, 1.0, 5));

    auto gaussian = [](Complex z) { return std::norm(z); };
    const PhaseSpace plane_like = PhaseSpace::custom(gaussian, kInf);
    for (int m = 0; m <= 8; ++m) CHECK_FALSE(detect_divergence(plane_like, 1.0, m));
}
