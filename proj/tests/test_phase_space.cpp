#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <berezin/phase_space.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

using namespace berezin;

TEST_CASE("space kind names round-trip") {
    CHECK(to_string(SpaceKind::Plane) == "plane");
    CHECK(to_string(SpaceKind::Sphere) == "sphere");
    CHECK(to_string(SpaceKind::Disc) == "disc");
    CHECK(to_string(SpaceKind::Custom) == "custom");
    CHECK(space_kind_from_string("plane") == SpaceKind::Plane);
    CHECK(space_kind_from_string("sphere") == SpaceKind::Sphere);
    CHECK(space_kind_from_string("disc") == SpaceKind::Disc);
    CHECK(space_kind_from_string("custom") == SpaceKind::Custom);
    CHECK_THROWS_AS(space_kind_from_string("torus"), std::invalid_argument);
}

TEST_CASE("potential values at reference points") {
    CHECK(potential_eval(PhaseSpace::plane(), Complex(0.0, 0.0)) == 0.0);
    CHECK(potential_eval(PhaseSpace::plane(), Complex(1.0, 1.0)) == doctest::Approx(2.0));
    CHECK(potential_eval(PhaseSpace::sphere(), Complex(1.0, 0.0)) ==
          doctest::Approx(std::log(2.0)));
    CHECK(potential_eval(PhaseSpace::disc(), Complex(0.5, 0.0)) ==
          doctest::Approx(-std::log(0.75)));
    CHECK(potential_eval(PhaseSpace::sphere(), Complex(0.0, 0.0)) == 0.0);
    CHECK(potential_eval(PhaseSpace::disc(), Complex(0.0, 0.0)) == 0.0);
}

TEST_CASE("metric and measure density at reference points") {
    CHECK(metric_eval(PhaseSpace::plane(), Complex(0.0, 0.0)) == doctest::Approx(1.0));
    CHECK(metric_eval(PhaseSpace::sphere(), Complex(0.0, 0.0)) == doctest::Approx(1.0));
    CHECK(metric_eval(PhaseSpace::disc(), Complex(0.0, 0.0)) == doctest::Approx(1.0));
    CHECK(metric_eval(PhaseSpace::sphere(), Complex(1.0, 0.0)) == doctest::Approx(0.25));
    CHECK(metric_eval(PhaseSpace::disc(), Complex(0.5, 0.0)) == doctest::Approx(16.0 / 9.0));
    CHECK(measure_density(PhaseSpace::sphere(), Complex(1.0, 0.0)) == doctest::Approx(0.25));
    CHECK(measure_density(PhaseSpace::disc(), Complex(0.5, 0.0)) == doctest::Approx(16.0 / 9.0));
    CHECK(measure_density(PhaseSpace::plane(), Complex(3.0, -2.0)) == doctest::Approx(1.0));
}

TEST_CASE("domain membership and volume flags") {
    CHECK(PhaseSpace::plane().contains(Complex(1e6, -1e6)));
    CHECK(PhaseSpace::sphere().contains(Complex(50.0, 0.0)));
    CHECK(PhaseSpace::disc().contains(Complex(0.99, 0.0)));
    CHECK_FALSE(PhaseSpace::disc().contains(Complex(1.0, 0.0)));
    CHECK_FALSE(PhaseSpace::disc().contains(Complex(0.8, 0.8)));
    CHECK_FALSE(PhaseSpace::plane().has_finite_volume());
    CHECK(PhaseSpace::sphere().has_finite_volume());
    CHECK_FALSE(PhaseSpace::disc().has_finite_volume());
    CHECK_THROWS_AS(potential_eval(PhaseSpace::disc(), Complex(1.0, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(metric_eval(PhaseSpace::disc(), Complex(0.9, 0.9)), std::invalid_argument);
}

TEST_CASE("custom space construction rejects bad parameters") {
    CHECK_THROWS_AS(PhaseSpace::custom(nullptr, 1.0), std::invalid_argument);
    auto quadratic = [](Complex z) { return std::norm(z); };
    CHECK_THROWS_AS(PhaseSpace::custom(quadratic, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSpace::custom(quadratic, -2.0), std::invalid_argument);
    const PhaseSpace bounded = PhaseSpace::custom(quadratic, 2.0);
    CHECK(bounded.contains(Complex(1.9, 0.0)));
    CHECK_FALSE(bounded.contains(Complex(2.0, 0.0)));
    CHECK_FALSE(bounded.has_finite_volume());
}

TEST_CASE("model metrics agree with a Richardson stencil on the potential") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> angle(0.0, 6.28318530717958647692);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double theta = angle(rng);
        {
            const Complex z = std::polar(2.0 * unit(rng), theta);
            auto k = [](Complex p) { return potential_eval(PhaseSpace::plane(), p); };
            CHECK(metric_eval(PhaseSpace::plane(), z) ==
                  doctest::Approx(oracles::metric_richardson(k, z, 1e-3)).epsilon(1e-6));
        }
        {
            const Complex z = std::polar(3.0 * unit(rng), theta);
            auto k = [](Complex p) { return potential_eval(PhaseSpace::sphere(), p); };
            CHECK(metric_eval(PhaseSpace::sphere(), z) ==
                  doctest::Approx(oracles::metric_richardson(k, z, 1e-3)).epsilon(1e-6));
        }
        {
            const Complex z = std::polar(0.9 * unit(rng), theta);
            auto k = [](Complex p) { return potential_eval(PhaseSpace::disc(), p); };
            CHECK(metric_eval(PhaseSpace::disc(), z) ==
                  doctest::Approx(oracles::metric_richardson(k, z, 1e-4)).epsilon(1e-6));
        }
    }
}

TEST_CASE("model potentials are rotation invariant") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> angle(0.0, 6.28318530717958647692);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double r = 0.9 * unit(rng);
        const Complex z = std::polar(r, angle(rng));
        for (const PhaseSpace& space :
             {PhaseSpace::plane(), PhaseSpace::sphere(), PhaseSpace::disc()}) {
            const double rotated = potential_eval(space, z);
            const double axial = potential_eval(space, Complex(r, 0.0));
            CHECK(rotated == doctest::Approx(axial).epsilon(1e-12));
        }
    }
}

TEST_CASE("custom metric uses the supplied potential") {
    auto displaced = [](Complex z) { return std::norm(z) + 0.3 * (z + std::conj(z)).real(); };
    const PhaseSpace space = PhaseSpace::custom(displaced, std::numeric_limits<double>::infinity());
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Complex z(coord(rng), coord(rng));
        CHECK(metric_eval(space, z) == doctest::Approx(1.0).epsilon(1e-6));
    }

    auto radial_quartic = [](Complex z) {
        const double t = std::norm(z);
        return t + 0.1 * t * t;
    };
    const PhaseSpace quartic = PhaseSpace::custom(radial_quartic, std::numeric_limits<double>::infinity());
    for (int trial = 0; trial < 100; ++trial) {
        const Complex z(coord(rng), coord(rng));
        const double t = std::norm(z);
        const double expected = 1.0 + 0.4 * t;
        CHECK(metric_eval(quartic, z) == doctest::Approx(expected).epsilon(1e-6));
        CHECK(metric_eval(quartic, z) ==
              doctest::Approx(oracles::metric_richardson(radial_quartic, z, 1e-3))
                  .epsilon(1e-6));
    }
}

TEST_CASE("custom metric near a bounded-domain edge stays evaluable") {
    auto disc_like = [](Complex z) { return -std::log1p(-std::norm(z)); };
    const PhaseSpace space = PhaseSpace::custom(disc_like, 1.0);
    const Complex inner(0.99, 0.0);
    const double expected = 1.0 / std::pow(1.0 - std::norm(inner), 2.0);
    CHECK(metric_eval(space, inner) == doctest::Approx(expected).epsilon(1e-3));
    const Complex extreme(0.999999, 0.0);
    double value = 0.0;
    CHECK_NOTHROW(value = metric_eval(space, extreme));
    CHECK(value > 0.0);
}

TEST_CASE("custom metric rejects non-positive curvature") {
    auto concave = [](Complex z) {
        const double t = std::norm(z);
        return -t * t;
    };
    const PhaseSpace space = PhaseSpace::custom(concave, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(metric_eval(space, Complex(0.5, 0.0)), std::runtime_error);
}
