#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specmhd/calculus.hpp"
#include "specmhd/multiplier.hpp"
#include "specmhd/norms.hpp"
#include "test_helpers.hpp"

using namespace specmhd;
using specmhd::testing::random_spectral;
using specmhd::testing::rel_diff;

namespace {
const DomainSpec unit2d{2, 1.0, 32, 2.0 / 3.0};
}

TEST_CASE("Lambda^gamma is the identity on the unit shell") {
    SpectralField f(unit2d, 1);
    f.at(0, flat_index(unit2d, {1, 0, 0})) = Complex{0.5, 0.0};
    f.at(0, flat_index(unit2d, {-1, 0, 0})) = Complex{0.5, 0.0};
    for (double gamma : {-1.5, -0.5, 0.0, 0.5, 1.0, 2.0}) {
        const SpectralField g = apply_radial_multiplier(f, RadialMultiplier::lambda_power(gamma));
        REQUIRE(rel_diff(f, g) < 1e-15);
    }
}

TEST_CASE("Lambda^2 on cos(2 x1) matches -Laplacian") {
    SpectralField f(unit2d, 1);
    f.at(0, flat_index(unit2d, {2, 0, 0})) = Complex{0.5, 0.0};
    f.at(0, flat_index(unit2d, {-2, 0, 0})) = Complex{0.5, 0.0};
    const SpectralField g = apply_radial_multiplier(f, RadialMultiplier::lambda_power(2.0));
    REQUIRE(g.at(0, flat_index(unit2d, {2, 0, 0})).real() == Catch::Approx(2.0).margin(1e-14));
    REQUIRE(g.at(0, flat_index(unit2d, {-2, 0, 0})).real() == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("Lambda^{1/2} on sin(4 x1) doubles it") {
    SpectralField f(unit2d, 1);
    f.at(0, flat_index(unit2d, {4, 0, 0})) = Complex{0.0, -0.5};
    f.at(0, flat_index(unit2d, {-4, 0, 0})) = Complex{0.0, 0.5};
    const SpectralField g = apply_radial_multiplier(f, RadialMultiplier::lambda_power(0.5));
    SpectralField expected = f;
    expected *= 2.0;
    REQUIRE(rel_diff(g, expected) < 1e-14);
}

TEST_CASE("Lambda^gamma composed with Lambda^-gamma is the identity on mean-free fields") {
    const SpectralField f = random_spectral(unit2d, 1, 8, 5);
    for (double gamma : {0.5, 1.0, 1.7}) {
        const SpectralField g = apply_radial_multiplier(
            apply_radial_multiplier(f, RadialMultiplier::lambda_power(gamma)),
            RadialMultiplier::lambda_power(-gamma));
        REQUIRE(rel_diff(f, g) < 1e-12);
    }
}

TEST_CASE("singular symbols reject nonzero mean modes") {
    SpectralField f(unit2d, 1);
    f.at(0, 0) = Complex{1.0, 0.0};
    REQUIRE_THROWS_AS(apply_radial_multiplier(f, RadialMultiplier::inverse_laplacian()),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(apply_radial_multiplier(f, RadialMultiplier::lambda_power(-1.0)),
                      std::invalid_argument);
    // gamma = 0 is the damping convention and keeps the mean mode
    const SpectralField g = apply_radial_multiplier(f, RadialMultiplier::lambda_power(0.0));
    REQUIRE(g.at(0, 0) == Complex{1.0, 0.0});
}

TEST_CASE("power out of [-2,2] is rejected") {
    REQUIRE_THROWS_AS(RadialMultiplier::lambda_power(2.5), std::invalid_argument);
}

TEST_CASE("3D curl of (0, cos x3, 0) is (sin x3, 0, 0)") {
    const DomainSpec d{3, 1.0, 16, 2.0 / 3.0};
    SpectralField f(d, 3);
    f.at(1, flat_index(d, {0, 0, 1})) = Complex{0.5, 0.0};
    f.at(1, flat_index(d, {0, 0, -1})) = Complex{0.5, 0.0};
    const SpectralField c = differentiate(f, Diff::Curl);
    // sin(x3) spectrum: -i/2 at +e3, +i/2 at -e3
    REQUIRE(std::abs(c.at(0, flat_index(d, {0, 0, 1})) - Complex{0.0, -0.5}) < 1e-14);
    REQUIRE(std::abs(c.at(0, flat_index(d, {0, 0, -1})) - Complex{0.0, 0.5}) < 1e-14);
    for (int m = 1; m < 3; ++m)
        for (std::size_t i = 0; i < c.modes(); ++i) REQUIRE(std::abs(c.at(m, i)) < 1e-14);
}

TEST_CASE("perp of the constant field (1,0) is (0,1)") {
    SpectralField f(unit2d, 2);
    f.at(0, 0) = Complex{1.0, 0.0};
    const SpectralField p = differentiate(f, Diff::Perp);
    REQUIRE(p.at(0, 0) == Complex{0.0, 0.0});
    REQUIRE(p.at(1, 0) == Complex{1.0, 0.0});
}

TEST_CASE("perp in 3D and scalar curl misuse are rejected") {
    const DomainSpec d3{3, 1.0, 16, 2.0 / 3.0};
    REQUIRE_THROWS_AS(differentiate(SpectralField(d3, 3), Diff::Perp), std::invalid_argument);
    REQUIRE_THROWS_AS(differentiate(SpectralField(d3, 1), Diff::Curl), std::invalid_argument);
}

TEST_CASE("div grad equals -Lambda^2 on scalars") {
    const SpectralField f = random_spectral(unit2d, 1, 9, 11);
    const SpectralField lhs = differentiate(differentiate(f, Diff::Gradient), Diff::Divergence);
    SpectralField rhs = apply_radial_multiplier(f, RadialMultiplier::lambda_power(2.0));
    rhs *= -1.0;
    REQUIRE(rel_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("Leray projection annihilates gradients") {
    const SpectralField phi = random_spectral(unit2d, 1, 10, 21);
    const SpectralField grad = differentiate(phi, Diff::Gradient);
    const SpectralField p = leray_project(grad);
    REQUIRE(p.max_abs() < 1e-13 * std::max(1.0, grad.max_abs()));
}

TEST_CASE("Leray projection fixes solenoidal fields and is idempotent") {
    SpectralField f(unit2d, 2);
    // (sin x2, 0) is already solenoidal
    f.at(0, flat_index(unit2d, {0, 1, 0})) = Complex{0.0, -0.5};
    f.at(0, flat_index(unit2d, {0, -1, 0})) = Complex{0.0, 0.5};
    REQUIRE(rel_diff(leray_project(f), f) < 1e-15);

    const SpectralField g = random_spectral(unit2d, 2, 10, 31);
    const SpectralField pg = leray_project(g);
    REQUIRE(rel_diff(leray_project(pg), pg) < 1e-14);
    REQUIRE(divergence_max(pg) < 1e-13 * std::max(1.0, pg.max_abs()));
}

TEST_CASE("Leray projection rejects scalar input") {
    REQUIRE_THROWS_AS(leray_project(SpectralField(unit2d, 1)), std::invalid_argument);
}
