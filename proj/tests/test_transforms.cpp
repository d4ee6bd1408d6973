#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specmhd/fft.hpp"
#include "specmhd/norms.hpp"
#include "test_helpers.hpp"

using namespace specmhd;
using specmhd::testing::random_spectral;

namespace {

DomainSpec small2d(int n = 32, double l = 1.0) { return DomainSpec{2, l, n, 2.0 / 3.0}; }

PhysicalField sampled(const DomainSpec& d, auto&& fn) {
    PhysicalField f(d, 1);
    const int n = d.points_per_axis;
    const double h = d.dx();
    if (d.dim == 2) {
        std::size_t p = 0;
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1, ++p) f.at(0, p) = fn(i0 * h, i1 * h, 0.0);
    } else {
        std::size_t p = 0;
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2, ++p) f.at(0, p) = fn(i0 * h, i1 * h, i2 * h);
    }
    return f;
}

}  // namespace

TEST_CASE("forward transform of cos(x1/L) has exactly the +-e1 pair") {
    const DomainSpec d = small2d(32, 5.0);
    const auto f = sampled(d, [&](double x, double, double) { return std::cos(x / d.scale); });
    const SpectralField hat = forward_transform(f);

    const std::size_t plus = flat_index(d, {1, 0, 0});
    const std::size_t minus = flat_index(d, {-1, 0, 0});
    REQUIRE(hat.at(0, plus).real() == Catch::Approx(0.5).margin(1e-14));
    REQUIRE(std::abs(hat.at(0, plus).imag()) < 1e-14);
    REQUIRE(hat.at(0, minus).real() == Catch::Approx(0.5).margin(1e-14));

    double off = 0.0;
    for (std::size_t i = 0; i < hat.modes(); ++i)
        if (i != plus && i != minus) off = std::max(off, std::abs(hat.at(0, i)));
    REQUIRE(off < 1e-14);
}

TEST_CASE("constant field transforms to the mean mode only") {
    const DomainSpec d = small2d();
    auto f = sampled(d, [](double, double, double) { return 1.0; });
    const SpectralField hat = forward_transform(f);
    REQUIRE(hat.at(0, 0).real() == Catch::Approx(1.0).margin(1e-14));
    double off = 0.0;
    for (std::size_t i = 1; i < hat.modes(); ++i) off = std::max(off, std::abs(hat.at(0, i)));
    REQUIRE(off < 1e-14);
}

TEST_CASE("unit Hermitian pair at +-e1 inverts to cosine samples") {
    const DomainSpec d = small2d(32, 1.0);
    SpectralField hat(d, 1);
    hat.at(0, flat_index(d, {1, 0, 0})) = Complex{0.5, 0.0};
    hat.at(0, flat_index(d, {-1, 0, 0})) = Complex{0.5, 0.0};
    const PhysicalField f = inverse_transform(hat);
    const auto expected = sampled(d, [](double x, double, double) { return std::cos(x); });
    for (std::size_t p = 0; p < f.points(); ++p)
        REQUIRE(f.at(0, p) == Catch::Approx(expected.at(0, p)).margin(1e-13));
}

TEST_CASE("zero spectrum inverts to zero samples") {
    const SpectralField hat(small2d(), 2);
    const PhysicalField f = inverse_transform(hat);
    for (double v : f.raw()) REQUIRE(v == 0.0);
}

TEST_CASE("inverse transform rejects non-Hermitian input") {
    const DomainSpec d = small2d();
    SpectralField hat(d, 1);
    hat.at(0, flat_index(d, {3, 1, 0})) = Complex{1.0, 0.5};  // partner left at zero
    REQUIRE_THROWS_AS(inverse_transform(hat), std::invalid_argument);
}

TEST_CASE("transform round-trip on 100 random fields stays under 1e-12") {
    const DomainSpec d2 = small2d();
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const SpectralField f = random_spectral(d2, 1, 10, 1000 + trial);
        const PhysicalField p = inverse_transform(f);
        const SpectralField back = forward_transform(p);
        REQUIRE(specmhd::testing::rel_diff(f, back) < 1e-12);
    }
    const DomainSpec d3{3, 1.0, 16, 2.0 / 3.0};
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        const SpectralField f = random_spectral(d3, 3, 4, 2000 + trial);
        REQUIRE(specmhd::testing::rel_diff(f, forward_transform(inverse_transform(f))) < 1e-12);
    }
}

TEST_CASE("physical round-trip reproduces samples to 1e-12 relative") {
    const DomainSpec d = small2d(32, 2.0);
    const SpectralField f = random_spectral(d, 1, 9, 7);
    const PhysicalField p = inverse_transform(f);
    const PhysicalField p2 = inverse_transform(forward_transform(p));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < p.points(); ++i) {
        num += (p.at(0, i) - p2.at(0, i)) * (p.at(0, i) - p2.at(0, i));
        den += p.at(0, i) * p.at(0, i);
    }
    REQUIRE(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("Parseval: spectral and collocation L2 norms agree") {
    const DomainSpec d = small2d(48, 3.0);
    const SpectralField f = random_spectral(d, 2, 12, 99);
    const double spectral = l2_norm(f);
    const double physical = physical_l2_norm(inverse_transform(f));
    REQUIRE(spectral == Catch::Approx(physical).epsilon(1e-12));
}

TEST_CASE("physical_from_samples rejects size mismatch") {
    const DomainSpec d = small2d();
    std::vector<double> too_short(d.grid_size() - 1, 0.0);
    REQUIRE_THROWS_AS(physical_from_samples(d, 1, too_short), std::invalid_argument);
}
