// Radial Fourier multipliers m(|xi|), including the fractional powers
// Lambda^gamma with symbol |xi|^gamma.
//
// Convention (fixed project-wide): gamma = 0 is the identity (damping term),
// gamma = 2 is -Laplacian.  Singular symbols (negative powers, 1/Delta) map
// the mean mode to zero and require mean-free input.

#ifndef SPECMHD_MULTIPLIER_HPP
#define SPECMHD_MULTIPLIER_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "specmhd/field.hpp"

namespace specmhd {

struct RadialMultiplier {
    enum class Kind { Power, InverseLaplacian, OnePlusInverseLaplacian, Custom };

    Kind kind = Kind::Power;
    double gamma = 0.0;
    std::function<double(double)> custom;

    static RadialMultiplier lambda_power(double gamma) {
        if (gamma < -2.0 || gamma > 2.0)
            throw std::invalid_argument("RadialMultiplier: power must lie in [-2,2], got " +
                                        std::to_string(gamma));
        return {Kind::Power, gamma, {}};
    }
    static RadialMultiplier inverse_laplacian() { return {Kind::InverseLaplacian, 0.0, {}}; }
    static RadialMultiplier one_plus_inverse_laplacian() {
        return {Kind::OnePlusInverseLaplacian, 0.0, {}};
    }
    static RadialMultiplier radial(std::function<double(double)> fn) {
        return {Kind::Custom, 0.0, std::move(fn)};
    }

    bool singular_at_zero() const {
        switch (kind) {
            case Kind::Power: return gamma < 0.0;
            case Kind::InverseLaplacian:
            case Kind::OnePlusInverseLaplacian: return true;
            case Kind::Custom: return false;
        }
        return false;
    }

    // Value at radius r > 0 (r = 0 handled by the caller).
    double eval(double r) const {
        switch (kind) {
            case Kind::Power:
                // gamma = 0 means the damping term u: identically 1, mean mode included
                return gamma == 0.0 ? 1.0 : std::pow(r, gamma);
            case Kind::InverseLaplacian: return -1.0 / (r * r);
            case Kind::OnePlusInverseLaplacian: return 1.0 - 1.0 / (r * r);
            case Kind::Custom: return custom(r);
        }
        return 0.0;
    }
};

inline SpectralField apply_radial_multiplier(const SpectralField& f, const RadialMultiplier& m) {
    const DomainSpec& d = f.domain();
    if (m.singular_at_zero()) {
        double mean = 0.0;
        for (int c = 0; c < f.components(); ++c) mean = std::max(mean, std::abs(f.at(c, 0)));
        if (mean > 1e-13 * std::max(f.max_abs(), 1e-300))
            throw std::invalid_argument(
                "apply_radial_multiplier: singular symbol on a field with nonzero mean mode (|mean| = " +
                std::to_string(mean) + ")");
    }
    SpectralField out(d, f.components());
    const double inv_l = 1.0 / d.scale;
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < d.dim; ++a) k2 += static_cast<double>(k[a]) * k[a];
        double value;
        if (k2 == 0.0) {
            const bool identity_at_zero =
                m.kind == RadialMultiplier::Kind::Power && m.gamma == 0.0;
            value = identity_at_zero ? 1.0 : (m.singular_at_zero() ? 0.0 : m.eval(0.0));
            if (m.kind == RadialMultiplier::Kind::Power && m.gamma > 0.0) value = 0.0;
        } else {
            value = m.eval(std::sqrt(k2) * inv_l);
        }
        for (int c = 0; c < f.components(); ++c) out.at(c, flat) = value * f.at(c, flat);
    });
    return out;
}

}  // namespace specmhd

#endif
