// Spectral differential operators and the Leray projection.
//
// 2D curl is fixed as curl F = d1 F2 - d2 F1 throughout; perp of (F1,F2) is
// (-F2, F1).

#ifndef SPECMHD_CALCULUS_HPP
#define SPECMHD_CALCULUS_HPP

#include <array>
#include <stdexcept>

#include "specmhd/field.hpp"

namespace specmhd {

enum class Diff { Gradient, Divergence, Curl, Perp };

// d/dx_axis, multiplication by i xi_axis.
inline SpectralField partial_derivative(const SpectralField& f, int axis) {
    const DomainSpec& d = f.domain();
    if (axis < 0 || axis >= d.dim) throw std::invalid_argument("partial_derivative: bad axis");
    SpectralField out(d, f.components());
    const double inv_l = 1.0 / d.scale;
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        const Complex ixi{0.0, k[axis] * inv_l};
        for (int c = 0; c < f.components(); ++c) out.at(c, flat) = ixi * f.at(c, flat);
    });
    return out;
}

// D^l for a multi-index l, i.e. multiplication by (i xi)^l.
inline SpectralField derivative_multi(const SpectralField& f, const std::array<int, 3>& order) {
    const DomainSpec& d = f.domain();
    int total = 0;
    for (int a = 0; a < d.dim; ++a) {
        if (order[a] < 0) throw std::invalid_argument("derivative_multi: negative order");
        total += order[a];
    }
    SpectralField out(d, f.components());
    const double inv_l = 1.0 / d.scale;
    // i^total is a quarter turn; applied exactly after the real monomial
    const int quarter = total % 4;
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        double mono = 1.0;
        for (int a = 0; a < d.dim; ++a)
            for (int p = 0; p < order[a]; ++p) mono *= k[a] * inv_l;
        for (int c = 0; c < f.components(); ++c) {
            Complex v = mono * f.at(c, flat);
            switch (quarter) {
                case 1: v = Complex{-v.imag(), v.real()}; break;
                case 2: v = -v; break;
                case 3: v = Complex{v.imag(), -v.real()}; break;
                default: break;
            }
            out.at(c, flat) = v;
        }
    });
    return out;
}

inline SpectralField differentiate(const SpectralField& f, Diff kind) {
    const DomainSpec& d = f.domain();
    const double inv_l = 1.0 / d.scale;
    switch (kind) {
        case Diff::Gradient: {
            if (f.components() != 1)
                throw std::invalid_argument("differentiate: gradient expects a scalar field");
            SpectralField out(d, d.dim);
            for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
                const Complex v = f.at(0, flat);
                for (int a = 0; a < d.dim; ++a)
                    out.at(a, flat) = Complex{0.0, k[a] * inv_l} * v;
            });
            return out;
        }
        case Diff::Divergence: {
            if (f.components() != d.dim)
                throw std::invalid_argument("differentiate: divergence expects a full vector field");
            SpectralField out(d, 1);
            for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
                Complex acc{0.0, 0.0};
                for (int a = 0; a < d.dim; ++a)
                    acc += Complex{0.0, k[a] * inv_l} * f.at(a, flat);
                out.at(0, flat) = acc;
            });
            return out;
        }
        case Diff::Curl: {
            if (f.components() != d.dim)
                throw std::invalid_argument("differentiate: curl expects a full vector field");
            if (d.dim == 2) {
                SpectralField out(d, 1);
                for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
                    out.at(0, flat) = Complex{0.0, k[0] * inv_l} * f.at(1, flat) -
                                      Complex{0.0, k[1] * inv_l} * f.at(0, flat);
                });
                return out;
            }
            SpectralField out(d, 3);
            for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
                const Complex i0{0.0, k[0] * inv_l}, i1{0.0, k[1] * inv_l}, i2{0.0, k[2] * inv_l};
                out.at(0, flat) = i1 * f.at(2, flat) - i2 * f.at(1, flat);
                out.at(1, flat) = i2 * f.at(0, flat) - i0 * f.at(2, flat);
                out.at(2, flat) = i0 * f.at(1, flat) - i1 * f.at(0, flat);
            });
            return out;
        }
        case Diff::Perp: {
            if (d.dim != 2) throw std::invalid_argument("differentiate: perp is 2D only");
            if (f.components() != 2)
                throw std::invalid_argument("differentiate: perp expects a 2-component field");
            SpectralField out(d, 2);
            for (std::size_t i = 0; i < f.modes(); ++i) {
                out.at(0, i) = -f.at(1, i);
                out.at(1, i) = f.at(0, i);
            }
            return out;
        }
    }
    throw std::logic_error("differentiate: unknown kind");
}

// P = I - xi xi^T / |xi|^2; annihilates gradients, mean mode set to zero.
inline SpectralField leray_project(const SpectralField& f) {
    const DomainSpec& d = f.domain();
    if (f.components() != d.dim)
        throw std::invalid_argument("leray_project: expects a full vector field");
    SpectralField out(d, d.dim);
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < d.dim; ++a) k2 += static_cast<double>(k[a]) * k[a];
        if (k2 == 0.0) {
            for (int a = 0; a < d.dim; ++a) out.at(a, flat) = Complex{0.0, 0.0};
            return;
        }
        Complex dot{0.0, 0.0};
        for (int a = 0; a < d.dim; ++a) dot += static_cast<double>(k[a]) * f.at(a, flat);
        dot /= k2;
        for (int a = 0; a < d.dim; ++a)
            out.at(a, flat) = f.at(a, flat) - static_cast<double>(k[a]) * dot;
    });
    return out;
}

}  // namespace specmhd

#endif
