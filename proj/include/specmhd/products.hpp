// Dealiased quadratic products via the 2/3 rule: inputs are truncated to the
// retained band, multiplied pointwise in physical space, and the result is
// truncated again.  Products of fields band-limited to the retained band are
// then exact convolutions on that band.

#ifndef SPECMHD_PRODUCTS_HPP
#define SPECMHD_PRODUCTS_HPP

#include <stdexcept>
#include <vector>

#include "specmhd/calculus.hpp"
#include "specmhd/fft.hpp"
#include "specmhd/field.hpp"

namespace specmhd {

enum class Contraction {
    Pointwise,  // scalar*scalar -> scalar, or scalar*vector -> vector
    Dot,        // vector.vector -> scalar
    Advection,  // (u . grad) w, u a velocity field
    Cross       // u x w, 3D only
};

inline void truncate_dealias(SpectralField& f) {
    const DomainSpec& d = f.domain();
    const int cut = d.dealias_cut();
    for (int m = 0; m < f.components(); ++m) {
        auto c = f.component(m);
        for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
            for (int a = 0; a < d.dim; ++a)
                if (k[a] > cut || k[a] < -cut) {
                    c[flat] = Complex{0.0, 0.0};
                    return;
                }
        });
    }
}

inline SpectralField truncated(SpectralField f) {
    truncate_dealias(f);
    return f;
}

namespace detail {

// Constant factors keep the product diagonal in spectral space; no transforms
// and no aliasing are involved.
inline SpectralField constant_times(const Complex& value, const SpectralField& g) {
    SpectralField out = truncated(g);
    for (auto& c : out.raw()) c *= value;
    return out;
}

inline int product_components(const SpectralField& f, const SpectralField& g, Contraction c) {
    switch (c) {
        case Contraction::Pointwise:
            if (f.components() == 1) return g.components();
            if (g.components() == 1) return f.components();
            throw std::invalid_argument("multiply_dealiased: pointwise needs a scalar factor");
        case Contraction::Dot:
            if (f.components() != g.components() || f.components() < 2)
                throw std::invalid_argument("multiply_dealiased: dot needs matching vector fields");
            return 1;
        case Contraction::Advection:
            if (f.components() != f.domain().dim)
                throw std::invalid_argument("multiply_dealiased: advecting field must be a velocity");
            return g.components();
        case Contraction::Cross:
            if (f.domain().dim != 3 || f.components() != 3 || g.components() != 3)
                throw std::invalid_argument("multiply_dealiased: cross needs 3D vector fields");
            return 3;
    }
    throw std::logic_error("multiply_dealiased: unknown contraction");
}

}  // namespace detail

inline SpectralField multiply_dealiased(const SpectralField& f, const SpectralField& g,
                                        Contraction contraction) {
    if (!(f.domain() == g.domain()))
        throw std::invalid_argument("multiply_dealiased: domain mismatch");
    const DomainSpec& d = f.domain();
    const int out_components = detail::product_components(f, g, contraction);

    // Scalar factors with only a mean mode act diagonally.
    if (contraction == Contraction::Pointwise) {
        if (f.components() == 1 && f.is_constant()) return detail::constant_times(f.at(0, 0), g);
        if (g.components() == 1 && g.is_constant()) return detail::constant_times(g.at(0, 0), f);
    }
    if (contraction == Contraction::Advection && f.is_constant()) {
        // u . grad w with constant u: per-mode multiplier i (u . xi)
        SpectralField out = truncated(g);
        const double inv_l = 1.0 / d.scale;
        for (int m = 0; m < g.components(); ++m) {
            auto c = out.component(m);
            for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
                Complex dot{0.0, 0.0};
                for (int a = 0; a < d.dim; ++a) dot += f.at(a, 0) * (k[a] * inv_l);
                c[flat] *= Complex{0.0, 1.0} * dot;
            });
        }
        return out;
    }

    const SpectralField ft = truncated(f);
    const SpectralField gt = truncated(g);

    PhysicalField result(d, out_components);
    const std::size_t npts = d.grid_size();

    switch (contraction) {
        case Contraction::Pointwise: {
            const PhysicalField fp = inverse_transform(ft);
            const PhysicalField gp = inverse_transform(gt);
            const PhysicalField& scalar = fp.components() == 1 ? fp : gp;
            const PhysicalField& other = fp.components() == 1 ? gp : fp;
            for (int m = 0; m < out_components; ++m)
                for (std::size_t p = 0; p < npts; ++p)
                    result.at(m, p) = scalar.at(0, p) * other.at(m, p);
            break;
        }
        case Contraction::Dot: {
            const PhysicalField fp = inverse_transform(ft);
            const PhysicalField gp = inverse_transform(gt);
            for (std::size_t p = 0; p < npts; ++p) {
                double acc = 0.0;
                for (int m = 0; m < f.components(); ++m) acc += fp.at(m, p) * gp.at(m, p);
                result.at(0, p) = acc;
            }
            break;
        }
        case Contraction::Advection: {
            const PhysicalField up = inverse_transform(ft);
            std::vector<PhysicalField> grads;
            grads.reserve(d.dim);
            for (int a = 0; a < d.dim; ++a)
                grads.push_back(inverse_transform(partial_derivative(gt, a)));
            for (int m = 0; m < out_components; ++m)
                for (std::size_t p = 0; p < npts; ++p) {
                    double acc = 0.0;
                    for (int a = 0; a < d.dim; ++a) acc += up.at(a, p) * grads[a].at(m, p);
                    result.at(m, p) = acc;
                }
            break;
        }
        case Contraction::Cross: {
            const PhysicalField fp = inverse_transform(ft);
            const PhysicalField gp = inverse_transform(gt);
            for (std::size_t p = 0; p < npts; ++p) {
                const double a0 = fp.at(0, p), a1 = fp.at(1, p), a2 = fp.at(2, p);
                const double b0 = gp.at(0, p), b1 = gp.at(1, p), b2 = gp.at(2, p);
                result.at(0, p) = a1 * b2 - a2 * b1;
                result.at(1, p) = a2 * b0 - a0 * b2;
                result.at(2, p) = a0 * b1 - a1 * b0;
            }
            break;
        }
    }

    SpectralField out = forward_transform(result);
    truncate_dealias(out);
    return out;
}

}  // namespace specmhd

#endif
