// Norms used by every estimate in the project.
//
//   L2:   ( (2 pi L)^d  sum_xi |fhat|^2 )^{1/2}            (Parseval form)
//   H^s:  ( (2 pi L)^d  sum_xi (1+|xi|^2)^s |fhat|^2 )^{1/2}
//   Linf: max over grid points of the pointwise Euclidean magnitude
//   spectrum-L1: integral of the continuum spectral density represented by
//     the coefficients.  Data assembly carries the lattice cell measure
//     (1/L)^d, so this Riemann sum is the plain sum of coefficient
//     magnitudes; it is also the exact majorant in sup|f| <= sum|fhat|.

#ifndef SPECMHD_NORMS_HPP
#define SPECMHD_NORMS_HPP

#include <cmath>
#include <stdexcept>

#include "specmhd/fft.hpp"
#include "specmhd/field.hpp"

namespace specmhd {

struct NormKind {
    enum class Tag { Hs, L2, Linf, SpectrumL1 };
    Tag tag = Tag::L2;
    double s = 0.0;

    static NormKind l2() { return {Tag::L2, 0.0}; }
    static NormKind hs(double s) {
        if (s < 0.0) throw std::invalid_argument("NormKind: H^s needs s >= 0");
        return {Tag::Hs, s};
    }
    static NormKind h3() { return {Tag::Hs, 3.0}; }
    static NormKind linf() { return {Tag::Linf, 0.0}; }
    static NormKind spectrum_l1() { return {Tag::SpectrumL1, 0.0}; }
};

inline double l2_norm(const SpectralField& f) {
    double acc = 0.0;
    for (const auto& c : f.raw()) acc += std::norm(c);
    return std::sqrt(f.domain().volume() * acc);
}

inline double hs_norm(const SpectralField& f, double s) {
    if (s < 0.0) throw std::invalid_argument("hs_norm: s must be >= 0");
    const DomainSpec& d = f.domain();
    double acc = 0.0;
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        const double w = std::pow(1.0 + xi_norm_sq(d, k), s);
        for (int m = 0; m < f.components(); ++m) acc += w * std::norm(f.at(m, flat));
    });
    return std::sqrt(d.volume() * acc);
}

inline double h3_norm(const SpectralField& f) { return hs_norm(f, 3.0); }

inline double linf_norm(const SpectralField& f) {
    const PhysicalField p = inverse_transform(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.points(); ++i) {
        double mag2 = 0.0;
        for (int m = 0; m < p.components(); ++m) mag2 += p.at(m, i) * p.at(m, i);
        worst = std::max(worst, mag2);
    }
    return std::sqrt(worst);
}

inline double spectrum_l1_norm(const SpectralField& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.modes(); ++i) {
        double mag2 = 0.0;
        for (int m = 0; m < f.components(); ++m) mag2 += std::norm(f.at(m, i));
        acc += std::sqrt(mag2);
    }
    return acc;
}

inline double norm(const SpectralField& f, const NormKind& kind) {
    switch (kind.tag) {
        case NormKind::Tag::L2: return l2_norm(f);
        case NormKind::Tag::Hs: return hs_norm(f, kind.s);
        case NormKind::Tag::Linf: return linf_norm(f);
        case NormKind::Tag::SpectrumL1: return spectrum_l1_norm(f);
    }
    throw std::logic_error("norm: unknown kind");
}

// Collocation L2 norm, for Parseval cross-checks against l2_norm.
inline double physical_l2_norm(const PhysicalField& f) {
    double acc = 0.0;
    for (const double v : f.raw()) acc += v * v;
    return std::sqrt(acc * std::pow(f.domain().dx(), f.domain().dim));
}

// L2 pairing <f, g> = (2 pi L)^d sum Re(fhat conj(ghat)).
inline double l2_inner(const SpectralField& f, const SpectralField& g) {
    f.check_compatible(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.raw().size(); ++i)
        acc += f.raw()[i].real() * g.raw()[i].real() + f.raw()[i].imag() * g.raw()[i].imag();
    return f.domain().volume() * acc;
}

// ||Lambda^{gamma/2} f||_L2^2 = (2 pi L)^d sum |xi|^gamma |fhat|^2, with the
// gamma = 0 damping convention (weight 1 on every mode).
inline double dissipation_quadratic(const SpectralField& f, double gamma) {
    const DomainSpec& d = f.domain();
    double acc = 0.0;
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        const double x2 = xi_norm_sq(d, k);
        const double w = gamma == 0.0 ? 1.0 : std::pow(x2, 0.5 * gamma);
        for (int m = 0; m < f.components(); ++m) acc += w * std::norm(f.at(m, flat));
    });
    return d.volume() * acc;
}

}  // namespace specmhd

#endif
