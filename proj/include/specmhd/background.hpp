// Closed-form background pair (U, B) = (e^{-mu t} U0, e^{-nu t} U0) and the
// induced forcings and sources:
//
//   f = mu (Lambda^alpha - 1) U,   h = nu (Lambda^beta - 1) B
//   g = -U.grad U + B.grad B
//   2D: g = grad ptilde + G,
//       ptilde = (-|U|^2 - (invDelta curl U)^2 + |B|^2 + (invDelta curl B)^2)/2
//       G = -Uperp (1 + invDelta)(curl U) + Bperp (1 + invDelta)(curl B)
//   3D: g = grad((|B|^2 - |U|^2)/2) + (Lambda B - B) x B - (Lambda U - U) x U,
//       valid because U0 is Beltrami.
//
// Everything is computed with the same dealiased products as the solver so
// the identity residuals are meaningful at the discrete level.

#ifndef SPECMHD_BACKGROUND_HPP
#define SPECMHD_BACKGROUND_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "specmhd/multiplier.hpp"
#include "specmhd/norms.hpp"
#include "specmhd/products.hpp"

namespace specmhd {

struct BackgroundState {
    SpectralField U0;
    double mu = 1.0;
    double nu = 1.0;
    double alpha = 1.0;
    double beta = 1.0;

    void validate() const {
        if (mu <= 0.0 || nu <= 0.0)
            throw std::invalid_argument("BackgroundState: mu and nu must be positive");
        if (alpha < 0.0 || alpha > 2.0 || beta < 0.0 || beta > 2.0)
            throw std::invalid_argument("BackgroundState: alpha and beta must lie in [0,2]");
    }
};

struct IdentityResidual {
    double absolute = 0.0;
    double scale = 0.0;
    double relative() const { return scale > 0.0 ? absolute / scale : absolute; }
};

inline std::pair<SpectralField, SpectralField> background_at(const BackgroundState& bg, double t) {
    if (t < 0.0) throw std::invalid_argument("background_at: t must be nonnegative");
    SpectralField u = bg.U0;
    u *= std::exp(-bg.mu * t);
    SpectralField b = bg.U0;
    b *= std::exp(-bg.nu * t);
    return {std::move(u), std::move(b)};
}

// Symbol |xi|^gamma - 1; with the project convention Lambda^0 = identity the
// gamma = 0 forcing vanishes identically.
inline RadialMultiplier lambda_minus_one(double gamma) {
    if (gamma == 0.0) return RadialMultiplier::radial([](double) { return 0.0; });
    return RadialMultiplier::radial([gamma](double r) { return std::pow(r, gamma) - 1.0; });
}

inline std::pair<SpectralField, SpectralField> forcing_terms(const BackgroundState& bg, double t) {
    if (t < 0.0) throw std::invalid_argument("forcing_terms: t must be nonnegative");
    SpectralField f = apply_radial_multiplier(bg.U0, lambda_minus_one(bg.alpha));
    f *= bg.mu * std::exp(-bg.mu * t);
    SpectralField h = apply_radial_multiplier(bg.U0, lambda_minus_one(bg.beta));
    h *= bg.nu * std::exp(-bg.nu * t);
    return {std::move(f), std::move(h)};
}

// || -U.grad B + B.grad U ||_L2; zero in exact arithmetic because U and B are
// parallel for all time.
inline IdentityResidual interaction_residual(const BackgroundState& bg, double t) {
    const auto [u, b] = background_at(bg, t);
    SpectralField r = multiply_dealiased(b, u, Contraction::Advection);
    r -= multiply_dealiased(u, b, Contraction::Advection);
    return {l2_norm(r), h3_norm(u) * h3_norm(b)};
}

inline SpectralField source_g(const BackgroundState& bg, double t) {
    const auto [u, b] = background_at(bg, t);
    SpectralField g = multiply_dealiased(b, b, Contraction::Advection);
    g -= multiply_dealiased(u, u, Contraction::Advection);
    return g;
}

struct GDecomposition2D {
    SpectralField p_tilde;  // scalar
    SpectralField G;        // vector
};

inline GDecomposition2D decompose_g_2d(const BackgroundState& bg, double t) {
    if (bg.U0.domain().dim != 2) throw std::invalid_argument("decompose_g_2d: 2D only");
    const auto [u, b] = background_at(bg, t);

    const SpectralField curl_u = differentiate(u, Diff::Curl);
    const SpectralField curl_b = differentiate(b, Diff::Curl);
    const SpectralField psi_u =
        apply_radial_multiplier(curl_u, RadialMultiplier::inverse_laplacian());
    const SpectralField psi_b =
        apply_radial_multiplier(curl_b, RadialMultiplier::inverse_laplacian());

    SpectralField p = multiply_dealiased(b, b, Contraction::Dot);
    p += multiply_dealiased(psi_b, psi_b, Contraction::Pointwise);
    p -= multiply_dealiased(u, u, Contraction::Dot);
    p -= multiply_dealiased(psi_u, psi_u, Contraction::Pointwise);
    p *= 0.5;

    const RadialMultiplier one_plus = RadialMultiplier::one_plus_inverse_laplacian();
    SpectralField g_part = multiply_dealiased(apply_radial_multiplier(curl_b, one_plus),
                                              differentiate(b, Diff::Perp), Contraction::Pointwise);
    g_part -= multiply_dealiased(apply_radial_multiplier(curl_u, one_plus),
                                 differentiate(u, Diff::Perp), Contraction::Pointwise);
    return {std::move(p), std::move(g_part)};
}

// Residual of g = grad ptilde + G at time t.
inline IdentityResidual g_decomposition_residual_2d(const BackgroundState& bg, double t) {
    const SpectralField g = source_g(bg, t);
    const GDecomposition2D parts = decompose_g_2d(bg, t);
    SpectralField resid = g - differentiate(parts.p_tilde, Diff::Gradient) - parts.G;
    const auto [u, b] = background_at(bg, t);
    const double s = h3_norm(u) + h3_norm(b);
    return {l2_norm(resid), s * s};
}

inline double beltrami_residual(const SpectralField& U0) {
    const SpectralField curl = differentiate(U0, Diff::Curl);
    const SpectralField lam = apply_radial_multiplier(U0, RadialMultiplier::lambda_power(1.0));
    return l2_norm(curl - lam);
}

inline SpectralField source_G_3d(const BackgroundState& bg, double t) {
    if (bg.U0.domain().dim != 3) throw std::invalid_argument("source_G_3d: 3D only");
    const double beltrami = beltrami_residual(bg.U0);
    const double scale = l2_norm(bg.U0);
    if (beltrami > 1e-8 * std::max(scale, 1e-300))
        throw std::invalid_argument("source_G_3d: U0 is not Beltrami (residual " +
                                    std::to_string(beltrami) + " vs |U0| = " +
                                    std::to_string(scale) + "); the identity needs curl U0 = Lambda U0");
    const auto [u, b] = background_at(bg, t);
    const RadialMultiplier lam_m1 = lambda_minus_one(1.0);
    SpectralField g_part = multiply_dealiased(apply_radial_multiplier(b, lam_m1), b,
                                              Contraction::Cross);
    g_part -= multiply_dealiased(apply_radial_multiplier(u, lam_m1), u, Contraction::Cross);
    return g_part;
}

// Residual of g = grad((|B|^2 - |U|^2)/2) + G at time t.
inline IdentityResidual g_decomposition_residual_3d(const BackgroundState& bg, double t) {
    const SpectralField g = source_g(bg, t);
    const SpectralField G = source_G_3d(bg, t);
    const auto [u, b] = background_at(bg, t);
    SpectralField p = multiply_dealiased(b, b, Contraction::Dot);
    p -= multiply_dealiased(u, u, Contraction::Dot);
    p *= 0.5;
    SpectralField resid = g - differentiate(p, Diff::Gradient) - G;
    const double s = h3_norm(u) + h3_norm(b);
    return {l2_norm(resid), s * s};
}

}  // namespace specmhd

#endif
