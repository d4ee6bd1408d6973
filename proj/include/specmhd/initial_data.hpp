// Construction of the annulus-supported large data.
//
// 2D: U0 = (d2 a0, -d1 a0) with a0hat = amplitude * profile(|xi|) on the
//     shell 1-eps <= |xi| <= 1+eps.
// 3D: V0 = amplitude * (0, d3 a0, -d2 a0), U0 = V0 + Lambda^{-1} curl V0,
//     which is divergence-free and Beltrami (curl U0 = Lambda U0).
//
// Coefficients carry the lattice cell measure (1/L)^dim so that the stored
// spectrum represents the continuum spectral density: torus norms then obey
// the whole-space scaling laws (L2 ~ eps^{-1/2} sqrt(loglog 1/eps),
// spectrum-L1 ~ sqrt(loglog 1/eps), Linf ~ sqrt(loglog 1/eps)) independently
// of the box size used to resolve the annulus.

#ifndef SPECMHD_INITIAL_DATA_HPP
#define SPECMHD_INITIAL_DATA_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "specmhd/calculus.hpp"
#include "specmhd/multiplier.hpp"
#include "specmhd/norms.hpp"

namespace specmhd {

enum class AmplitudeLaw { Paper, Explicit };

// Optional random solenoidal band-limited perturbation for (v0, c0).
struct PerturbationSpec {
    double h3_amplitude = 0.0;  // target H^3 norm; 0 disables
    int band = 4;               // |k_i| <= band
    std::uint64_t seed = 1;
};

struct DataSpec {
    double epsilon = 0.1;
    AmplitudeLaw amplitude_law = AmplitudeLaw::Paper;
    double amplitude_A = 1.0;  // used when amplitude_law == Explicit
    double bump_sharpness = 1.0;
    PerturbationSpec v0_perturbation{};
    PerturbationSpec c0_perturbation{};

    void validate() const {
        if (epsilon <= 0.0 || epsilon >= 0.5)
            throw std::invalid_argument("DataSpec: epsilon must lie in (0, 1/2), got " +
                                        std::to_string(epsilon));
        // paper amplitude needs loglog(1/eps) > 0, i.e. eps < 1/e
        if (amplitude_law == AmplitudeLaw::Paper && epsilon >= std::exp(-1.0))
            throw std::invalid_argument(
                "DataSpec: paper amplitude law needs epsilon < 1/e, got " + std::to_string(epsilon));
        if (amplitude_law == AmplitudeLaw::Explicit && amplitude_A <= 0.0)
            throw std::invalid_argument("DataSpec: explicit amplitude must be positive");
        if (bump_sharpness <= 0.0)
            throw std::invalid_argument("DataSpec: bump_sharpness must be positive");
    }
};

inline double loglog_inv(double epsilon) { return std::log(std::log(1.0 / epsilon)); }

inline double amplitude(const DataSpec& spec) {
    spec.validate();
    if (spec.amplitude_law == AmplitudeLaw::Explicit) return spec.amplitude_A;
    return std::sqrt(loglog_inv(spec.epsilon)) / spec.epsilon;
}

// C^inf bump: 1 on [1-eps/2, 1+eps/2], supported in [1-eps, 1+eps], with
// exp(sharpness * (1 - 1/(1-s^2))) across each transition half-band.
struct AnnulusProfile {
    double epsilon = 0.1;
    double sharpness = 1.0;

    double operator()(double r) const {
        const double inner = 1.0 - epsilon, plateau_lo = 1.0 - 0.5 * epsilon;
        const double plateau_hi = 1.0 + 0.5 * epsilon, outer = 1.0 + epsilon;
        if (r <= inner || r >= outer) return 0.0;
        if (r >= plateau_lo && r <= plateau_hi) return 1.0;
        const double s = r > plateau_hi ? (r - plateau_hi) / (0.5 * epsilon)
                                        : (plateau_lo - r) / (0.5 * epsilon);
        if (s >= 1.0) return 0.0;
        return std::exp(sharpness * (1.0 - 1.0 / (1.0 - s * s)));
    }
};

inline AnnulusProfile radial_bump(double epsilon, double sharpness) {
    if (epsilon <= 0.0 || epsilon >= 0.5)
        throw std::invalid_argument("radial_bump: epsilon must lie in (0, 1/2), got " +
                                    std::to_string(epsilon));
    if (sharpness <= 0.0) throw std::invalid_argument("radial_bump: sharpness must be positive");
    return AnnulusProfile{epsilon, sharpness};
}

struct InitialData {
    SpectralField U0;      // background profile
    SpectralField u0;      // U0 + v0
    SpectralField b0;      // U0 + c0
    SpectralField v0;      // velocity perturbation
    SpectralField c0;      // magnetic perturbation
    SpectralField a0;      // scalar stream spectrum (2D) / generator (3D)
    std::size_t annulus_modes = 0;
};

struct SupportViolation {
    std::array<int, 3> k;
    double xi_norm;
    double magnitude;
};

struct SupportReport {
    std::vector<SupportViolation> violations;  // capped listing
    std::size_t total = 0;
    bool pass() const { return total == 0; }
};

inline SupportReport verify_support(const SpectralField& U0, double epsilon,
                                    std::size_t max_listed = 64) {
    SupportReport report;
    const DomainSpec& d = U0.domain();
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        double mag2 = 0.0;
        for (int m = 0; m < U0.components(); ++m) mag2 += std::norm(U0.at(m, flat));
        if (mag2 == 0.0) return;
        const double xi = std::sqrt(xi_norm_sq(d, k));
        if (xi >= 1.0 - epsilon && xi <= 1.0 + epsilon) return;
        ++report.total;
        if (report.violations.size() < max_listed)
            report.violations.push_back({k, xi, std::sqrt(mag2)});
    });
    return report;
}

namespace detail {

// amplitude * profile * cell measure, sampled at each lattice radius
inline SpectralField assemble_a0(const DataSpec& spec, const DomainSpec& domain) {
    const AnnulusProfile prof = radial_bump(spec.epsilon, spec.bump_sharpness);
    const double amp = amplitude(spec);
    const double cell = std::pow(domain.scale, -domain.dim);
    SpectralField a0(domain, 1);
    for_each_mode(domain, [&](std::size_t flat, const std::array<int, 3>& k) {
        if (is_nyquist(domain, k)) return;
        const double r = std::sqrt(xi_norm_sq(domain, k));
        const double p = prof(r);
        if (p > 0.0) a0.at(0, flat) = Complex{amp * cell * p, 0.0};
    });
    return a0;
}

inline SpectralField build_perturbation(const PerturbationSpec& p, const DomainSpec& domain) {
    SpectralField f(domain, domain.dim);
    if (p.h3_amplitude == 0.0) return f;
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int m = 0; m < domain.dim; ++m) {
        auto c = f.component(m);
        for_each_mode(domain, [&](std::size_t flat, const std::array<int, 3>& k) {
            if (is_nyquist(domain, k)) return;
            for (int a = 0; a < domain.dim; ++a)
                if (k[a] > p.band || k[a] < -p.band) return;
            c[flat] = Complex{gauss(rng), gauss(rng)};
        });
        c[0] = Complex{0.0, 0.0};
    }
    enforce_hermitian(f);
    f = leray_project(f);
    const double h3 = h3_norm(f);
    if (h3 > 0.0) f *= p.h3_amplitude / h3;
    return f;
}

inline void check_user_perturbation(const SpectralField& f, const char* name) {
    const double div = divergence_max(f);
    if (div > 1e-10 * std::max(f.max_abs(), 1e-300))
        throw std::invalid_argument(std::string("build_data: ") + name +
                                    " is not divergence-free (max |xi.coeff| = " +
                                    std::to_string(div) + ")");
}

}  // namespace detail

inline InitialData build_data_2d(const DataSpec& spec, const DomainSpec& domain,
                                 std::optional<SpectralField> v0 = std::nullopt,
                                 std::optional<SpectralField> c0 = std::nullopt) {
    spec.validate();
    domain.validate();
    if (domain.dim != 2) throw std::invalid_argument("build_data_2d: domain must be 2D");
    const std::size_t shells = annulus_mode_count(domain, spec.epsilon);
    if (shells == 0)
        throw std::invalid_argument("build_data_2d: annulus [1-eps,1+eps] holds no lattice modes "
                                    "(epsilon = " + std::to_string(spec.epsilon) +
                                    ", L = " + std::to_string(domain.scale) + ")");

    InitialData data;
    data.annulus_modes = shells;
    data.a0 = detail::assemble_a0(spec, domain);

    data.U0 = SpectralField(domain, 2);
    const double inv_l = 1.0 / domain.scale;
    for_each_mode(domain, [&](std::size_t flat, const std::array<int, 3>& k) {
        const Complex a = data.a0.at(0, flat);
        if (a == Complex{0.0, 0.0}) return;
        data.U0.at(0, flat) = Complex{0.0, k[1] * inv_l} * a;   // d2 a0
        data.U0.at(1, flat) = -Complex{0.0, k[0] * inv_l} * a;  // -d1 a0
    });

    data.v0 = v0 ? *v0 : detail::build_perturbation(spec.v0_perturbation, domain);
    data.c0 = c0 ? *c0 : detail::build_perturbation(spec.c0_perturbation, domain);
    detail::check_user_perturbation(data.v0, "v0");
    detail::check_user_perturbation(data.c0, "c0");

    data.u0 = data.U0 + data.v0;
    data.b0 = data.U0 + data.c0;
    return data;
}

// Closed form of the 3D background spectrum, used as an independent check of
// the operator-route assembly.
inline SpectralField closed_form_U0_3d(const DataSpec& spec, const DomainSpec& domain) {
    const AnnulusProfile prof = radial_bump(spec.epsilon, spec.bump_sharpness);
    const double amp = amplitude(spec);
    const double cell = std::pow(domain.scale, -domain.dim);
    const double inv_l = 1.0 / domain.scale;
    SpectralField u(domain, 3);
    for_each_mode(domain, [&](std::size_t flat, const std::array<int, 3>& k) {
        if (is_nyquist(domain, k)) return;
        const double r = std::sqrt(xi_norm_sq(domain, k));
        const double p = prof(r);
        if (p <= 0.0) return;
        const double a = amp * cell * p;
        const double x1 = k[0] * inv_l, x2 = k[1] * inv_l, x3 = k[2] * inv_l;
        u.at(0, flat) = Complex{a * (x2 * x2 + x3 * x3) / r, 0.0};
        u.at(1, flat) = Complex{-a * x1 * x2 / r, a * x3};
        u.at(2, flat) = Complex{-a * x1 * x3 / r, -a * x2};
    });
    return u;
}

inline InitialData build_data_3d(const DataSpec& spec, const DomainSpec& domain,
                                 std::optional<SpectralField> v0 = std::nullopt,
                                 std::optional<SpectralField> c0 = std::nullopt) {
    spec.validate();
    domain.validate();
    if (domain.dim != 3) throw std::invalid_argument("build_data_3d: domain must be 3D");
    const std::size_t shells = annulus_mode_count(domain, spec.epsilon);
    if (shells == 0)
        throw std::invalid_argument("build_data_3d: annulus [1-eps,1+eps] holds no lattice modes "
                                    "(epsilon = " + std::to_string(spec.epsilon) +
                                    ", L = " + std::to_string(domain.scale) + ")");

    InitialData data;
    data.annulus_modes = shells;
    data.a0 = detail::assemble_a0(spec, domain);

    // V0 = amplitude * curl (a0, 0, 0) = amplitude * (0, d3 a0, -d2 a0);
    // the amplitude and cell measure already live in a0.
    SpectralField v0_field(domain, 3);
    const double inv_l = 1.0 / domain.scale;
    for_each_mode(domain, [&](std::size_t flat, const std::array<int, 3>& k) {
        const Complex a = data.a0.at(0, flat);
        if (a == Complex{0.0, 0.0}) return;
        v0_field.at(1, flat) = Complex{0.0, k[2] * inv_l} * a;
        v0_field.at(2, flat) = -Complex{0.0, k[1] * inv_l} * a;
    });

    const SpectralField curl_v0 = differentiate(v0_field, Diff::Curl);
    data.U0 = v0_field + apply_radial_multiplier(curl_v0, RadialMultiplier::lambda_power(-1.0));

    // the construction relies on curl U0 = Lambda U0 exactly
    const SpectralField curl_u0 = differentiate(data.U0, Diff::Curl);
    const SpectralField lambda_u0 =
        apply_radial_multiplier(data.U0, RadialMultiplier::lambda_power(1.0));
    const double beltrami = l2_norm(curl_u0 - lambda_u0);
    const double scale = l2_norm(data.U0);
    if (scale > 0.0 && beltrami > 1e-10 * scale)
        throw std::runtime_error("build_data_3d: Beltrami residual " + std::to_string(beltrami) +
                                 " exceeds tolerance against |U0| = " + std::to_string(scale));

    data.v0 = v0 ? *v0 : detail::build_perturbation(spec.v0_perturbation, domain);
    data.c0 = c0 ? *c0 : detail::build_perturbation(spec.c0_perturbation, domain);
    detail::check_user_perturbation(data.v0, "v0");
    detail::check_user_perturbation(data.c0, "c0");

    data.u0 = data.U0 + data.v0;
    data.b0 = data.U0 + data.c0;
    return data;
}

// Exact left side of the smallness condition: the universal constant is not
// quantified by the theory, so it is a caller input and the value is reported
// rather than compared against a threshold.
inline double largeness_lhs(const SpectralField& v0, const SpectralField& c0,
                            const SpectralField& U0, double epsilon, double C) {
    if (C <= 0.0) throw std::invalid_argument("largeness_lhs: C must be positive");
    const double h3v = h3_norm(v0);
    const double h3c = h3_norm(c0);
    const double l2 = l2_norm(U0);
    const double l1 = spectrum_l1_norm(U0);
    const double base = h3v * h3v + h3c * h3c + epsilon * l2 * (1.0 + l1);
    const double expo = l1 + epsilon * l2 * (1.0 + l1);
    return base * std::exp(C * expo);
}

}  // namespace specmhd

#endif
