// Quantitative monitors: one DiagnosticsRecord per time sample, plus the
// sampled-inequality checks.  The unquantified constants of the theory are
// replaced by order-one envelopes (default 10) together with scaling
// cross-checks in epsilon and t.

#ifndef SPECMHD_DIAGNOSTICS_HPP
#define SPECMHD_DIAGNOSTICS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "specmhd/background.hpp"
#include "specmhd/solver.hpp"

namespace specmhd {

struct DiagnosticsRecord {
    double t = 0.0;
    double h3_v = 0.0;
    double h3_c = 0.0;
    double l2_energy = 0.0;
    double dissipation_rate = 0.0;
    double forcing_work_rate = 0.0;
    double h3_f = 0.0;
    double h3_h = 0.0;
    double h3_G = 0.0;
    double bernstein_ratio_U = 0.0;
    double bernstein_ratio_B = 0.0;
    double lemma33_ratio_f = 0.0;
    double lemma33_ratio_G = 0.0;
    bool bootstrap_ok = true;
};

// All distinct partial-derivative multi-indices of the given total order.
inline std::vector<std::array<int, 3>> multi_indices(int dim, int order) {
    std::vector<std::array<int, 3>> out;
    if (dim == 2) {
        for (int i = 0; i <= order; ++i) out.push_back({order - i, i, 0});
    } else {
        for (int i = 0; i <= order; ++i)
            for (int j = 0; j <= order - i; ++j) out.push_back({order - i - j, i, j});
    }
    return out;
}

// sup over grid points of the Frobenius norm of the order-k derivative tensor
// (all distinct multi-indices, all components).
inline double gradient_tensor_linf(const SpectralField& f, int order) {
    const DomainSpec& d = f.domain();
    std::vector<double> acc(d.grid_size(), 0.0);
    for (const auto& idx : multi_indices(d.dim, order)) {
        const PhysicalField p = inverse_transform(derivative_multi(f, idx));
        for (int m = 0; m < p.components(); ++m) {
            auto s = p.component(m);
            for (std::size_t i = 0; i < s.size(); ++i) acc[i] += s[i] * s[i];
        }
    }
    double worst = 0.0;
    for (double v : acc) worst = std::max(worst, v);
    return std::sqrt(worst);
}

// ---------------------------------------------------------------------------
// Bernstein bound on annulus data: |grad U|_inf + |grad^4 U|_inf against
// e^{-mu t} |U0hat|_L1, order-one on the unit shell.

struct BernsteinReport {
    double t = 0.0;
    double ratio_U = 0.0;
    double ratio_B = 0.0;
    double envelope = 10.0;
    bool pass() const { return ratio_U <= envelope && ratio_B <= envelope; }
};

inline BernsteinReport bernstein_check(const BackgroundState& bg, double t,
                                       double envelope = 10.0) {
    BernsteinReport report;
    report.t = t;
    report.envelope = envelope;
    const double l1 = spectrum_l1_norm(bg.U0);
    if (l1 == 0.0) return report;
    const auto [u, b] = background_at(bg, t);
    report.ratio_U = (gradient_tensor_linf(u, 1) + gradient_tensor_linf(u, 4)) /
                     (std::exp(-bg.mu * t) * l1);
    report.ratio_B = (gradient_tensor_linf(b, 1) + gradient_tensor_linf(b, 4)) /
                     (std::exp(-bg.nu * t) * l1);
    return report;
}

// ---------------------------------------------------------------------------
// Lemma 3.3 ratios.

struct Lemma33Report {
    std::vector<double> t_samples;
    std::vector<double> ratio_f;  // |f|_H3 / (e^{-min(mu,nu) t} eps |U0|_L2)
    std::vector<double> ratio_G;  // |G|_H3 / (e^{-2 min(mu,nu) t} eps |U0|_L2 |U0hat|_L1)
    double envelope = 10.0;
    double max_variation_f = 0.0;  // (max-min)/max over t
    double max_variation_G = 0.0;

    bool pass() const {
        auto ok = [&](const std::vector<double>& r) {
            return std::all_of(r.begin(), r.end(), [&](double x) { return x <= envelope; });
        };
        return ok(ratio_f) && ok(ratio_G) && max_variation_f <= 0.2 && max_variation_G <= 0.2;
    }
};

inline double h3_of_G(const BackgroundState& bg, double t) {
    return bg.U0.domain().dim == 2 ? h3_norm(decompose_g_2d(bg, t).G)
                                   : h3_norm(source_G_3d(bg, t));
}

inline Lemma33Report lemma33_check(const BackgroundState& bg, double epsilon,
                                   const std::vector<double>& t_samples,
                                   double envelope = 10.0) {
    Lemma33Report report;
    report.envelope = envelope;
    report.t_samples = t_samples;
    const double l2 = l2_norm(bg.U0);
    const double l1 = spectrum_l1_norm(bg.U0);
    const double rate = std::min(bg.mu, bg.nu);
    if (l2 == 0.0) return report;
    for (double t : t_samples) {
        const auto [f, h] = forcing_terms(bg, t);
        report.ratio_f.push_back(h3_norm(f) / (std::exp(-rate * t) * epsilon * l2));
        report.ratio_G.push_back(h3_of_G(bg, t) /
                                 (std::exp(-2.0 * rate * t) * epsilon * l2 * l1));
    }
    auto variation = [](const std::vector<double>& r) {
        if (r.empty()) return 0.0;
        const double hi = *std::max_element(r.begin(), r.end());
        const double lo = *std::min_element(r.begin(), r.end());
        return hi > 0.0 ? (hi - lo) / hi : 0.0;
    };
    report.max_variation_f = variation(report.ratio_f);
    report.max_variation_G = variation(report.ratio_G);
    return report;
}

// ---------------------------------------------------------------------------
// Sampled commutator / product inequalities (Moser-type).

// [D^l, g] f = D^l(g f) - g D^l f with dealiased products.  A constant g
// commutes with every Fourier multiplier, so that case is identically the
// zero operator and short-circuits.
inline SpectralField commutator_dealiased(const SpectralField& g, const SpectralField& f,
                                          const std::array<int, 3>& order) {
    if (g.is_constant()) return SpectralField(f.domain(), f.components());
    const SpectralField gf = multiply_dealiased(g, f, Contraction::Pointwise);
    SpectralField out = derivative_multi(gf, order);
    out -= multiply_dealiased(g, derivative_multi(f, order), Contraction::Pointwise);
    return out;
}

struct MoserReport {
    int trials = 0;
    // empirical max constants over trials
    double commutator_vs_mixed = 0.0;     // sum|[D^l,g]f| / (|f|_H2 |grad g|_inf + |f|_inf |g|_H3)
    double commutator_vs_gradients = 0.0; // sum|[D^l,g]f| / ((|grad g|_inf + |grad^3 g|_inf) |f|_H2)
    double product_vs_h3 = 0.0;           // sum|D^l(fg)| / (|f|_H3 |g|_H3)
    double product_vs_linf = 0.0;         // sum|D^l(fg)| / ((|f|_inf + |grad^3 f|_inf) |g|_H3)
    double constant_g_commutator = 0.0;   // must be exactly zero
    bool finite() const {
        return std::isfinite(commutator_vs_mixed) && std::isfinite(commutator_vs_gradients) &&
               std::isfinite(product_vs_h3) && std::isfinite(product_vs_linf);
    }
};

inline double commutator_sum_l2(const SpectralField& g, const SpectralField& f) {
    if (g.is_constant()) return 0.0;
    const SpectralField gf = multiply_dealiased(g, f, Contraction::Pointwise);
    double acc = 0.0;
    for (int order = 1; order <= 3; ++order)
        for (const auto& idx : multi_indices(f.domain().dim, order)) {
            SpectralField comm = derivative_multi(gf, idx);
            comm -= multiply_dealiased(g, derivative_multi(f, idx), Contraction::Pointwise);
            acc += l2_norm(comm);
        }
    return acc;
}

inline double product_sum_l2(const SpectralField& f, const SpectralField& g) {
    const SpectralField fg = multiply_dealiased(f, g, Contraction::Pointwise);
    double acc = 0.0;
    for (int order = 0; order <= 3; ++order)
        for (const auto& idx : multi_indices(f.domain().dim, order))
            acc += l2_norm(derivative_multi(fg, idx));
    return acc;
}

inline MoserReport moser_check(int trials, std::uint64_t seed, const DomainSpec& domain,
                               int band = 8) {
    if (trials < 1) throw std::invalid_argument("moser_check: trials must be >= 1");
    MoserReport report;
    report.trials = trials;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto random_scalar = [&]() {
        SpectralField f(domain, 1);
        auto c = f.component(0);
        for_each_mode(domain, [&](std::size_t flat, const std::array<int, 3>& k) {
            if (is_nyquist(domain, k)) return;
            for (int a = 0; a < domain.dim; ++a)
                if (k[a] > band || k[a] < -band) return;
            c[flat] = Complex{gauss(rng), gauss(rng)};
        });
        enforce_hermitian(f);
        const double n = l2_norm(f);
        if (n > 0.0) f *= 1.0 / n;
        return f;
    };

    for (int trial = 0; trial < trials; ++trial) {
        const SpectralField f = random_scalar();
        const SpectralField g = random_scalar();

        const double comm = commutator_sum_l2(g, f);
        const double grad_g = gradient_tensor_linf(g, 1);
        const double grad3_g = gradient_tensor_linf(g, 3);
        const double rhs1 = hs_norm(f, 2.0) * grad_g + linf_norm(f) * h3_norm(g);
        const double rhs2 = (grad_g + grad3_g) * hs_norm(f, 2.0);
        report.commutator_vs_mixed = std::max(report.commutator_vs_mixed, comm / rhs1);
        report.commutator_vs_gradients = std::max(report.commutator_vs_gradients, comm / rhs2);

        const double prod = product_sum_l2(f, g);
        const double rhs3 = h3_norm(f) * h3_norm(g);
        const double rhs4 = (linf_norm(f) + gradient_tensor_linf(f, 3)) * h3_norm(g);
        report.product_vs_h3 = std::max(report.product_vs_h3, prod / rhs3);
        report.product_vs_linf = std::max(report.product_vs_linf, prod / rhs4);
    }

    // constant-g case: commutators vanish identically
    SpectralField g_const(domain, 1);
    g_const.at(0, 0) = Complex{2.0, 0.0};
    report.constant_g_commutator = commutator_sum_l2(g_const, random_scalar());
    return report;
}

// ---------------------------------------------------------------------------
// Bootstrap monitor: the continuity-argument quantity
// sup_t (|v|_H3^2 + |c|_H3^2) against the configured threshold eta.

struct BootstrapReport {
    double sup = 0.0;
    double sup_time = 0.0;
    double eta = 0.0;
    std::optional<double> first_crossing;
    bool pass() const { return !first_crossing.has_value(); }
};

inline BootstrapReport bootstrap_monitor(const std::vector<DiagnosticsRecord>& trajectory,
                                         double eta) {
    if (eta <= 0.0) throw std::invalid_argument("bootstrap_monitor: eta must be positive");
    if (trajectory.empty())
        throw std::invalid_argument("bootstrap_monitor: empty trajectory");
    BootstrapReport report;
    report.eta = eta;
    for (const auto& rec : trajectory) {
        const double q = rec.h3_v * rec.h3_v + rec.h3_c * rec.h3_c;
        if (q > report.sup) {
            report.sup = q;
            report.sup_time = rec.t;
        }
        if (q > eta && !report.first_crossing) report.first_crossing = rec.t;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Discrete energy balance: per-window energy drop against the quadrature of
// dissipation minus forcing work.  Simpson windows over record pairs keep the
// quadrature error a couple of orders below the 0.1% target; a trailing odd
// interval falls back to the trapezoid.

struct EnergyBalanceReport {
    double max_relative_residual = 0.0;
    double tolerance = 1e-3;
    bool pass() const { return max_relative_residual <= tolerance; }
};

inline EnergyBalanceReport energy_balance(const std::vector<DiagnosticsRecord>& trajectory,
                                          double tolerance = 1e-3) {
    EnergyBalanceReport report;
    report.tolerance = tolerance;
    auto window = [&](const DiagnosticsRecord& a, const DiagnosticsRecord& b, double dissipated,
                      double work) {
        const double drop = a.l2_energy - b.l2_energy;
        const double scale = std::max(std::abs(dissipated) + std::abs(work), 1e-14);
        const double resid = std::abs(drop - (dissipated - work)) / scale;
        report.max_relative_residual = std::max(report.max_relative_residual, resid);
    };
    std::size_t i = 0;
    while (i + 2 < trajectory.size()) {
        const auto& a = trajectory[i];
        const auto& m = trajectory[i + 1];
        const auto& b = trajectory[i + 2];
        const double h = (b.t - a.t) / 6.0;
        window(a, b, h * (a.dissipation_rate + 4.0 * m.dissipation_rate + b.dissipation_rate),
               h * (a.forcing_work_rate + 4.0 * m.forcing_work_rate + b.forcing_work_rate));
        i += 2;
    }
    if (i + 1 < trajectory.size()) {
        const auto& a = trajectory[i];
        const auto& b = trajectory[i + 1];
        const double h = 0.5 * (b.t - a.t);
        window(a, b, h * (a.dissipation_rate + b.dissipation_rate),
               h * (a.forcing_work_rate + b.forcing_work_rate));
    }
    return report;
}

}  // namespace specmhd

#endif
