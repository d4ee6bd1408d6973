// Time-integration driver: advances either formulation from constructed
// data, emitting one DiagnosticsRecord per cadence interval, and aborts with
// a state dump when a blow-up is detected.

#ifndef SPECMHD_RUN_HPP
#define SPECMHD_RUN_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "specmhd/diagnostics.hpp"
#include "specmhd/initial_data.hpp"
#include "specmhd/solver.hpp"

namespace specmhd {

struct RunChecksConfig {
    double eta = 1e-2;            // bootstrap threshold for the record flag
    double c_envelope = 10.0;     // order-one constant envelope
    bool background_ratios = true;
    double blowup_factor = 1e6;   // abort when the |u|_inf majorant exceeds this times initial
};

struct RunResult {
    std::vector<DiagnosticsRecord> records;
    double initial_linf_u = 0.0;
    double first_dt = 0.0;      // first step size taken (regression pin)
    double u0_linf = 0.0;       // |U0|_inf of the background
    double u0_h3 = 0.0;         // |U0|_H3 of the background
    std::size_t steps = 0;
};

namespace detail {

inline DiagnosticsRecord make_record(double t, const SpectralField& u, const SpectralField& b,
                                     const SpectralField& v, const SpectralField& c,
                                     const BackgroundState& bg, double epsilon,
                                     const RunChecksConfig& checks, bool with_background) {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.h3_v = h3_norm(v);
    rec.h3_c = h3_norm(c);
    const double l2u = l2_norm(u), l2b = l2_norm(b);
    rec.l2_energy = 0.5 * (l2u * l2u + l2b * l2b);
    rec.dissipation_rate = bg.mu * dissipation_quadratic(u, bg.alpha) +
                           bg.nu * dissipation_quadratic(b, bg.beta);
    rec.forcing_work_rate = 0.0;  // the reconstructed pair solves the unforced system
    if (with_background) {
        const auto [f, h] = forcing_terms(bg, t);
        rec.h3_f = h3_norm(f);
        rec.h3_h = h3_norm(h);
        rec.h3_G = h3_of_G(bg, t);
        const BernsteinReport bern = bernstein_check(bg, t, checks.c_envelope);
        rec.bernstein_ratio_U = bern.ratio_U;
        rec.bernstein_ratio_B = bern.ratio_B;
        const double l2 = l2_norm(bg.U0);
        const double l1 = spectrum_l1_norm(bg.U0);
        const double rate = std::min(bg.mu, bg.nu);
        if (l2 > 0.0) {
            rec.lemma33_ratio_f = rec.h3_f / (std::exp(-rate * t) * epsilon * l2);
            rec.lemma33_ratio_G =
                l1 > 0.0 ? rec.h3_G / (std::exp(-2.0 * rate * t) * epsilon * l2 * l1) : 0.0;
        }
    }
    rec.bootstrap_ok = rec.h3_v * rec.h3_v + rec.h3_c * rec.h3_c <= checks.eta;
    return rec;
}

}  // namespace detail

// Invoked at every record time with the reconstructed (u, b); used for
// snapshot export.
using RecordSink =
    std::function<void(double t, const SpectralField& u, const SpectralField& b)>;

inline RunResult run_simulation(const DomainSpec& domain, const InitialData& data,
                                const SolverConfig& cfg, double epsilon,
                                const RunChecksConfig& checks = {},
                                const RecordSink& on_record = {}) {
    domain.validate();
    cfg.validate();
    const BackgroundState bg{data.U0, cfg.mu, cfg.nu, cfg.alpha, cfg.beta};
    const bool with_background = checks.background_ratios && data.U0.max_abs() > 0.0;
    const bool perturbation = cfg.formulation == Formulation::Perturbation;

    FlowState state;
    state.t = 0.0;
    state.velocity = perturbation ? data.v0 : data.u0;
    state.magnetic = perturbation ? data.c0 : data.b0;

    NonstiffRhs rhs;
    if (perturbation) {
        rhs = PerturbationRhs(domain, bg);
    } else {
        rhs = FullRhs(domain);
    }
    IntegratingFactorRk4 stepper(domain, cfg);

    RunResult result;
    result.u0_linf = linf_norm(data.U0);
    result.u0_h3 = h3_norm(data.U0);

    auto reconstruct = [&](const FlowState& s) {
        // returns (u, b, v, c) regardless of formulation
        auto [bu, bb] = background_at(bg, s.t);
        if (perturbation) {
            SpectralField u = bu + s.velocity;
            SpectralField b = bb + s.magnetic;
            return std::tuple{std::move(u), std::move(b), s.velocity, s.magnetic};
        }
        SpectralField v = s.velocity - bu;
        SpectralField c = s.magnetic - bb;
        return std::tuple{s.velocity, s.magnetic, std::move(v), std::move(c)};
    };

    {
        const auto [u, b, v, c] = reconstruct(state);
        result.initial_linf_u = linf_norm(u);
        result.records.push_back(
            detail::make_record(0.0, u, b, v, c, bg, epsilon, checks, with_background));
        if (on_record) on_record(0.0, u, b);
    }

    const double guard = checks.blowup_factor * (result.initial_linf_u + 1e-8);
    int record_index = 1;
    double next_record = cfg.record_every;
    const double t_tiny = 1e-12 * std::max(1.0, cfg.t_end);

    while (state.t < cfg.t_end - t_tiny) {
        double dt;
        if (cfg.dt_policy.kind == DtPolicy::Kind::Fixed) {
            dt = cfg.dt_policy.fixed_dt;
        } else {
            const auto [u, b, v, c] = reconstruct(state);
            dt = cfl_dt(u, b, cfg.dt_policy);
        }
        if (state.t + dt > next_record) dt = next_record - state.t;
        if (state.t + dt > cfg.t_end) dt = cfg.t_end - state.t;

        state = stepper.step(state, rhs, dt);
        ++result.steps;
        if (result.steps == 1) result.first_dt = dt;

        // cheap blow-up majorant: |u|_inf <= sum of coefficient magnitudes
        const double majorant = spectrum_l1_norm(state.velocity) +
                                spectrum_l1_norm(state.magnetic) + result.u0_linf;
        if (majorant > guard)
            throw BlowupError(
                state.t,
                "run_simulation: blow-up detected at t = " + std::to_string(state.t) +
                    " (coefficient majorant " + std::to_string(majorant) +
                    " exceeds " + std::to_string(guard) + "; initial |u|_inf = " +
                    std::to_string(result.initial_linf_u) + ", steps = " +
                    std::to_string(result.steps) + ")");

        if (state.t >= next_record - t_tiny) {
            const auto [u, b, v, c] = reconstruct(state);
            result.records.push_back(detail::make_record(next_record, u, b, v, c, bg, epsilon,
                                                         checks, with_background));
            if (on_record) on_record(next_record, u, b);
            ++record_index;
            next_record = record_index * cfg.record_every;
        }
    }
    return result;
}

}  // namespace specmhd

#endif
