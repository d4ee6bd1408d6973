// Time integration of the full system and of the perturbation system with an
// integrating-factor RK4 step: the diagonal fractional dissipation
// e^{-mu |xi|^alpha dt} is applied exactly, the remaining terms are advanced
// with classical RK4 in the transformed variable (Lawson scheme).  This
// removes the stiffness of Lambda^gamma for every gamma in [0,2].

#ifndef SPECMHD_SOLVER_HPP
#define SPECMHD_SOLVER_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "specmhd/background.hpp"
#include "specmhd/products.hpp"

namespace specmhd {

enum class Formulation { Full, Perturbation };

struct DtPolicy {
    enum class Kind { Fixed, Cfl };
    Kind kind = Kind::Cfl;
    double fixed_dt = 1e-2;
    double safety = 0.5;    // in (0, 1]
    double max_dt = 0.05;   // cap, also the value returned for zero fields
    double floor = 1e-8;    // speed floor guarding the division

    void validate() const {
        if (kind == Kind::Fixed && fixed_dt <= 0.0)
            throw std::invalid_argument("DtPolicy: fixed_dt must be positive");
        if (safety <= 0.0 || safety > 1.0)
            throw std::invalid_argument("DtPolicy: safety must lie in (0,1]");
        if (max_dt <= 0.0) throw std::invalid_argument("DtPolicy: max_dt must be positive");
    }
};

struct SolverConfig {
    double alpha = 1.0;
    double beta = 1.0;
    double mu = 1.0;
    double nu = 1.0;
    Formulation formulation = Formulation::Perturbation;
    double t_end = 50.0;
    DtPolicy dt_policy{};
    double record_every = 0.5;

    void validate() const {
        if (alpha < 0.0 || alpha > 2.0 || beta < 0.0 || beta > 2.0)
            throw std::invalid_argument("SolverConfig: alpha, beta must lie in [0,2]");
        if (mu <= 0.0 || nu <= 0.0)
            throw std::invalid_argument("SolverConfig: mu, nu must be positive");
        if (t_end <= 0.0) throw std::invalid_argument("SolverConfig: t_end must be positive");
        if (record_every <= 0.0)
            throw std::invalid_argument("SolverConfig: record_every must be positive");
        dt_policy.validate();
    }
};

// Evolved pair: (u, b) in the full formulation, (v, c) in the perturbation
// formulation.
struct FlowState {
    double t = 0.0;
    SpectralField velocity;
    SpectralField magnetic;
};

class BlowupError : public std::runtime_error {
  public:
    BlowupError(double t, const std::string& what) : std::runtime_error(what), t_(t) {}
    double t() const { return t_; }

  private:
    double t_;
};

namespace detail {

// e^{-coef |xi|^gamma dt} per mode, with the gamma = 0 damping convention.
inline std::vector<double> dissipation_factors(const DomainSpec& d, double coef, double gamma,
                                               double dt) {
    std::vector<double> e(d.grid_size());
    for_each_mode(d, [&](std::size_t flat, const std::array<int, 3>& k) {
        const double x2 = xi_norm_sq(d, k);
        const double symbol = gamma == 0.0 ? 1.0 : std::pow(x2, 0.5 * gamma);
        e[flat] = std::exp(-coef * symbol * dt);
    });
    return e;
}

inline void apply_diagonal(SpectralField& f, const std::vector<double>& e) {
    for (int m = 0; m < f.components(); ++m) {
        auto c = f.component(m);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] *= e[i];
    }
}

inline SpectralField diagonal_times(const SpectralField& f, const std::vector<double>& e) {
    SpectralField out = f;
    apply_diagonal(out, e);
    return out;
}

}  // namespace detail

// Nonstiff tendencies (everything except the diagonal dissipation), already
// Leray-projected.
using NonstiffRhs = std::function<std::pair<SpectralField, SpectralField>(
    double t, const SpectralField& velocity, const SpectralField& magnetic)>;

// One Lawson IF-RK4 step.  Holds the per-dt diagonal factors so that repeated
// fixed-dt stepping pays the exp() cost once.
class IntegratingFactorRk4 {
  public:
    IntegratingFactorRk4(const DomainSpec& domain, const SolverConfig& cfg)
        : domain_(domain), cfg_(cfg) {}

    FlowState step(const FlowState& state, const NonstiffRhs& rhs, double dt) {
        if (dt <= 0.0) throw std::invalid_argument("step: dt must be positive");
        prepare(dt);
        const double t = state.t;
        const SpectralField& v = state.velocity;
        const SpectralField& m = state.magnetic;

        auto [k1v, k1m] = rhs(t, v, m);

        SpectralField va = v;
        va.axpy(0.5 * dt, k1v);
        detail::apply_diagonal(va, half_v_);
        SpectralField ma = m;
        ma.axpy(0.5 * dt, k1m);
        detail::apply_diagonal(ma, half_m_);
        auto [k2v, k2m] = rhs(t + 0.5 * dt, va, ma);

        SpectralField vb = detail::diagonal_times(v, half_v_);
        vb.axpy(0.5 * dt, k2v);
        SpectralField mb = detail::diagonal_times(m, half_m_);
        mb.axpy(0.5 * dt, k2m);
        auto [k3v, k3m] = rhs(t + 0.5 * dt, vb, mb);

        SpectralField vc = detail::diagonal_times(v, full_v_);
        vc.axpy(dt, detail::diagonal_times(k3v, half_v_));
        SpectralField mc = detail::diagonal_times(m, full_m_);
        mc.axpy(dt, detail::diagonal_times(k3m, half_m_));
        auto [k4v, k4m] = rhs(t + dt, vc, mc);

        FlowState out;
        out.t = t + dt;
        out.velocity = detail::diagonal_times(v, full_v_);
        out.velocity.axpy(dt / 6.0, detail::diagonal_times(k1v, full_v_));
        detail::apply_diagonal(k2v, half_v_);
        detail::apply_diagonal(k3v, half_v_);
        out.velocity.axpy(dt / 3.0, k2v);
        out.velocity.axpy(dt / 3.0, k3v);
        out.velocity.axpy(dt / 6.0, k4v);

        out.magnetic = detail::diagonal_times(m, full_m_);
        out.magnetic.axpy(dt / 6.0, detail::diagonal_times(k1m, full_m_));
        detail::apply_diagonal(k2m, half_m_);
        detail::apply_diagonal(k3m, half_m_);
        out.magnetic.axpy(dt / 3.0, k2m);
        out.magnetic.axpy(dt / 3.0, k3m);
        out.magnetic.axpy(dt / 6.0, k4m);

        // re-enforce the state invariants
        out.velocity = leray_project(out.velocity);
        out.magnetic = leray_project(out.magnetic);
        enforce_hermitian(out.velocity);
        enforce_hermitian(out.magnetic);
        zero_nyquist(out.velocity);
        zero_nyquist(out.magnetic);

        if (!out.velocity.all_finite() || !out.magnetic.all_finite())
            throw BlowupError(out.t, "step: non-finite coefficient detected at t = " +
                                         std::to_string(out.t));
        return out;
    }

  private:
    void prepare(double dt) {
        if (dt == cached_dt_) return;
        half_v_ = detail::dissipation_factors(domain_, cfg_.mu, cfg_.alpha, 0.5 * dt);
        full_v_ = detail::dissipation_factors(domain_, cfg_.mu, cfg_.alpha, dt);
        half_m_ = detail::dissipation_factors(domain_, cfg_.nu, cfg_.beta, 0.5 * dt);
        full_m_ = detail::dissipation_factors(domain_, cfg_.nu, cfg_.beta, dt);
        cached_dt_ = dt;
    }

    DomainSpec domain_;
    SolverConfig cfg_;
    double cached_dt_ = -1.0;
    std::vector<double> half_v_, full_v_, half_m_, full_m_;
};

namespace detail {

inline void check_solenoidal_input(const SpectralField& f, const char* who) {
    const double div = divergence_max(f);
    if (div > 1e-8 * std::max(f.max_abs(), 1e-300))
        throw std::invalid_argument(std::string(who) +
                                    ": input not solenoidal (max |xi.coeff| = " +
                                    std::to_string(div) + ")");
}

// Per-stage physical-space cache of a state: components and all first
// derivatives of the dealias-truncated field.
struct PhysicalCache {
    PhysicalField value;
    std::vector<PhysicalField> grad;  // grad[a] holds d_a of every component

    static PhysicalCache make(const SpectralField& f) {
        PhysicalCache c;
        const SpectralField ft = truncated(f);
        c.value = inverse_transform(ft);
        c.grad.reserve(f.domain().dim);
        for (int a = 0; a < f.domain().dim; ++a)
            c.grad.push_back(inverse_transform(partial_derivative(ft, a)));
        return c;
    }
};

}  // namespace detail

// Nonstiff right side of the full system (1.1):
//   velocity: P(-u.grad u + b.grad b)     magnetic: P(-u.grad b + b.grad u)
class FullRhs {
  public:
    explicit FullRhs(const DomainSpec& domain) : domain_(domain) {}

    std::pair<SpectralField, SpectralField> operator()(double, const SpectralField& u,
                                                       const SpectralField& b) const {
        const int dim = domain_.dim;
        const auto uc = detail::PhysicalCache::make(u);
        const auto bc = detail::PhysicalCache::make(b);
        PhysicalField nu_phys(domain_, dim), nb_phys(domain_, dim);
        const std::size_t npts = domain_.grid_size();
        for (int m = 0; m < dim; ++m) {
            for (std::size_t p = 0; p < npts; ++p) {
                double acc_u = 0.0, acc_b = 0.0;
                for (int a = 0; a < dim; ++a) {
                    const double ua = uc.value.at(a, p), ba = bc.value.at(a, p);
                    acc_u += -ua * uc.grad[a].at(m, p) + ba * bc.grad[a].at(m, p);
                    acc_b += -ua * bc.grad[a].at(m, p) + ba * uc.grad[a].at(m, p);
                }
                nu_phys.at(m, p) = acc_u;
                nb_phys.at(m, p) = acc_b;
            }
        }
        SpectralField nu_hat = forward_transform(nu_phys);
        SpectralField nb_hat = forward_transform(nb_phys);
        truncate_dealias(nu_hat);
        truncate_dealias(nb_hat);
        return {leray_project(nu_hat), leray_project(nb_hat)};
    }

  private:
    DomainSpec domain_;
};

// Nonstiff right side of the perturbation system:
//   velocity: P(-v.grad v + c.grad c + B.grad c + c.grad B - v.grad U
//               - U.grad v + g - f)
//   magnetic: P(-v.grad c + c.grad v + B.grad v + c.grad U - v.grad B
//               - U.grad c - h)
// f and h enter with a minus sign: subtracting the background system from the
// full system puts the background forcings on the right with flipped sign.
class PerturbationRhs {
  public:
    PerturbationRhs(const DomainSpec& domain, const BackgroundState& bg)
        : domain_(domain), mu_(bg.mu), nu_(bg.nu) {
        bg.validate();
        u0_cache_ = detail::PhysicalCache::make(bg.U0);
        f_base_ = apply_radial_multiplier(bg.U0, lambda_minus_one(bg.alpha));
        f_base_ *= bg.mu;
        h_base_ = apply_radial_multiplier(bg.U0, lambda_minus_one(bg.beta));
        h_base_ *= bg.nu;
        g_base_ = multiply_dealiased(bg.U0, bg.U0, Contraction::Advection);
    }

    std::pair<SpectralField, SpectralField> operator()(double t, const SpectralField& v,
                                                       const SpectralField& c) const {
        const int dim = domain_.dim;
        const double eu = std::exp(-mu_ * t);   // U(t) = eu U0
        const double eb = std::exp(-nu_ * t);   // B(t) = eb U0
        const auto vc = detail::PhysicalCache::make(v);
        const auto cc = detail::PhysicalCache::make(c);

        PhysicalField nv_phys(domain_, dim), nc_phys(domain_, dim);
        const std::size_t npts = domain_.grid_size();
        for (int m = 0; m < dim; ++m) {
            for (std::size_t p = 0; p < npts; ++p) {
                double acc_v = 0.0, acc_c = 0.0;
                for (int a = 0; a < dim; ++a) {
                    const double va = vc.value.at(a, p);
                    const double ca = cc.value.at(a, p);
                    const double u0a = u0_cache_.value.at(a, p);
                    const double dv = vc.grad[a].at(m, p);
                    const double dc = cc.grad[a].at(m, p);
                    const double du0 = u0_cache_.grad[a].at(m, p);
                    acc_v += -va * dv + ca * dc + eb * (u0a * dc + ca * du0) -
                             eu * (va * du0 + u0a * dv);
                    acc_c += -va * dc + ca * dv + eb * (u0a * dv - va * du0) +
                             eu * (ca * du0 - u0a * dc);
                }
                nv_phys.at(m, p) = acc_v;
                nc_phys.at(m, p) = acc_c;
            }
        }

        SpectralField nv = forward_transform(nv_phys);
        SpectralField nc = forward_transform(nc_phys);
        truncate_dealias(nv);
        truncate_dealias(nc);

        // g(t) = (e^{-2 nu t} - e^{-2 mu t}) U0.grad U0, entering as +g
        nv.axpy(eb * eb - eu * eu, g_base_);
        nv.axpy(-eu, f_base_);
        nc.axpy(-eb, h_base_);
        return {leray_project(nv), leray_project(nc)};
    }

  private:
    DomainSpec domain_;
    double mu_, nu_;
    detail::PhysicalCache u0_cache_;
    SpectralField f_base_;  // mu (Lambda^alpha - 1) U0
    SpectralField h_base_;  // nu (Lambda^beta  - 1) U0
    SpectralField g_base_;  // U0.grad U0, dealiased
};

// Full tendencies including dissipation, for oracles and cross-checks.
inline std::pair<SpectralField, SpectralField> rhs_full(const FlowState& state,
                                                        const SolverConfig& cfg) {
    detail::check_solenoidal_input(state.velocity, "rhs_full");
    detail::check_solenoidal_input(state.magnetic, "rhs_full");
    auto [du, db] = FullRhs(state.velocity.domain())(state.t, state.velocity, state.magnetic);
    SpectralField diss_u =
        apply_radial_multiplier(state.velocity, RadialMultiplier::lambda_power(cfg.alpha));
    du.axpy(-cfg.mu, diss_u);
    SpectralField diss_b =
        apply_radial_multiplier(state.magnetic, RadialMultiplier::lambda_power(cfg.beta));
    db.axpy(-cfg.nu, diss_b);
    return {std::move(du), std::move(db)};
}

inline std::pair<SpectralField, SpectralField> rhs_perturbation(const FlowState& state,
                                                                const BackgroundState& bg,
                                                                const SolverConfig& cfg) {
    if (!(state.velocity.domain() == bg.U0.domain()))
        throw std::invalid_argument("rhs_perturbation: state/background domain mismatch");
    detail::check_solenoidal_input(state.velocity, "rhs_perturbation");
    detail::check_solenoidal_input(state.magnetic, "rhs_perturbation");
    auto [dv, dc] =
        PerturbationRhs(state.velocity.domain(), bg)(state.t, state.velocity, state.magnetic);
    SpectralField diss_v =
        apply_radial_multiplier(state.velocity, RadialMultiplier::lambda_power(cfg.alpha));
    dv.axpy(-cfg.mu, diss_v);
    SpectralField diss_c =
        apply_radial_multiplier(state.magnetic, RadialMultiplier::lambda_power(cfg.beta));
    dc.axpy(-cfg.nu, diss_c);
    return {std::move(dv), std::move(dc)};
}

// dt = safety * dx / (|u|_inf + |b|_inf + floor), capped at max_dt.  The
// arguments are the transporting fields (reconstructed u, b in the
// perturbation formulation).
inline double cfl_dt(const SpectralField& u, const SpectralField& b, const DtPolicy& policy) {
    const double speed = linf_norm(u) + linf_norm(b) + policy.floor;
    return std::min(policy.max_dt, policy.safety * u.domain().dx() / speed);
}

}  // namespace specmhd

#endif
