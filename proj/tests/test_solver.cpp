#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specmhd/run.hpp"
#include "test_helpers.hpp"

using namespace specmhd;
using specmhd::testing::random_solenoidal;
using specmhd::testing::rel_diff;

namespace {

const DomainSpec d2{2, 10.0, 128, 2.0 / 3.0};

InitialData data_2d(double eps = 0.1) {
    DataSpec spec;
    spec.epsilon = eps;
    return build_data_2d(spec, d2);
}

SolverConfig config_2d(Formulation form, double t_end, double dt) {
    SolverConfig cfg;
    cfg.formulation = form;
    cfg.t_end = t_end;
    cfg.dt_policy.kind = DtPolicy::Kind::Fixed;
    cfg.dt_policy.fixed_dt = dt;
    cfg.record_every = t_end;
    return cfg;
}

const NonstiffRhs zero_rhs = [](double, const SpectralField& v, const SpectralField& m) {
    return std::pair{SpectralField(v.domain(), v.components()),
                     SpectralField(m.domain(), m.components())};
};

}  // namespace

TEST_CASE("step with zero nonstiff terms is the exact diagonal decay") {
    SolverConfig cfg;
    cfg.alpha = 1.3;
    cfg.beta = 0.6;
    cfg.mu = 0.9;
    cfg.nu = 1.7;
    const SpectralField v0 = random_solenoidal(d2, 9, 5);
    const SpectralField m0 = random_solenoidal(d2, 9, 6);
    IntegratingFactorRk4 stepper(d2, cfg);
    const double dt = 0.37;
    const FlowState out = stepper.step(FlowState{0.0, v0, m0}, zero_rhs, dt);

    double worst = 0.0;
    for_each_mode(d2, [&](std::size_t flat, const std::array<int, 3>& k) {
        const double xi = std::sqrt(xi_norm_sq(d2, k));
        const double ev = std::exp(-cfg.mu * std::pow(xi, cfg.alpha) * dt);
        const double em = std::exp(-cfg.nu * std::pow(xi, cfg.beta) * dt);
        for (int c = 0; c < 2; ++c) {
            worst = std::max(worst, std::abs(out.velocity.at(c, flat) - ev * v0.at(c, flat)));
            worst = std::max(worst, std::abs(out.magnetic.at(c, flat) - em * m0.at(c, flat)));
        }
    });
    REQUIRE(worst < 1e-15 * std::max(1.0, v0.max_abs()));
    REQUIRE(out.t == Catch::Approx(dt));
}

TEST_CASE("forced background system reproduces the closed form with 4th-order error") {
    const InitialData data = data_2d();
    const BackgroundState bg{data.U0, 1.0, 0.7, 1.4, 0.8};
    SolverConfig cfg;
    cfg.alpha = bg.alpha;
    cfg.beta = bg.beta;
    cfg.mu = bg.mu;
    cfg.nu = bg.nu;

    const NonstiffRhs forcing_rhs = [&bg](double t, const SpectralField&, const SpectralField&) {
        return forcing_terms(bg, t);
    };

    auto integrate = [&](double dt) {
        IntegratingFactorRk4 stepper(d2, cfg);
        FlowState s{0.0, data.U0, data.U0};
        const int steps = static_cast<int>(std::round(1.0 / dt));
        for (int i = 0; i < steps; ++i) s = stepper.step(s, forcing_rhs, dt);
        return s;
    };

    const auto [u_exact, b_exact] = background_at(bg, 1.0);
    const double scale = l2_norm(data.U0);

    const FlowState fine = integrate(1e-3);
    REQUIRE(l2_norm(fine.velocity - u_exact) < 1e-8 * scale);
    REQUIRE(l2_norm(fine.magnetic - b_exact) < 1e-8 * scale);

    // dt-halving at a coarser dt where the error is far above roundoff
    const double err_coarse = l2_norm(integrate(0.1).velocity - u_exact);
    const double err_half = l2_norm(integrate(0.05).velocity - u_exact);
    REQUIRE(err_coarse / err_half >= 12.0);
}

TEST_CASE("rhs_full: parallel fields cancel the magnetic nonlinearity") {
    const InitialData data = data_2d();
    SolverConfig cfg;
    cfg.beta = 0.9;
    FlowState s{0.0, data.U0, data.U0};
    const auto [du, db] = rhs_full(s, cfg);
    // db must be exactly the dissipation term
    SpectralField expected =
        apply_radial_multiplier(data.U0, RadialMultiplier::lambda_power(cfg.beta));
    expected *= -cfg.nu;
    REQUIRE(rel_diff(db, expected) < 1e-13);
}

TEST_CASE("rhs_full: zero magnetic field reduces to fractional Navier-Stokes") {
    const SpectralField u = random_solenoidal(d2, 8, 11);
    SolverConfig cfg;
    cfg.alpha = 1.2;
    FlowState s{0.0, u, SpectralField(d2, 2)};
    const auto [du, db] = rhs_full(s, cfg);
    REQUIRE(db.max_abs() == 0.0);

    SpectralField adv = multiply_dealiased(u, u, Contraction::Advection);
    SpectralField expected = leray_project(adv);
    expected *= -1.0;
    expected.axpy(-cfg.mu, apply_radial_multiplier(u, RadialMultiplier::lambda_power(cfg.alpha)));
    REQUIRE(rel_diff(du, expected) < 1e-13);
}

TEST_CASE("rhs_full: unit-shell dissipation is -u for every alpha") {
    // u = (sin(x2 / L * L), 0) built on the exact unit shell
    SpectralField u(d2, 2);
    const int l = static_cast<int>(d2.scale);
    u.at(0, flat_index(d2, {0, l, 0})) = Complex{0.0, -0.5};
    u.at(0, flat_index(d2, {0, -l, 0})) = Complex{0.0, 0.5};
    for (double alpha : {0.3, 1.0, 2.0}) {
        SolverConfig cfg;
        cfg.alpha = alpha;
        cfg.mu = 1.0;
        FlowState s{0.0, u, SpectralField(d2, 2)};
        const auto [du, db] = rhs_full(s, cfg);
        // u.grad u = 0 for this mode, so du = -u exactly
        SpectralField minus_u = u;
        minus_u *= -1.0;
        REQUIRE(rel_diff(du, minus_u) < 1e-13);
    }
}

TEST_CASE("rhs_full rejects non-solenoidal input") {
    SpectralField grad(d2, 2);
    grad.at(0, flat_index(d2, {3, 0, 0})) = Complex{1.0, 0.0};
    grad.at(0, flat_index(d2, {-3, 0, 0})) = Complex{1.0, 0.0};
    SolverConfig cfg;
    REQUIRE_THROWS_AS(rhs_full(FlowState{0.0, grad, SpectralField(d2, 2)}, cfg),
                      std::invalid_argument);
}

TEST_CASE("rhs_perturbation at v = c = 0 yields P(g - f) and -h") {
    const InitialData data = data_2d();
    const BackgroundState bg{data.U0, 1.0, 0.5, 1.3, 0.7};
    SolverConfig cfg;
    cfg.alpha = bg.alpha;
    cfg.beta = bg.beta;
    cfg.mu = bg.mu;
    cfg.nu = bg.nu;
    const double t = 0.4;

    FlowState s{t, SpectralField(d2, 2), SpectralField(d2, 2)};
    const auto [dv, dc] = rhs_perturbation(s, bg, cfg);

    const auto [f, h] = forcing_terms(bg, t);
    SpectralField expected_v = leray_project(source_g(bg, t) - f);
    REQUIRE(rel_diff(dv, expected_v) < 1e-12);
    SpectralField expected_c = h;
    expected_c *= -1.0;
    REQUIRE(rel_diff(dc, expected_c) < 1e-12);
}

TEST_CASE("rhs_perturbation with zero background reduces to rhs_full") {
    const SpectralField v = random_solenoidal(d2, 7, 21);
    const SpectralField c = random_solenoidal(d2, 7, 22);
    SolverConfig cfg;
    cfg.alpha = 1.1;
    cfg.beta = 0.8;
    cfg.mu = 1.2;
    cfg.nu = 0.9;
    const BackgroundState bg{SpectralField(d2, 2), cfg.mu, cfg.nu, cfg.alpha, cfg.beta};
    FlowState s{0.0, v, c};
    const auto [dv, dc] = rhs_perturbation(s, bg, cfg);
    const auto [du, db] = rhs_full(s, cfg);
    REQUIRE(rel_diff(dv, du) < 1e-13);
    REQUIRE(rel_diff(dc, db) < 1e-13);
}

TEST_CASE("rhs consistency: perturbation equals full minus background tendency") {
    const InitialData data = data_2d();
    const BackgroundState bg{data.U0, 1.0, 0.6, 1.5, 0.9};
    SolverConfig cfg;
    cfg.alpha = bg.alpha;
    cfg.beta = bg.beta;
    cfg.mu = bg.mu;
    cfg.nu = bg.nu;
    const double t = 0.3;

    SpectralField v = random_solenoidal(d2, 12, 31);
    v *= 0.05;
    SpectralField c = random_solenoidal(d2, 12, 32);
    c *= 0.05;

    const auto [bu, bb] = background_at(bg, t);
    const FlowState pert{t, v, c};
    const FlowState full{t, bu + v, bb + c};

    const auto [dv, dc] = rhs_perturbation(pert, bg, cfg);
    auto [du, db] = rhs_full(full, cfg);
    // background tendency is (-mu U, -nu B)
    du.axpy(bg.mu, bu);
    db.axpy(bg.nu, bb);

    const double scale = h3_norm(full.velocity) + h3_norm(full.magnetic);
    REQUIRE(l2_norm(dv - du) < 1e-10 * scale);
    REQUIRE(l2_norm(dc - db) < 1e-10 * scale);
}

TEST_CASE("cfl_dt: zero fields return the cap, doubling speed halves dt") {
    DtPolicy policy;
    policy.safety = 0.5;
    policy.max_dt = 0.05;
    const SpectralField zero(d2, 2);
    REQUIRE(cfl_dt(zero, zero, policy) == policy.max_dt);

    SpectralField u = random_solenoidal(d2, 6, 41);
    u *= 50.0 / linf_norm(u);  // well below the cap regime
    SpectralField u2 = u;
    u2 *= 2.0;
    const double dt1 = cfl_dt(u, zero, policy);
    const double dt2 = cfl_dt(u2, zero, policy);
    REQUIRE(dt2 == Catch::Approx(0.5 * dt1).epsilon(1e-6));
}

TEST_CASE("unforced decay: monotone energy, solenoidality, balance to 0.1%") {
    DomainSpec d{2, 1.0, 64, 2.0 / 3.0};
    DataSpec spec;
    spec.epsilon = 0.1;
    spec.v0_perturbation = PerturbationSpec{0.5, 5, 71};
    spec.c0_perturbation = PerturbationSpec{0.5, 5, 72};
    // zero background: U0 = 0 via explicit zero amplitude field
    InitialData data;
    data.U0 = SpectralField(d, 2);
    data.a0 = SpectralField(d, 1);
    data.v0 = specmhd::testing::random_solenoidal(d, 5, 71);
    data.v0 *= 1.0 / l2_norm(data.v0);
    data.c0 = specmhd::testing::random_solenoidal(d, 5, 72);
    data.c0 *= 1.0 / l2_norm(data.c0);
    data.u0 = data.v0;
    data.b0 = data.c0;

    SolverConfig cfg;
    cfg.formulation = Formulation::Full;
    cfg.t_end = 1.0;
    cfg.dt_policy.kind = DtPolicy::Kind::Fixed;
    cfg.dt_policy.fixed_dt = 5e-3;
    cfg.record_every = 0.02;

    const RunResult result = run_simulation(d, data, cfg, spec.epsilon);
    REQUIRE(result.records.size() == 51);
    for (std::size_t i = 1; i < result.records.size(); ++i)
        REQUIRE(result.records[i].l2_energy < result.records[i - 1].l2_energy);

    REQUIRE(energy_balance(result.records).max_relative_residual < 1e-3);
}

TEST_CASE("formulation equivalence on a short nonlinear run") {
    DataSpec spec;
    spec.epsilon = 0.1;
    spec.v0_perturbation = PerturbationSpec{0.2, 5, 81};
    spec.c0_perturbation = PerturbationSpec{0.15, 5, 82};
    const InitialData data = build_data_2d(spec, d2);

    const double t_end = 0.5, dt = 5e-3;
    const RunResult full =
        run_simulation(d2, data, config_2d(Formulation::Full, t_end, dt), spec.epsilon,
                       RunChecksConfig{1e-2, 10.0, false, 1e6});
    const RunResult pert =
        run_simulation(d2, data, config_2d(Formulation::Perturbation, t_end, dt), spec.epsilon,
                       RunChecksConfig{1e-2, 10.0, false, 1e6});

    // h3_v of the full run is derived from u - U; both runs must agree
    const auto& rf = full.records.back();
    const auto& rp = pert.records.back();
    REQUIRE(rf.h3_v == Catch::Approx(rp.h3_v).epsilon(1e-6));
    REQUIRE(rf.l2_energy == Catch::Approx(rp.l2_energy).epsilon(1e-8));
}

TEST_CASE("stepper shows 4th-order self-convergence on a nonlinear problem") {
    DomainSpec d{2, 1.0, 64, 2.0 / 3.0};
    InitialData data;
    data.U0 = SpectralField(d, 2);
    data.a0 = SpectralField(d, 1);
    data.v0 = specmhd::testing::random_solenoidal(d, 5, 91);
    data.v0 *= 1.0 / l2_norm(data.v0);
    data.c0 = specmhd::testing::random_solenoidal(d, 5, 92);
    data.c0 *= 1.0 / l2_norm(data.c0);
    data.u0 = data.v0;
    data.b0 = data.c0;

    auto terminal = [&](double dt) {
        SolverConfig cfg;
        cfg.formulation = Formulation::Full;
        cfg.t_end = 0.25;
        cfg.dt_policy.kind = DtPolicy::Kind::Fixed;
        cfg.dt_policy.fixed_dt = dt;
        cfg.record_every = 0.25;
        IntegratingFactorRk4 stepper(d, cfg);
        FlowState s{0.0, data.u0, data.b0};
        FullRhs rhs(d);
        const int steps = static_cast<int>(std::round(cfg.t_end / dt));
        for (int i = 0; i < steps; ++i) s = stepper.step(s, rhs, dt);
        return s;
    };

    const FlowState s1 = terminal(0.025);
    const FlowState s2 = terminal(0.0125);
    const FlowState s3 = terminal(0.00625);
    const double e12 = l2_norm(s1.velocity - s2.velocity) + l2_norm(s1.magnetic - s2.magnetic);
    const double e23 = l2_norm(s2.velocity - s3.velocity) + l2_norm(s2.magnetic - s3.magnetic);
    REQUIRE(e12 / e23 >= 12.0);
}

TEST_CASE("non-finite coefficients abort the step") {
    SolverConfig cfg;
    const NonstiffRhs nan_rhs = [](double, const SpectralField& v, const SpectralField& m) {
        SpectralField bad(v.domain(), v.components());
        bad.at(0, 1) = Complex{std::nan(""), 0.0};
        return std::pair{bad, SpectralField(m.domain(), m.components())};
    };
    IntegratingFactorRk4 stepper(d2, cfg);
    FlowState s{0.0, random_solenoidal(d2, 4, 3), SpectralField(d2, 2)};
    REQUIRE_THROWS_AS(stepper.step(s, nan_rhs, 0.01), BlowupError);
}

TEST_CASE("run aborts when the blow-up guard trips") {
    const InitialData data = data_2d();
    SolverConfig cfg = config_2d(Formulation::Perturbation, 1.0, 0.01);
    RunChecksConfig checks;
    checks.blowup_factor = 1e-3;  // guard below the background scale
    checks.background_ratios = false;
    REQUIRE_THROWS_AS(run_simulation(d2, data, cfg, 0.1, checks), BlowupError);
}
