#include <catch2/catch_amalgamated.hpp>

#include "specmhd/config.hpp"

using namespace specmhd;

TEST_CASE("minimal 2D config parses with defaults filled") {
    const RunConfig cfg = parse_config_text("[domain]\ndim = 2\n", "<test>");
    REQUIRE(cfg.domain.dim == 2);
    REQUIRE(cfg.domain.points_per_axis == 256);
    REQUIRE(cfg.domain.scale == 20.0);
    REQUIRE(cfg.data.epsilon == 0.1);
    REQUIRE(cfg.solver.mu == 1.0);
    REQUIRE(cfg.solver.formulation == Formulation::Perturbation);
    REQUIRE(cfg.checks.c_envelope == 10.0);
    REQUIRE(cfg.output_dir == "out");
}

TEST_CASE("coarse lattice for the annulus is rejected with both values named") {
    const std::string text = "[domain]\nscale = 5\n[data]\nepsilon = 0.1\n";
    REQUIRE_THROWS_WITH(parse_config_text(text, "<test>"),
                        Catch::Matchers::ContainsSubstring("1/L = 0.2") &&
                            Catch::Matchers::ContainsSubstring("epsilon = 0.1"));
}

TEST_CASE("dealias band too small for the annulus is rejected") {
    // N = 64, L = 20: cut/L ~ 1.05 < 2.2
    const std::string text = "[domain]\npoints_per_axis = 64\n";
    REQUIRE_THROWS_WITH(parse_config_text(text, "<test>"),
                        Catch::Matchers::ContainsSubstring("dealias"));
}

TEST_CASE("criterion-scale 3D configuration is accepted") {
    const std::string text =
        "[domain]\ndim = 3\nscale = 4\npoints_per_axis = 64\n[data]\nepsilon = 0.25\n"
        "[solver]\nt_end = 20\n";
    const RunConfig cfg = parse_config_text(text, "<test>");
    REQUIRE(cfg.domain.dim == 3);
    REQUIRE(annulus_mode_count(cfg.domain, cfg.data.epsilon) > 0);
}

TEST_CASE("parse errors carry line information") {
    REQUIRE_THROWS_WITH(parse_config_text("[domain]\ndim 2\n", "cfg.toml"),
                        Catch::Matchers::ContainsSubstring("cfg.toml:2"));
    REQUIRE_THROWS_WITH(parse_config_text("[domain\ndim = 2\n", "cfg.toml"),
                        Catch::Matchers::ContainsSubstring("cfg.toml:1"));
    REQUIRE_THROWS_WITH(parse_config_text("[domain]\ndim = two\n", "cfg.toml"),
                        Catch::Matchers::ContainsSubstring("cfg.toml:2"));
}

TEST_CASE("unknown keys are rejected") {
    REQUIRE_THROWS_WITH(parse_config_text("[domain]\ndimension = 2\n", "<test>"),
                        Catch::Matchers::ContainsSubstring("unknown key"));
}

TEST_CASE("config serialization round-trips to an equal config") {
    RunConfig cfg = parse_config_text("[domain]\ndim = 2\n", "<test>");
    cfg.data.epsilon = 0.05;
    cfg.domain.scale = 40.0;
    cfg.solver.alpha = 1.37;
    cfg.solver.dt_policy.kind = DtPolicy::Kind::Fixed;
    cfg.solver.dt_policy.fixed_dt = 0.0123;
    cfg.seed = 987654321;
    cfg.checks.background_ratios = false;
    cfg.output_dir = "elsewhere";

    const RunConfig back = parse_config_text(serialize_config(cfg), "<roundtrip>");
    REQUIRE(serialize_config(back) == serialize_config(cfg));
    REQUIRE(back.data.epsilon == cfg.data.epsilon);
    REQUIRE(back.solver.alpha == cfg.solver.alpha);
    REQUIRE(back.solver.dt_policy.fixed_dt == cfg.solver.dt_policy.fixed_dt);
    REQUIRE(back.seed == cfg.seed);
    REQUIRE(back.checks.background_ratios == false);
    REQUIRE(back.output_dir == "elsewhere");
}

TEST_CASE("overrides are applied after parsing") {
    const RunConfig cfg = parse_config_text("[domain]\ndim = 2\n", "<test>",
                                            {"domain.points_per_axis=512", "data.epsilon=0.05",
                                             "solver.formulation=\"full\"", "seed=42"});
    REQUIRE(cfg.domain.points_per_axis == 512);
    REQUIRE(cfg.data.epsilon == 0.05);
    REQUIRE(cfg.solver.formulation == Formulation::Full);
    REQUIRE(cfg.seed == 42);

    REQUIRE_THROWS_AS(parse_config_text("", "<t>", {"no_equals_sign"}), ConfigError);
    REQUIRE_THROWS_AS(apply_overrides(cfg, {"data.epsilon=0.4"}), ConfigError);
}

TEST_CASE("validation lists every violation at once") {
    RunConfig cfg;
    cfg.domain.scale = 5.0;        // too coarse for eps = 0.1
    cfg.domain.points_per_axis = 30;  // dealias band too small as well
    const auto errors = validate_config(cfg);
    REQUIRE(errors.size() >= 2);
}
