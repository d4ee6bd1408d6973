// Run configuration: a single TOML-style key-value document with tables
// mirroring the type structure, command-line overrides applied after file
// parsing, and cross-validation of every invariant that couples the tables.

#ifndef SPECMHD_CONFIG_HPP
#define SPECMHD_CONFIG_HPP

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "specmhd/initial_data.hpp"
#include "specmhd/solver.hpp"

namespace specmhd {

struct ChecksConfig {
    double c_envelope = 10.0;
    double eta_factor = 1e-2;    // eta = eta_factor * |U0|_H3^2 when eta_absolute == 0
    double eta_absolute = 0.0;   // > 0 overrides the factor rule
    double snapshot_every = 0.0; // 0 disables snapshot output
    bool background_ratios = true;
};

struct RunConfig {
    DomainSpec domain{};
    DataSpec data{};
    SolverConfig solver{};
    ChecksConfig checks{};
    std::string output_dir = "out";
    std::uint64_t seed = 1;
};

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct ParsedDoc {
    // table -> key -> (value, line)
    std::map<std::string, std::map<std::string, std::pair<std::string, int>>> tables;
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline ParsedDoc parse_document(std::istream& in, const std::string& name) {
    ParsedDoc doc;
    std::string table;  // keys before the first header land in ""
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(name + ":" + std::to_string(lineno) +
                                  ": malformed table header '" + t + "'");
            table = trim(t.substr(1, t.size() - 2));
            if (table.empty())
                throw ConfigError(name + ":" + std::to_string(lineno) + ": empty table name");
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(name + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(name + ":" + std::to_string(lineno) + ": empty key or value");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        doc.tables[table][key] = {value, lineno};
    }
    return doc;
}

class Extractor {
  public:
    Extractor(ParsedDoc doc, std::string name) : doc_(std::move(doc)), name_(std::move(name)) {}

    double number(const std::string& table, const std::string& key, double fallback) {
        const auto* e = take(table, key);
        if (!e) return fallback;
        char* end = nullptr;
        const double v = std::strtod(e->first.c_str(), &end);
        if (end == e->first.c_str() || *end != '\0')
            throw ConfigError(where(table, key, e->second) + ": expected a number, got '" +
                              e->first + "'");
        return v;
    }

    int integer(const std::string& table, const std::string& key, int fallback) {
        const double v = number(table, key, fallback);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError(name_ + ": [" + table + "] " + key + " must be an integer");
        return i;
    }

    std::uint64_t unsigned64(const std::string& table, const std::string& key,
                             std::uint64_t fallback) {
        const auto* e = take(table, key);
        if (!e) return fallback;
        try {
            return std::stoull(e->first);
        } catch (const std::exception&) {
            throw ConfigError(where(table, key, e->second) + ": expected an unsigned integer");
        }
    }

    bool boolean(const std::string& table, const std::string& key, bool fallback) {
        const auto* e = take(table, key);
        if (!e) return fallback;
        if (e->first == "true") return true;
        if (e->first == "false") return false;
        throw ConfigError(where(table, key, e->second) + ": expected true or false");
    }

    std::string text(const std::string& table, const std::string& key,
                     const std::string& fallback) {
        const auto* e = take(table, key);
        return e ? e->first : fallback;
    }

    void reject_unknown() const {
        for (const auto& [table, entries] : doc_.tables)
            for (const auto& [key, value] : entries)
                if (!consumed_.count(table + "." + key))
                    throw ConfigError(where(table, key, value.second) + ": unknown key '" +
                                      (table.empty() ? key : table + "." + key) + "'");
    }

  private:
    const std::pair<std::string, int>* take(const std::string& table, const std::string& key) {
        consumed_.insert(table + "." + key);
        auto t = doc_.tables.find(table);
        if (t == doc_.tables.end()) return nullptr;
        auto k = t->second.find(key);
        if (k == t->second.end()) return nullptr;
        return &k->second;
    }

    std::string where(const std::string& table, const std::string& key, int line) const {
        return name_ + ":" + std::to_string(line) + " ([" + table + "] " + key + ")";
    }

    ParsedDoc doc_;
    std::string name_;
    std::set<std::string> consumed_;
};

}  // namespace detail

inline RunConfig config_from_document(detail::ParsedDoc doc, const std::string& name) {
    detail::Extractor ex(std::move(doc), name);
    RunConfig cfg;

    cfg.domain.dim = ex.integer("domain", "dim", cfg.domain.dim);
    cfg.domain.scale = ex.number("domain", "scale", cfg.domain.scale);
    cfg.domain.points_per_axis = ex.integer("domain", "points_per_axis", cfg.domain.points_per_axis);
    cfg.domain.dealias_fraction = ex.number("domain", "dealias_fraction", cfg.domain.dealias_fraction);

    cfg.data.epsilon = ex.number("data", "epsilon", cfg.data.epsilon);
    const std::string law = ex.text("data", "amplitude_law", "paper");
    if (law == "paper") {
        cfg.data.amplitude_law = AmplitudeLaw::Paper;
    } else if (law == "explicit") {
        cfg.data.amplitude_law = AmplitudeLaw::Explicit;
    } else {
        throw ConfigError(name + ": [data] amplitude_law must be \"paper\" or \"explicit\", got \"" +
                          law + "\"");
    }
    cfg.data.amplitude_A = ex.number("data", "amplitude_A", cfg.data.amplitude_A);
    cfg.data.bump_sharpness = ex.number("data", "bump_sharpness", cfg.data.bump_sharpness);
    cfg.data.v0_perturbation.h3_amplitude =
        ex.number("data", "v0_amplitude", cfg.data.v0_perturbation.h3_amplitude);
    cfg.data.v0_perturbation.band = ex.integer("data", "v0_band", cfg.data.v0_perturbation.band);
    cfg.data.v0_perturbation.seed = ex.unsigned64("data", "v0_seed", cfg.data.v0_perturbation.seed);
    cfg.data.c0_perturbation.h3_amplitude =
        ex.number("data", "c0_amplitude", cfg.data.c0_perturbation.h3_amplitude);
    cfg.data.c0_perturbation.band = ex.integer("data", "c0_band", cfg.data.c0_perturbation.band);
    cfg.data.c0_perturbation.seed = ex.unsigned64("data", "c0_seed", cfg.data.c0_perturbation.seed);

    cfg.solver.alpha = ex.number("solver", "alpha", cfg.solver.alpha);
    cfg.solver.beta = ex.number("solver", "beta", cfg.solver.beta);
    cfg.solver.mu = ex.number("solver", "mu", cfg.solver.mu);
    cfg.solver.nu = ex.number("solver", "nu", cfg.solver.nu);
    const std::string form = ex.text("solver", "formulation", "perturbation");
    if (form == "perturbation") {
        cfg.solver.formulation = Formulation::Perturbation;
    } else if (form == "full") {
        cfg.solver.formulation = Formulation::Full;
    } else {
        throw ConfigError(name + ": [solver] formulation must be \"perturbation\" or \"full\"");
    }
    cfg.solver.t_end = ex.number("solver", "t_end", cfg.solver.t_end);
    const std::string dt_kind = ex.text("solver", "dt_kind", "cfl");
    if (dt_kind == "cfl") {
        cfg.solver.dt_policy.kind = DtPolicy::Kind::Cfl;
    } else if (dt_kind == "fixed") {
        cfg.solver.dt_policy.kind = DtPolicy::Kind::Fixed;
    } else {
        throw ConfigError(name + ": [solver] dt_kind must be \"cfl\" or \"fixed\"");
    }
    cfg.solver.dt_policy.fixed_dt = ex.number("solver", "fixed_dt", cfg.solver.dt_policy.fixed_dt);
    cfg.solver.dt_policy.safety = ex.number("solver", "cfl_safety", cfg.solver.dt_policy.safety);
    cfg.solver.dt_policy.max_dt = ex.number("solver", "max_dt", cfg.solver.dt_policy.max_dt);
    cfg.solver.record_every = ex.number("solver", "record_every", cfg.solver.record_every);

    cfg.checks.c_envelope = ex.number("checks", "c_envelope", cfg.checks.c_envelope);
    cfg.checks.eta_factor = ex.number("checks", "eta_factor", cfg.checks.eta_factor);
    cfg.checks.eta_absolute = ex.number("checks", "eta_absolute", cfg.checks.eta_absolute);
    cfg.checks.snapshot_every = ex.number("checks", "snapshot_every", cfg.checks.snapshot_every);
    cfg.checks.background_ratios =
        ex.boolean("checks", "background_ratios", cfg.checks.background_ratios);

    cfg.output_dir = ex.text("output", "directory", cfg.output_dir);
    cfg.seed = ex.unsigned64("", "seed", cfg.seed);

    ex.reject_unknown();
    return cfg;
}

// Every violated invariant is reported, with the field name and both values.
inline std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> errors;
    auto guard = [&](auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            errors.emplace_back(e.what());
        }
    };
    guard([&] { cfg.domain.validate(); });
    guard([&] { cfg.data.validate(); });
    guard([&] { cfg.solver.validate(); });

    const double eps = cfg.data.epsilon;
    const double inv_l = 1.0 / cfg.domain.scale;
    if (inv_l > eps) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "lattice spacing too coarse for the annulus: 1/L = %.6g > epsilon = %.6g "
                      "(need scale >= %.6g)",
                      inv_l, eps, 1.0 / eps);
        errors.emplace_back(buf);
    }
    const double band = cfg.domain.dealias_cut() / cfg.domain.scale;
    const double needed = 2.0 * (1.0 + eps);
    if (band < needed) {
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "dealias band too small for annulus products: dealias_cut/L = %.6g < "
                      "2(1+epsilon) = %.6g (raise points_per_axis or dealias_fraction)",
                      band, needed);
        errors.emplace_back(buf);
    }
    if (errors.empty() && annulus_mode_count(cfg.domain, eps) == 0)
        errors.emplace_back("annulus [1-eps, 1+eps] contains no lattice modes");
    if (cfg.checks.c_envelope <= 0.0) errors.emplace_back("checks.c_envelope must be positive");
    if (cfg.checks.eta_factor <= 0.0 && cfg.checks.eta_absolute <= 0.0)
        errors.emplace_back("checks: either eta_factor or eta_absolute must be positive");
    return errors;
}

inline void ensure_valid(const RunConfig& cfg, const std::string& name) {
    const auto errors = validate_config(cfg);
    if (!errors.empty()) {
        std::string msg = name + ": configuration invalid:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
}

inline RunConfig parse_config_text(const std::string& text, const std::string& name,
                                   const std::vector<std::string>& overrides = {}) {
    std::istringstream in(text);
    detail::ParsedDoc doc = detail::parse_document(in, name);
    for (const auto& o : overrides) {
        const std::size_t eq = o.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + o + "' is not of the form key=value");
        const std::string dotted = detail::trim(o.substr(0, eq));
        std::string value = detail::trim(o.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        const std::size_t dot = dotted.find('.');
        const std::string table = dot == std::string::npos ? "" : dotted.substr(0, dot);
        const std::string key = dot == std::string::npos ? dotted : dotted.substr(dot + 1);
        if (key.empty() || value.empty())
            throw ConfigError("override '" + o + "' has an empty key or value");
        doc.tables[table][key] = {value, 0};
    }
    RunConfig cfg = config_from_document(std::move(doc), name);
    ensure_valid(cfg, name);
    return cfg;
}

inline RunConfig parse_config(const std::string& path,
                              const std::vector<std::string>& overrides = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("parse_config: cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path, overrides);
}

inline std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    char buf[40];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "seed = " << cfg.seed << "\n\n";
    out << "[domain]\n";
    out << "dim = " << cfg.domain.dim << "\n";
    out << "scale = " << num(cfg.domain.scale) << "\n";
    out << "points_per_axis = " << cfg.domain.points_per_axis << "\n";
    out << "dealias_fraction = " << num(cfg.domain.dealias_fraction) << "\n\n";
    out << "[data]\n";
    out << "epsilon = " << num(cfg.data.epsilon) << "\n";
    out << "amplitude_law = \""
        << (cfg.data.amplitude_law == AmplitudeLaw::Paper ? "paper" : "explicit") << "\"\n";
    out << "amplitude_A = " << num(cfg.data.amplitude_A) << "\n";
    out << "bump_sharpness = " << num(cfg.data.bump_sharpness) << "\n";
    out << "v0_amplitude = " << num(cfg.data.v0_perturbation.h3_amplitude) << "\n";
    out << "v0_band = " << cfg.data.v0_perturbation.band << "\n";
    out << "v0_seed = " << cfg.data.v0_perturbation.seed << "\n";
    out << "c0_amplitude = " << num(cfg.data.c0_perturbation.h3_amplitude) << "\n";
    out << "c0_band = " << cfg.data.c0_perturbation.band << "\n";
    out << "c0_seed = " << cfg.data.c0_perturbation.seed << "\n\n";
    out << "[solver]\n";
    out << "alpha = " << num(cfg.solver.alpha) << "\n";
    out << "beta = " << num(cfg.solver.beta) << "\n";
    out << "mu = " << num(cfg.solver.mu) << "\n";
    out << "nu = " << num(cfg.solver.nu) << "\n";
    out << "formulation = \""
        << (cfg.solver.formulation == Formulation::Perturbation ? "perturbation" : "full")
        << "\"\n";
    out << "t_end = " << num(cfg.solver.t_end) << "\n";
    out << "dt_kind = \"" << (cfg.solver.dt_policy.kind == DtPolicy::Kind::Cfl ? "cfl" : "fixed")
        << "\"\n";
    out << "fixed_dt = " << num(cfg.solver.dt_policy.fixed_dt) << "\n";
    out << "cfl_safety = " << num(cfg.solver.dt_policy.safety) << "\n";
    out << "max_dt = " << num(cfg.solver.dt_policy.max_dt) << "\n";
    out << "record_every = " << num(cfg.solver.record_every) << "\n\n";
    out << "[checks]\n";
    out << "c_envelope = " << num(cfg.checks.c_envelope) << "\n";
    out << "eta_factor = " << num(cfg.checks.eta_factor) << "\n";
    out << "eta_absolute = " << num(cfg.checks.eta_absolute) << "\n";
    out << "snapshot_every = " << num(cfg.checks.snapshot_every) << "\n";
    out << "background_ratios = " << (cfg.checks.background_ratios ? "true" : "false") << "\n\n";
    out << "[output]\n";
    out << "directory = \"" << cfg.output_dir << "\"\n";
    return out.str();
}

// `--set table.key=value`, applied after serialization round-trip.
inline RunConfig apply_overrides(const RunConfig& cfg, const std::vector<std::string>& overrides) {
    return parse_config_text(serialize_config(cfg), "<overrides>", overrides);
}

}  // namespace specmhd

#endif
