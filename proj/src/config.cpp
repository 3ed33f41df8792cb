#include "galilei/config.hpp"

#include "galilei/io.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace galilei::config {

ConfigError::ConfigError(Kind kind, std::string field, const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? field + " (line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + "): " + message
                                  : field + ": " + message),
      kind_(kind),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

namespace {

using Kind = ConfigError::Kind;

struct Field {
    const char* section;
    const char* key;
    std::function<std::string(const ExperimentConfig&)> write;
    /// Returns an error description, empty on success.
    std::function<std::string(ExperimentConfig&, const std::string&)> read;
};

template <typename T>
std::optional<T> parse_int(const std::string& s) {
    T v{};
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
    return v;
}

Field real(const char* section, const char* key, double ExperimentConfig::*member) {
    return {section, key, [member](const ExperimentConfig& c) { return io::format_double(c.*member); },
            [member](ExperimentConfig& c, const std::string& s) -> std::string {
                const auto v = io::parse_double(s);
                if (!v) return "expected a number, got '" + s + "'";
                c.*member = *v;
                return {};
            }};
}

template <typename T>
Field integer(const char* section, const char* key, T ExperimentConfig::*member) {
    return {section, key, [member](const ExperimentConfig& c) { return std::to_string(c.*member); },
            [member](ExperimentConfig& c, const std::string& s) -> std::string {
                const auto v = parse_int<T>(s);
                if (!v) return "expected an integer, got '" + s + "'";
                c.*member = *v;
                return {};
            }};
}

template <typename E>
Field choice(const char* section, const char* key, E ExperimentConfig::*member,
             std::optional<E> (*parse)(const std::string&), const char* allowed) {
    return {section, key, [member](const ExperimentConfig& c) { return std::string(models::to_string(c.*member)); },
            [member, parse, allowed](ExperimentConfig& c, const std::string& s) -> std::string {
                const auto v = parse(s);
                if (!v) return "'" + s + "' is not one of " + allowed;
                c.*member = *v;
                return {};
            }};
}

const std::vector<Field>& schema() {
    using C = ExperimentConfig;
    static const std::vector<Field> fields{
        choice("run", "experiment", &C::experiment, models::parse_experiment,
               "plain, dnr, dnr_eraser, modified_dnr, own_goal"),
        choice("run", "model", &C::model, models::parse_model, "sew, dnr, galilei"),
        choice("run", "eraser", &C::eraser, models::parse_eraser, "none, relabel, collapse"),
        choice("run", "own_goal_cavity", &C::own_goal_cavity, models::parse_own_goal_cavity,
               "none, coherent, zero_photon"),
        integer("run", "seed", &C::seed),
        integer("grid", "dim", &C::dim),
        integer("grid", "points_per_axis", &C::points_per_axis),
        real("grid", "spacing", &C::spacing),
        real("physics", "mass", &C::mass),
        real("physics", "time_unit_s", &C::time_unit_s),
        real("physics", "mw_frequency_hz", &C::mw_frequency_hz),
        real("physics", "cavity_frequency_hz", &C::cavity_frequency_hz),
        real("physics", "reflectivity", &C::reflectivity),
        real("physics", "bragg_kick", &C::bragg_kick),
        real("physics", "pulse_angle", &C::pulse_angle),
        real("physics", "flight_time_s", &C::flight_time_s),
        real("physics", "u_offset", &C::u_offset),
        real("physics", "envelope_width_cells", &C::envelope_width_cells),
        integer("verify", "cocycle_triples", &C::cocycle_triples),
        integer("verify", "composition_pairs", &C::composition_pairs),
    };
    return fields;
}

const Field* find_field(const std::string& section, const std::string& key) {
    for (const auto& f : schema())
        if (section == f.section && key == f.key) return &f;
    return nullptr;
}

bool known_section(const std::string& section) {
    for (const auto& f : schema())
        if (section == f.section) return true;
    return false;
}

void require(bool ok, const char* field, const std::string& constraint) {
    if (!ok) throw ConfigError(Kind::validation, field, "must satisfy " + constraint);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const ExperimentConfig& c) {
    require(c.dim >= 1 && c.dim <= 3, "grid.dim", "1 <= dim <= 3");
    require(c.points_per_axis >= 2 && (c.points_per_axis & (c.points_per_axis - 1)) == 0, "grid.points_per_axis",
            "a power of two >= 2");
    require(std::pow(static_cast<double>(c.points_per_axis), c.dim) <= 16777216.0, "grid.points_per_axis",
            "points_per_axis^dim <= 2^24");
    require(finite(c.spacing) && c.spacing > 0.0, "grid.spacing", "spacing > 0");
    require(finite(c.mass) && c.mass > 0.0, "physics.mass", "mass > 0");
    require(finite(c.time_unit_s) && c.time_unit_s > 0.0, "physics.time_unit_s", "time_unit_s > 0");
    require(finite(c.mw_frequency_hz) && c.mw_frequency_hz > 0.0, "physics.mw_frequency_hz", "frequency > 0");
    require(finite(c.cavity_frequency_hz) && c.cavity_frequency_hz > 0.0, "physics.cavity_frequency_hz",
            "frequency > 0");
    require(c.reflectivity >= 0.0 && c.reflectivity <= 1.0, "physics.reflectivity", "reflectivity in [0,1]");
    require(finite(c.bragg_kick) && c.bragg_kick > 0.0, "physics.bragg_kick", "bragg_kick > 0");
    require(finite(c.pulse_angle), "physics.pulse_angle", "a finite angle");
    require(finite(c.flight_time_s) && c.flight_time_s >= 0.0, "physics.flight_time_s", "flight_time_s >= 0");
    require(finite(c.u_offset), "physics.u_offset", "a finite energy");
    require(finite(c.envelope_width_cells) && c.envelope_width_cells > 0.0, "physics.envelope_width_cells",
            "envelope_width_cells > 0");
    require(c.cocycle_triples >= 1, "verify.cocycle_triples", "cocycle_triples >= 1");
    require(c.composition_pairs >= 1, "verify.composition_pairs", "composition_pairs >= 1");
}

void set_field(ExperimentConfig& cfg, const std::string& section, const std::string& key, const std::string& text) {
    const Field* f = find_field(section, key);
    if (!f) throw ConfigError(Kind::unknown_key, section + "." + key, "unknown key");
    if (auto err = f->read(cfg, text); !err.empty()) throw ConfigError(Kind::validation, section + "." + key, err);
}

ExperimentConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(Kind::syntax, "document", e.msg, e.mark.line + 1, e.mark.column + 1);
    }
    ExperimentConfig cfg;
    if (root.IsNull()) {
        validate(cfg);
        return cfg;
    }
    auto where = [](const YAML::Node& n) { return std::pair{n.Mark().line + 1, n.Mark().column + 1}; };
    if (!root.IsMap()) {
        const auto [l, c] = where(root);
        throw ConfigError(Kind::syntax, "document", "top level must be a mapping of sections", l, c);
    }
    for (const auto& sec : root) {
        const std::string section = sec.first.Scalar();
        const auto [sl, sc] = where(sec.first);
        if (!known_section(section)) throw ConfigError(Kind::unknown_key, section, "unknown section", sl, sc);
        if (sec.second.IsNull()) continue;
        if (!sec.second.IsMap()) throw ConfigError(Kind::syntax, section, "section must be a mapping", sl, sc);
        for (const auto& entry : sec.second) {
            const std::string key = entry.first.Scalar();
            const std::string name = section + "." + key;
            const auto [kl, kc] = where(entry.first);
            const Field* f = find_field(section, key);
            if (!f) throw ConfigError(Kind::unknown_key, name, "unknown key", kl, kc);
            if (!entry.second.IsScalar()) throw ConfigError(Kind::validation, name, "expected a scalar", kl, kc);
            if (auto err = f->read(cfg, entry.second.Scalar()); !err.empty()) {
                const auto [vl, vc] = where(entry.second);
                throw ConfigError(Kind::validation, name, err, vl, vc);
            }
        }
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(Kind::validation, path, "cannot open config file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : schema()) out.emplace_back(std::string(f.section) + "." + f.key, f.write(cfg));
    return out;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    std::string current;
    for (const auto& f : schema()) {
        if (current != f.section) {
            current = f.section;
            out += (out.empty() ? "" : "\n") + current + ":\n";
        }
        out += std::string("  ") + f.key + ": " + f.write(cfg) + "\n";
    }
    return out;
}

models::Params to_params(const ExperimentConfig& cfg) {
    validate(cfg);
    models::Params p;
    p.grid = {cfg.dim, cfg.points_per_axis, cfg.spacing};
    p.mass = cfg.mass;
    const double splitting = 2.0 * std::numbers::pi * cfg.mw_frequency_hz * cfg.time_unit_s;
    p.levels = {0.0, splitting, splitting + 1.0e6};
    p.reflectivity = cfg.reflectivity;
    p.bragg_kick = cfg.bragg_kick;
    p.pulse_angle = cfg.pulse_angle;
    p.flight_time = cfg.flight_time_s / cfg.time_unit_s;
    p.u_offset = cfg.u_offset;
    p.envelope_width_cells = cfg.envelope_width_cells;
    p.own_goal_cavity = cfg.own_goal_cavity;
    return p;
}

verify::Options to_verify_options(const ExperimentConfig& cfg) {
    validate(cfg);
    verify::Options o;
    o.grid = {cfg.dim, cfg.points_per_axis, cfg.spacing};
    o.mass = cfg.mass;
    o.seed = cfg.seed;
    o.cocycle_triples = cfg.cocycle_triples;
    o.composition_pairs = cfg.composition_pairs;
    return o;
}

}  // namespace galilei::config
