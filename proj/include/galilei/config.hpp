#pragma once

// Experiment configuration: a sectioned YAML mapping holding raw SI values,
// converted to natural units (hbar = 1) exactly once by to_params.

#include "galilei/models.hpp"
#include "galilei/verify.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galilei::config {

class ConfigError : public std::runtime_error {
public:
    enum class Kind { syntax, validation, unknown_key };

    /// line and column are 1-based; 0 when not tied to a position.
    ConfigError(Kind kind, std::string field, const std::string& message, int line = 0, int column = 0);

    Kind kind() const { return kind_; }
    const std::string& field() const { return field_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    Kind kind_;
    std::string field_;
    int line_;
    int column_;
};

struct ExperimentConfig {
    // [run]
    models::Experiment experiment = models::Experiment::dnr;
    models::Model model = models::Model::galilei;
    models::EraserPolicy eraser = models::EraserPolicy::none;
    models::OwnGoalCavity own_goal_cavity = models::OwnGoalCavity::coherent;
    std::uint64_t seed = 0;

    // [grid], natural momentum units
    int dim = 2;
    int points_per_axis = 256;
    double spacing = 1.0 / 16.0;

    // [physics]; SI where the name carries a unit suffix
    double mass = 1.0;
    double time_unit_s = 1e-9;
    double mw_frequency_hz = 3.0357e9;
    double cavity_frequency_hz = 21e9;
    double reflectivity = 0.5;
    double bragg_kick = 1.0;
    double pulse_angle = 1.5707963267948966;
    double flight_time_s = 5e-10;
    double u_offset = 0.0;
    double envelope_width_cells = 8.0;

    // [verify]
    int cocycle_triples = 1000;
    int composition_pairs = 200;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError naming the field and the violated constraint.
void validate(const ExperimentConfig& cfg);

/// Empty text gives the defaults. Unknown sections or keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Every field, in schema order, at full round-trip precision.
std::string serialize_config(const ExperimentConfig& cfg);

/// ("section.key", text) for every field, in schema order.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// Sets one field from its text form; throws ConfigError for unknown names or bad values.
void set_field(ExperimentConfig& cfg, const std::string& section, const std::string& key,
               const std::string& text);

models::Params to_params(const ExperimentConfig& cfg);
verify::Options to_verify_options(const ExperimentConfig& cfg);

}  // namespace galilei::config
