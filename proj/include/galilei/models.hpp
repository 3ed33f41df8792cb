#pragma once

// The three coherence models (SEW detector entanglement, DNR internal
// state, Galilei direct sum) and the experiment runners built on them.

#include "galilei/interferometer.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace galilei::models {

enum class Model { sew, dnr, galilei };
enum class EraserPolicy { none, relabel, collapse };
enum class Experiment { plain, dnr, dnr_eraser, modified_dnr, own_goal };
/// Own-goal cavity setting; `none` removes the cavity.
enum class OwnGoalCavity { none, coherent, zero_photon };
/// What performed a which-way marking.
enum class Marker { internal_state, zero_photon_cavity, coherent_cavity };

const char* to_string(Model m);
const char* to_string(EraserPolicy p);
const char* to_string(Experiment e);
const char* to_string(OwnGoalCavity c);
std::optional<Model> parse_model(const std::string& s);
std::optional<EraserPolicy> parse_eraser(const std::string& s);
std::optional<Experiment> parse_experiment(const std::string& s);
std::optional<OwnGoalCavity> parse_own_goal_cavity(const std::string& s);

/// Natural-unit parameters (hbar = 1) for every runner.
struct Params {
    rep::MomentumGrid grid{2, 256, 1.0 / 16.0};
    double mass = 1.0;
    interf::LevelScheme levels;
    double reflectivity = 0.5;
    /// Bragg kick per crystal (momentum units); overlap pairs differ by twice this.
    double bragg_kick = 1.0;
    double pulse_angle = 1.5707963267948966;
    double flight_time = 0.5;
    /// Common zero of internal energy.
    double u_offset = 0.0;
    double envelope_width_cells = 8.0;
    OwnGoalCavity own_goal_cavity = OwnGoalCavity::coherent;

    double fringe_period() const;
};

/// Screen-side coherence rule plus cavity hook for one model.
interf::Rules rules_for(Model model, const interf::LevelScheme& levels);

struct Marking {
    std::vector<std::string> arms;
    interf::Transition transition{interf::Level::lvl2, interf::Level::lvl3};
    Marker marker = Marker::internal_state;
    int cavity = 1;
};

/// SEW: zero-photon cavities write a detector record.
/// DNR: nothing to store, the internal state is the record.
/// GALILEI: the part of each marked mode now in `transition.to` moves to a
/// freshly allocated summand whose label sits at that level.
interf::BeamEnsemble which_way_marking(const interf::BeamEnsemble& ens, Model model, const Marking& marking);

/// Pi pulse on `target`, then the model's bookkeeping for the erased mark.
interf::BeamEnsemble apply_eraser(const interf::BeamEnsemble& ens, Model model, EraserPolicy policy,
                                  const std::string& target);

/// Merge summands carrying identical labels into the lowest such index.
interf::BeamEnsemble collapse_equal_labels(const interf::BeamEnsemble& ens);

struct SectorWeight {
    std::string sector;
    double weight = 0.0;

    bool operator==(const SectorWeight&) const = default;
};

struct PredictionReport {
    Experiment experiment = Experiment::dnr;
    Model model = Model::galilei;
    EraserPolicy eraser = EraserPolicy::none;
    std::vector<std::pair<std::string, double>> visibilities;
    std::vector<SectorWeight> sector_census;
    /// Own-goal only: the rival model's visibility, from its own run.
    std::optional<std::pair<Model, double>> rival;

    double visibility(const std::string& pair) const;
    bool operator==(const PredictionReport&) const = default;
};

struct RunResult {
    PredictionReport report;
    std::vector<interf::IntensityProfile> profiles;
    interf::BeamEnsemble final;
};

interf::BeamEnsemble make_source(const Params& params, const std::string& path, interf::Level level);

/// Census of |amplitude|^2 per coherence sector of the given model.
std::vector<SectorWeight> sector_census(const interf::BeamEnsemble& ens, Model model);

/// DNR-apparatus experiments (plain, dnr, dnr_eraser, modified_dnr).
RunResult run_dnr(Model model, EraserPolicy eraser, Experiment experiment, const Params& params);

RunResult run_own_goal(Model model, const Params& params);

RunResult run_experiment(Experiment experiment, Model model, EraserPolicy eraser, const Params& params);

/// Coefficients of (D x |2>, E x |3>, F x |2>, G x |3>) after the pulse and
/// crystal sequence with no free flight.
std::array<interf::complex, 4> dnr_coefficients(const Params& params);

struct MatrixRow {
    Experiment experiment;
    EraserPolicy eraser;
    std::string pair;
    /// Indexed by Model: sew, dnr, galilei.
    std::array<double, 3> visibility{};
};

std::vector<MatrixRow> prediction_matrix(const Params& params);

}  // namespace galilei::models
