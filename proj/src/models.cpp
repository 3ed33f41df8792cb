#include "galilei/models.hpp"

#include "galilei/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

namespace galilei::models {

using interf::BeamEnsemble;
using interf::BeamMode;
using interf::Level;
using interf::SectorKey;

namespace {

constexpr double pi = std::numbers::pi;

std::size_t slot(Level l) { return static_cast<std::size_t>(l); }

Level other(Level l) { return l == Level::lvl2 ? Level::lvl3 : Level::lvl2; }

/// Level as seen by SEW: a cavity-made change is carried by the field.
Level sew_level(const BeamMode& m, Level level) {
    if (!m.sector.cavity_transition) return level;
    const auto& t = *m.sector.cavity_transition;
    if (level == t.to) return t.from;
    if (level == t.from) return t.to;
    return level;
}

void require_paths(const BeamEnsemble& ens, const std::vector<std::string>& paths) {
    for (const auto& p : paths) {
        if (!ens.has_path(p)) throw Error(ErrorCode::UnknownPath, "no beam on path " + p);
    }
}

bool on_any(const BeamMode& m, const std::vector<std::string>& paths) {
    return std::find(paths.begin(), paths.end(), m.path) != paths.end();
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::string& s, const std::array<Enum, N>& all) {
    for (Enum e : all)
        if (s == to_string(e)) return e;
    return std::nullopt;
}

interf::Hook hook(std::string name, std::function<BeamEnsemble(const BeamEnsemble&)> fn) {
    return interf::Hook{std::move(name), std::move(fn)};
}

}  // namespace

const char* to_string(Model m) {
    switch (m) {
        case Model::sew: return "sew";
        case Model::dnr: return "dnr";
        case Model::galilei: return "galilei";
    }
    return "?";
}

const char* to_string(EraserPolicy p) {
    switch (p) {
        case EraserPolicy::none: return "none";
        case EraserPolicy::relabel: return "relabel";
        case EraserPolicy::collapse: return "collapse";
    }
    return "?";
}

const char* to_string(Experiment e) {
    switch (e) {
        case Experiment::plain: return "plain";
        case Experiment::dnr: return "dnr";
        case Experiment::dnr_eraser: return "dnr_eraser";
        case Experiment::modified_dnr: return "modified_dnr";
        case Experiment::own_goal: return "own_goal";
    }
    return "?";
}

const char* to_string(OwnGoalCavity c) {
    switch (c) {
        case OwnGoalCavity::none: return "none";
        case OwnGoalCavity::coherent: return "coherent";
        case OwnGoalCavity::zero_photon: return "zero_photon";
    }
    return "?";
}

std::optional<Model> parse_model(const std::string& s) {
    return lookup(s, std::array{Model::sew, Model::dnr, Model::galilei});
}
std::optional<EraserPolicy> parse_eraser(const std::string& s) {
    return lookup(s, std::array{EraserPolicy::none, EraserPolicy::relabel, EraserPolicy::collapse});
}
std::optional<Experiment> parse_experiment(const std::string& s) {
    return lookup(s, std::array{Experiment::plain, Experiment::dnr, Experiment::dnr_eraser,
                                Experiment::modified_dnr, Experiment::own_goal});
}
std::optional<OwnGoalCavity> parse_own_goal_cavity(const std::string& s) {
    return lookup(s, std::array{OwnGoalCavity::none, OwnGoalCavity::coherent, OwnGoalCavity::zero_photon});
}

double Params::fringe_period() const { return 2.0 * pi / (2.0 * bragg_kick); }

interf::Rules rules_for(Model model, const interf::LevelScheme& levels) {
    interf::Rules rules;
    switch (model) {
        case Model::sew:
            rules.coherence_key = [](const BeamMode& m, Level level) {
                return SectorKey{m.sector.detector, static_cast<long>(sew_level(m, level)), 0};
            };
            break;
        case Model::dnr:
            rules.coherence_key = [](const BeamMode&, Level level) {
                return SectorKey{0, static_cast<long>(level), 0};
            };
            break;
        case Model::galilei:
            rules.coherence_key = [](const BeamMode& m, Level level) {
                return SectorKey{static_cast<long>(m.sector.summand), static_cast<long>(level), 0};
            };
            break;
    }
    rules.on_cavity = [model, levels](const BeamEnsemble& ens, const interf::Cavity& cavity) {
        Marking marking;
        marking.arms = {cavity.arm};
        marking.transition = cavity.transition;
        marking.marker = cavity.mode == interf::CavityMode::coherent ? Marker::coherent_cavity
                                                                     : Marker::zero_photon_cavity;
        marking.cavity = cavity.index;
        return which_way_marking(ens, model, marking);
    };
    return rules;
}

BeamEnsemble which_way_marking(const BeamEnsemble& ens, Model model, const Marking& marking) {
    require_paths(ens, marking.arms);
    const auto& t = marking.transition;
    if (t.from == t.to || t.from == Level::lvlE || t.to == Level::lvlE) {
        throw Error(ErrorCode::UnknownTransition, "marking transition must connect |2> and |3>");
    }

    BeamEnsemble out = ens;
    switch (model) {
        case Model::dnr:
            return out;
        case Model::sew:
            if (marking.marker == Marker::zero_photon_cavity) {
                for (auto& m : out.modes)
                    if (on_any(m, marking.arms)) m.sector.detector = marking.cavity;
            }
            return out;
        case Model::galilei:
            break;
    }

    const std::size_t fresh = ens.next_summand;
    bool used = false;
    out.modes.clear();
    for (const auto& m : ens.modes) {
        const interf::complex moved = m.internal[slot(t.to)];
        if (!on_any(m, marking.arms) || m.sector.label_level != t.from || moved == 0.0) {
            out.modes.push_back(m);
            continue;
        }
        used = true;
        BeamMode marked = m;
        marked.internal = {0.0, 0.0};
        marked.internal[slot(t.to)] = moved;
        marked.sector.summand = fresh;
        marked.sector.label_level = t.to;

        BeamMode rest = m;
        rest.internal[slot(t.to)] = 0.0;
        if (rest.internal[0] != 0.0 || rest.internal[1] != 0.0) out.modes.push_back(std::move(rest));
        out.modes.push_back(std::move(marked));
    }
    if (used) out.next_summand = fresh + 1;
    return out;
}

BeamEnsemble collapse_equal_labels(const BeamEnsemble& ens) {
    using LabelKey = std::tuple<double, double, int>;
    std::map<LabelKey, std::size_t> lowest;
    auto key = [](const BeamMode& m) {
        return LabelKey{m.sector.mass, m.sector.u_zero, static_cast<int>(m.sector.label_level)};
    };
    for (const auto& m : ens.modes) {
        auto [it, inserted] = lowest.emplace(key(m), m.sector.summand);
        if (!inserted) it->second = std::min(it->second, m.sector.summand);
    }
    BeamEnsemble out = ens;
    for (auto& m : out.modes) m.sector.summand = lowest.at(key(m));
    return out;
}

BeamEnsemble apply_eraser(const BeamEnsemble& ens, Model model, EraserPolicy policy, const std::string& target) {
    const BeamEnsemble pulsed = interf::apply_pulse(ens, {pi, 0.0, {target}});
    if (model != Model::galilei || policy == EraserPolicy::none) return pulsed;

    const auto U = interf::pulse_matrix(pi, 0.0);
    BeamEnsemble out = pulsed;
    out.modes.clear();
    for (const auto& m : ens.modes) {
        if (m.path != target) {
            out.modes.push_back(m);
            continue;
        }
        // each pre-pulse component lands wholly in the other level; its slot
        // label follows it, the slot index does not change
        for (Level old_level : {Level::lvl2, Level::lvl3}) {
            const interf::complex c = m.internal[slot(old_level)];
            if (c == 0.0) continue;
            const Level new_level = other(old_level);
            BeamMode piece = m;
            piece.internal = {0.0, 0.0};
            piece.internal[slot(new_level)] = U[slot(new_level)][slot(old_level)] * c;
            piece.sector.label_level = new_level;
            out.modes.push_back(std::move(piece));
        }
    }
    return policy == EraserPolicy::collapse ? collapse_equal_labels(out) : out;
}

double PredictionReport::visibility(const std::string& pair) const {
    for (const auto& [name, v] : visibilities)
        if (name == pair) return v;
    throw Error(ErrorCode::InvalidArgument, "no visibility recorded for " + pair);
}

BeamEnsemble make_source(const Params& params, const std::string& path, Level level) {
    params.grid.validate();
    params.levels.validate();
    BeamEnsemble ens;
    ens.grid = params.grid;
    ens.levels = params.levels;
    BeamMode m;
    m.path = path;
    m.envelope = std::make_shared<const rep::WaveFunction>(
        rep::WaveFunction::gaussian(params.grid, params.envelope_width_cells));
    m.internal = {0.0, 0.0};
    m.internal[slot(level)] = 1.0;
    m.sector.mass = params.mass;
    m.sector.u_zero = params.u_offset;
    m.sector.label_level = level;
    ens.modes.push_back(std::move(m));
    return ens;
}

std::vector<SectorWeight> sector_census(const BeamEnsemble& ens, Model model) {
    std::map<std::string, double> weights;
    for (const auto& m : ens.modes) {
        const double env = m.envelope->norm_squared();
        for (Level level : {Level::lvl2, Level::lvl3}) {
            const interf::complex c = m.amplitude * m.internal[slot(level)];
            if (c == 0.0) continue;
            std::string name;
            switch (model) {
                case Model::sew:
                    name = "detector=" + std::to_string(m.sector.detector) + ";level=" +
                           interf::to_string(sew_level(m, level));
                    break;
                case Model::dnr:
                    name = std::string("level=") + interf::to_string(level);
                    break;
                case Model::galilei:
                    name = "summand=" + std::to_string(m.sector.summand) + ";level=" + interf::to_string(level);
                    break;
            }
            weights[name] += std::norm(c) * env;
        }
    }
    std::vector<SectorWeight> out;
    for (const auto& [name, w] : weights) out.push_back({name, w});
    return out;
}

namespace {

std::vector<interf::OpticalElement> dnr_elements(Model model, EraserPolicy eraser, Experiment experiment,
                                                 const Params& params, bool with_screens) {
    const bool pulses = experiment != Experiment::plain;
    const double k = params.bragg_kick;
    std::vector<interf::OpticalElement> els;
    if (pulses) els.push_back(interf::MicrowavePulse{params.pulse_angle, 0.0, {"A"}});
    els.push_back(interf::LightCrystal{params.reflectivity, true, {{"A", "C", "B", k}}});
    if (with_screens) els.push_back(interf::FreeFlight{params.flight_time});
    if (pulses) {
        els.push_back(interf::MicrowavePulse{params.pulse_angle, 0.0, {"B", "C"}});
        els.push_back(hook("which-way marking", [model](const BeamEnsemble& e) {
            return which_way_marking(e, model, Marking{{"B", "C"}, {Level::lvl2, Level::lvl3}});
        }));
    }
    if (experiment == Experiment::dnr_eraser && eraser != EraserPolicy::none) {
        els.push_back(hook("eraser on C", [model, eraser](const BeamEnsemble& e) {
            return apply_eraser(e, model, eraser, "C");
        }));
    }
    els.push_back(interf::LightCrystal{params.reflectivity, true, {{"B", "D", "F", k}, {"C", "G", "E", -k}}});
    if (with_screens) els.push_back(interf::FreeFlight{params.flight_time});
    if (experiment == Experiment::modified_dnr && eraser != EraserPolicy::none) {
        els.push_back(hook("eraser on E", [model, eraser](const BeamEnsemble& e) {
            return apply_eraser(e, model, eraser, "E");
        }));
    }
    if (with_screens) {
        els.push_back(interf::Screen::centered("D-E", {"D", "E"}, params.fringe_period()));
        els.push_back(interf::Screen::centered("F-G", {"F", "G"}, params.fringe_period()));
    }
    return els;
}

RunResult finish(Experiment experiment, Model model, EraserPolicy eraser, interf::PipelineResult result) {
    RunResult out;
    out.report.experiment = experiment;
    out.report.model = model;
    out.report.eraser = eraser;
    for (const auto& p : result.profiles) out.report.visibilities.emplace_back(p.name, p.visibility);
    out.report.sector_census = sector_census(result.final, model);
    out.profiles = std::move(result.profiles);
    out.final = std::move(result.final);
    return out;
}

RunResult own_goal_once(Model model, const Params& params) {
    std::vector<interf::OpticalElement> els;
    els.push_back(interf::LightCrystal{0.5, false, {{"S", "2", "1", 2.0 * params.bragg_kick}}});
    els.push_back(interf::FreeFlight{params.flight_time});
    if (params.own_goal_cavity != OwnGoalCavity::none) {
        const auto mode = params.own_goal_cavity == OwnGoalCavity::coherent ? interf::CavityMode::coherent
                                                                            : interf::CavityMode::zero_photon;
        els.push_back(interf::Cavity{mode, "1", 1, {Level::lvl3, Level::lvl2}});
    }
    els.push_back(interf::FreeFlight{params.flight_time});
    els.push_back(interf::Screen::centered("1-2", {"1", "2"}, params.fringe_period()));
    const auto result = interf::run_pipeline(els, make_source(params, "S", Level::lvl3),
                                             rules_for(model, params.levels));
    return finish(Experiment::own_goal, model, EraserPolicy::none, result);
}

}  // namespace

RunResult run_dnr(Model model, EraserPolicy eraser, Experiment experiment, const Params& params) {
    if (experiment == Experiment::own_goal) {
        throw Error(ErrorCode::InvalidArgument, "own_goal does not run on the DNR apparatus");
    }
    const auto els = dnr_elements(model, eraser, experiment, params, true);
    const auto result = interf::run_pipeline(els, make_source(params, "A", Level::lvl2),
                                             rules_for(model, params.levels));
    return finish(experiment, model, eraser, result);
}

RunResult run_own_goal(Model model, const Params& params) {
    RunResult out = own_goal_once(model, params);
    const Model rival = model == Model::sew ? Model::galilei : (model == Model::galilei ? Model::sew : Model::galilei);
    out.report.rival = {rival, own_goal_once(rival, params).report.visibility("1-2")};
    return out;
}

RunResult run_experiment(Experiment experiment, Model model, EraserPolicy eraser, const Params& params) {
    if (experiment == Experiment::own_goal) return run_own_goal(model, params);
    return run_dnr(model, eraser, experiment, params);
}

std::array<interf::complex, 4> dnr_coefficients(const Params& params) {
    const auto els = dnr_elements(Model::dnr, EraserPolicy::none, Experiment::dnr, params, false);
    const auto final = interf::run_pipeline(els, make_source(params, "A", Level::lvl2),
                                            rules_for(Model::dnr, params.levels))
                           .final;
    auto coeff = [&](const char* path, Level level) {
        interf::complex acc = 0.0;
        for (const auto& m : final.modes)
            if (m.path == path) acc += m.amplitude * m.internal[slot(level)];
        return acc;
    };
    return {coeff("D", Level::lvl2), coeff("E", Level::lvl3), coeff("F", Level::lvl2), coeff("G", Level::lvl3)};
}

std::vector<MatrixRow> prediction_matrix(const Params& params) {
    struct Cell {
        Experiment experiment;
        EraserPolicy eraser;
        std::string pair;
    };
    const std::vector<Cell> cells{
        {Experiment::plain, EraserPolicy::none, "D-E"},
        {Experiment::dnr, EraserPolicy::none, "D-E"},
        {Experiment::dnr, EraserPolicy::none, "F-G"},
        {Experiment::dnr_eraser, EraserPolicy::relabel, "D-E"},
        {Experiment::dnr_eraser, EraserPolicy::collapse, "D-E"},
        {Experiment::modified_dnr, EraserPolicy::relabel, "D-E"},
        {Experiment::modified_dnr, EraserPolicy::collapse, "D-E"},
        {Experiment::own_goal, EraserPolicy::none, "1-2"},
    };
    std::vector<MatrixRow> rows;
    for (const auto& c : cells) {
        MatrixRow row{c.experiment, c.eraser, c.pair, {}};
        for (Model m : {Model::sew, Model::dnr, Model::galilei}) {
            const RunResult r = c.experiment == Experiment::own_goal
                                    ? own_goal_once(m, params)
                                    : run_dnr(m, c.eraser, c.experiment, params);
            row.visibility[static_cast<std::size_t>(m)] = r.report.visibility(c.pair);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace galilei::models
