#include "galilei/interferometer.hpp"

#include "galilei/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace galilei::interf {

namespace {

constexpr std::size_t kScreenPoints = 512;
constexpr std::size_t kSamplesPerPeriod = 128;

double doublet_norm2(const Doublet& d) { return std::norm(d[0]) + std::norm(d[1]); }

void require_path(const BeamEnsemble& ens, const std::string& path) {
    if (!ens.has_path(path)) throw Error(ErrorCode::UnknownPath, "no beam on path " + path);
}

/// Transverse position-space amplitude of a comoving envelope at y = z = 0.
std::vector<complex> envelope_on_screen(const rep::WaveFunction& env, const std::vector<double>& xs) {
    const rep::MomentumGrid& grid = env.grid();
    const auto n = static_cast<std::size_t>(grid.points_per_axis);
    const std::size_t stride = grid.size() / n;

    std::vector<complex> marginal(n);
    for (std::size_t i = 0; i < n; ++i) {
        complex acc = 0.0;
        for (std::size_t j = 0; j < stride; ++j) acc += env[i * stride + j];
        marginal[i] = acc;
    }
    const double measure = grid.cell_volume();
    std::vector<complex> out(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        complex acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (marginal[i] == 0.0) continue;
            const double p = (static_cast<double>(i) - static_cast<double>(n / 2)) * grid.spacing;
            acc += marginal[i] * std::polar(1.0, p * xs[k]);
        }
        out[k] = acc * measure;
    }
    return out;
}

}  // namespace

const char* to_string(Level level) {
    switch (level) {
        case Level::lvl2: return "2";
        case Level::lvl3: return "3";
        case Level::lvlE: return "e";
    }
    return "?";
}

void LevelScheme::validate() const {
    if (!(e2 < e3 && e3 < eE)) {
        throw Error(ErrorCode::InvalidArgument, "level energies must satisfy e2 < e3 < eE");
    }
}

double LevelScheme::energy(Level level) const {
    switch (level) {
        case Level::lvl2: return e2;
        case Level::lvl3: return e3;
        case Level::lvlE: return eE;
    }
    return 0.0;
}

double BeamMode::weight() const {
    return std::norm(amplitude) * doublet_norm2(internal) * envelope->norm_squared();
}

double BeamEnsemble::norm_squared() const {
    double acc = 0.0;
    for (const auto& m : modes) acc += m.weight();
    return acc;
}

bool BeamEnsemble::has_path(const std::string& path) const {
    return std::any_of(modes.begin(), modes.end(), [&](const BeamMode& m) { return m.path == path; });
}

std::array<Doublet, 2> pulse_matrix(double angle, double phase) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    // rows: new |2>, new |3>
    return {{{c, -std::polar(s, -phase)}, {std::polar(s, phase), c}}};
}

BeamEnsemble apply_pulse(const BeamEnsemble& ens, const MicrowavePulse& pulse) {
    for (const auto& t : pulse.targets) require_path(ens, t);
    const auto U = pulse_matrix(pulse.angle, pulse.phase);
    BeamEnsemble out = ens;
    for (auto& m : out.modes) {
        if (std::find(pulse.targets.begin(), pulse.targets.end(), m.path) == pulse.targets.end()) continue;
        const Doublet in = m.internal;
        m.internal = {U[0][0] * in[0] + U[0][1] * in[1], U[1][0] * in[0] + U[1][1] * in[1]};
    }
    return out;
}

BeamEnsemble apply_light_crystal(const BeamEnsemble& ens, const LightCrystal& crystal) {
    if (!(crystal.reflectivity >= 0.0 && crystal.reflectivity <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "reflectivity must lie in [0, 1]");
    }
    const double t_amp = std::sqrt(1.0 - crystal.reflectivity);
    const double r_amp = std::sqrt(crystal.reflectivity);

    BeamEnsemble out = ens;
    out.modes.clear();
    for (const auto& m : ens.modes) {
        auto route = std::find_if(crystal.routing.begin(), crystal.routing.end(),
                                  [&](const Route& r) { return r.input == m.path; });
        if (route == crystal.routing.end()) {
            throw Error(ErrorCode::UnroutedPath, "light crystal has no route for path " + m.path);
        }
        BeamMode transmitted = m;
        transmitted.path = route->transmitted;
        transmitted.amplitude *= t_amp;

        BeamMode refracted = m;
        refracted.path = route->refracted;
        refracted.amplitude *= r_amp;
        refracted.central_momentum[0] += route->kick;
        if (crystal.state_phase) refracted.internal[0] *= -1.0;

        out.modes.push_back(std::move(transmitted));
        out.modes.push_back(std::move(refracted));
    }
    return out;
}

BeamEnsemble apply_cavity(const BeamEnsemble& ens, const Cavity& cavity, const Rules& rules) {
    require_path(ens, cavity.arm);
    const auto from = static_cast<std::size_t>(cavity.transition.from);
    const auto to = static_cast<std::size_t>(cavity.transition.to);
    if (from > 1 || to > 1 || from == to) {
        throw Error(ErrorCode::UnknownTransition, "cavity transition must connect |2> and |3>");
    }
    BeamEnsemble out = ens;
    for (auto& m : out.modes) {
        if (m.path != cavity.arm) continue;
        // decay with certainty: |from> goes to |to>
        std::swap(m.internal[from], m.internal[to]);
        m.sector.cavity_transition = cavity.transition;
    }
    return rules.on_cavity ? rules.on_cavity(out, cavity) : out;
}

BeamEnsemble propagate(const BeamEnsemble& ens, const FreeFlight& flight) {
    if (flight.duration == 0.0) return ens;
    const double t = flight.duration;
    BeamEnsemble out = ens;
    for (auto& m : out.modes) {
        const rep::RepLabel label = m.sector.label(ens.levels);
        const group::FactorSystem fs(label.mass);
        const rep::RepLabel kinetic_only{label.mass, 0.0};
        m.envelope = std::make_shared<const rep::WaveFunction>(rep::apply_rep(
            kinetic_only, fs, {0.0, group::GroupElement::time_translation(t)}, *m.envelope));
        const double pc = m.central_momentum[0];
        m.drift += pc * t / label.mass;
        m.amplitude *= std::polar(1.0, (label.u + pc * pc / (2.0 * label.mass)) * t);
    }
    return out;
}

double visibility(const std::vector<double>& coherent, const std::vector<double>& incoherent,
                  std::size_t begin, std::size_t end) {
    end = std::min(end, coherent.size());
    double peak = 0.0;
    for (std::size_t i = begin; i < end; ++i) peak = std::max(peak, incoherent[i]);
    if (peak <= 0.0) return 0.0;

    std::vector<double> ratio(end - begin, std::nan(""));
    for (std::size_t i = begin; i < end; ++i) {
        if (incoherent[i] > 1e-12 * peak) ratio[i - begin] = coherent[i] / incoherent[i];
    }
    std::size_t imax = ratio.size();
    std::size_t imin = ratio.size();
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        if (std::isnan(ratio[i])) continue;
        if (imax == ratio.size() || ratio[i] > ratio[imax]) imax = i;
        if (imin == ratio.size() || ratio[i] < ratio[imin]) imin = i;
    }
    if (imax == ratio.size()) return 0.0;

    // three-point parabolic refinement of a sampled extremum
    auto refine = [&](std::size_t i) {
        const double y0 = ratio[i];
        if (i == 0 || i + 1 >= ratio.size()) return y0;
        const double ym = ratio[i - 1];
        const double yp = ratio[i + 1];
        if (std::isnan(ym) || std::isnan(yp)) return y0;
        const double curvature = yp - 2.0 * y0 + ym;
        if (curvature == 0.0) return y0;
        return y0 - (yp - ym) * (yp - ym) / (8.0 * curvature);
    };
    const double hi = refine(imax);
    const double lo = std::max(0.0, refine(imin));
    if (hi + lo <= 0.0) return 0.0;
    return std::clamp((hi - lo) / (hi + lo), 0.0, 1.0);
}

IntensityProfile detect(const BeamEnsemble& ens, const Screen& screen, const Rules& rules) {
    std::vector<const BeamMode*> arriving;
    for (const auto& m : ens.modes) {
        if (std::find(screen.paths.begin(), screen.paths.end(), m.path) != screen.paths.end()) {
            arriving.push_back(&m);
        }
    }
    if (arriving.empty()) throw Error(ErrorCode::EmptyScreen, "no beam reaches screen " + screen.name);

    const std::size_t npts = screen.positions.size();
    struct Accumulator {
        std::vector<complex> field;
        std::vector<double> incoherent;
    };
    std::map<SectorKey, Accumulator> sectors;

    for (const BeamMode* m : arriving) {
        const std::vector<complex> env = envelope_on_screen(*m->envelope, screen.positions);
        for (std::size_t lvl = 0; lvl < 2; ++lvl) {
            const complex c = m->amplitude * m->internal[lvl];
            if (c == 0.0) continue;
            auto& acc = sectors[rules.coherence_key(*m, static_cast<Level>(lvl))];
            if (acc.field.empty()) {
                acc.field.assign(npts, 0.0);
                acc.incoherent.assign(npts, 0.0);
            }
            for (std::size_t k = 0; k < npts; ++k) {
                const complex f = c * env[k] * std::polar(1.0, m->central_momentum[0] * screen.positions[k]);
                acc.field[k] += f;
                acc.incoherent[k] += std::norm(f);
            }
        }
    }

    IntensityProfile out;
    out.name = screen.name;
    out.positions = screen.positions;
    out.intensity.assign(npts, 0.0);
    std::vector<double> incoherent(npts, 0.0);
    for (const auto& [key, acc] : sectors) {
        for (std::size_t k = 0; k < npts; ++k) {
            out.intensity[k] += std::norm(acc.field[k]);
            incoherent[k] += acc.incoherent[k];
        }
    }
    out.visibility = visibility(out.intensity, incoherent, screen.window_begin, screen.window_end);
    return out;
}

Screen Screen::centered(std::string name, std::vector<std::string> paths, double fringe_period) {
    if (!(fringe_period > 0.0)) throw Error(ErrorCode::InvalidArgument, "fringe period must be positive");
    Screen s;
    s.name = std::move(name);
    s.paths = std::move(paths);
    const double h = fringe_period / static_cast<double>(kSamplesPerPeriod);
    s.positions.resize(kScreenPoints);
    for (std::size_t j = 0; j < kScreenPoints; ++j) {
        s.positions[j] = (static_cast<double>(j) - static_cast<double>(kScreenPoints / 2)) * h;
    }
    s.window_begin = kScreenPoints / 2 - 3 * kSamplesPerPeriod / 2;
    s.window_end = kScreenPoints / 2 + 3 * kSamplesPerPeriod / 2;
    return s;
}

Rules Rules::plain() {
    Rules r;
    r.coherence_key = [](const BeamMode&, Level level) { return SectorKey{0, static_cast<long>(level), 0}; };
    return r;
}

PipelineResult run_pipeline(const std::vector<OpticalElement>& elements, const BeamEnsemble& source,
                            const Rules& rules) {
    PipelineResult result{source, {}};
    for (const auto& element : elements) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, MicrowavePulse>) {
                    result.final = apply_pulse(result.final, e);
                } else if constexpr (std::is_same_v<T, LightCrystal>) {
                    result.final = apply_light_crystal(result.final, e);
                } else if constexpr (std::is_same_v<T, Cavity>) {
                    result.final = apply_cavity(result.final, e, rules);
                } else if constexpr (std::is_same_v<T, FreeFlight>) {
                    result.final = propagate(result.final, e);
                } else if constexpr (std::is_same_v<T, Screen>) {
                    result.profiles.push_back(detect(result.final, e, rules));
                } else {
                    result.final = e.apply(result.final);
                }
            },
            element);
    }
    return result;
}

}  // namespace galilei::interf
