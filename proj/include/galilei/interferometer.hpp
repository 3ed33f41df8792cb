#pragma once

// Beam-mode simulation of a two-crystal atom interferometer.
//
// Geometry is topological: each mode carries a path label, a transverse
// central momentum and a comoving envelope. Which beams overlap is declared
// by the screens, not raytraced.

#include "galilei/rep.hpp"
#include "galilei/sector.hpp"

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace galilei::interf {

using complex = std::complex<double>;

/// Amplitudes on (|2>, |3>).
using Doublet = std::array<complex, 2>;

struct BeamMode {
    std::string path;
    /// (transverse, longitudinal), momentum units.
    std::array<double, 2> central_momentum{0.0, 0.0};
    /// Transverse drift accumulated in free flight; bookkeeping only.
    double drift = 0.0;
    std::shared_ptr<const rep::WaveFunction> envelope;
    Doublet internal{1.0, 0.0};
    models::SectorTag sector;
    complex amplitude = 1.0;

    double weight() const;
};

struct BeamEnsemble {
    std::vector<BeamMode> modes;
    rep::MomentumGrid grid;
    LevelScheme levels;
    std::size_t next_summand = 1;

    double norm_squared() const;
    bool has_path(const std::string& path) const;
};

struct MicrowavePulse {
    double angle = 0.0;
    double phase = 0.0;
    std::vector<std::string> targets;
};

/// 2x2 pulse unitary on (|2>, |3>). angle = pi/2 gives |2> -> (|2>+|3>)/sqrt2.
std::array<Doublet, 2> pulse_matrix(double angle, double phase);

struct Route {
    std::string input;
    std::string transmitted;
    std::string refracted;
    /// Transverse momentum added to the refracted beam.
    double kick = 0.0;
};

struct LightCrystal {
    double reflectivity = 0.5;
    /// Detuning rule: refraction flips the sign of |2> and leaves |3>.
    /// Off for a plain (state-blind) splitter.
    bool state_phase = true;
    std::vector<Route> routing;
};

enum class CavityMode { zero_photon, coherent };

struct Cavity {
    CavityMode mode = CavityMode::zero_photon;
    std::string arm;
    int index = 1;
    Transition transition;
};

struct FreeFlight {
    double duration = 0.0;
};

struct Screen {
    std::string name;
    std::vector<std::string> paths;
    std::vector<double> positions;
    std::size_t window_begin = 0;
    std::size_t window_end = 0;

    /// 512 points at period/128 spacing centered on 0; window = central 3 periods.
    static Screen centered(std::string name, std::vector<std::string> paths, double fringe_period);
};

/// Model-layer step inserted into a pipeline (marking, eraser).
struct Hook {
    std::string name;
    std::function<BeamEnsemble(const BeamEnsemble&)> apply;
};

using OpticalElement = std::variant<MicrowavePulse, LightCrystal, Cavity, FreeFlight, Screen, Hook>;

/// Ordered key; modes with equal keys add coherently at a screen.
using SectorKey = std::array<long, 3>;

struct Rules {
    std::function<SectorKey(const BeamMode&, Level)> coherence_key;
    /// Applied after a cavity has performed its internal transition.
    std::function<BeamEnsemble(const BeamEnsemble&, const Cavity&)> on_cavity;

    /// Coherent within an internal level, nothing else tracked.
    static Rules plain();
};

struct IntensityProfile {
    std::string name;
    std::vector<double> positions;
    std::vector<double> intensity;
    double visibility = 0.0;
};

BeamEnsemble apply_pulse(const BeamEnsemble& ens, const MicrowavePulse& pulse);
BeamEnsemble apply_light_crystal(const BeamEnsemble& ens, const LightCrystal& crystal);
BeamEnsemble apply_cavity(const BeamEnsemble& ens, const Cavity& cavity, const Rules& rules);
BeamEnsemble propagate(const BeamEnsemble& ens, const FreeFlight& flight);
IntensityProfile detect(const BeamEnsemble& ens, const Screen& screen, const Rules& rules);

/// (I_max - I_min) / (I_max + I_min) of the envelope-normalized intensity
/// I / I_incoherent over [begin, end); 0 where nothing arrives.
double visibility(const std::vector<double>& coherent, const std::vector<double>& incoherent,
                  std::size_t begin, std::size_t end);

struct PipelineResult {
    BeamEnsemble final;
    std::vector<IntensityProfile> profiles;
};

PipelineResult run_pipeline(const std::vector<OpticalElement>& elements, const BeamEnsemble& source,
                            const Rules& rules);

}  // namespace galilei::interf
