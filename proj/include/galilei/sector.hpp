#pragma once

#include "galilei/rep.hpp"

#include <array>
#include <cstddef>
#include <optional>

namespace galilei::interf {

enum class Level { lvl2 = 0, lvl3 = 1, lvlE = 2 };

const char* to_string(Level level);

/// Hyperfine doublet {|2>, |3>} plus the (never populated) optical level.
struct LevelScheme {
    double e2 = 0.0;
    double e3 = 1.0;
    double eE = 1.0e6;

    /// Throws Error(InvalidArgument) unless e2 < e3 < eE.
    void validate() const;
    double energy(Level level) const;
};

struct Transition {
    Level from = Level::lvl3;
    Level to = Level::lvl2;
};

}  // namespace galilei::interf

namespace galilei::models {

/// Per-mode coherence bookkeeping. Each model reads the fields it cares
/// about: SEW the detector record, DNR nothing beyond the internal state,
/// GALILEI the summand ordinal and its label.
struct SectorTag {
    /// SEW detector state: 0 = no photon in any cavity, k = one photon in cavity k.
    int detector = 0;
    /// Internal change handed to a cavity (SEW attributes it to the field).
    std::optional<interf::Transition> cavity_transition;

    /// GALILEI direct-sum slot. Never reused once allocated.
    std::size_t summand = 0;
    double mass = 1.0;
    /// Zero of internal energy shared by every summand.
    double u_zero = 0.0;
    /// Level whose energy fixes this slot's internal energy.
    interf::Level label_level = interf::Level::lvl2;

    rep::RepLabel label(const interf::LevelScheme& scheme) const {
        return {mass, u_zero + scheme.energy(label_level)};
    }
};

}  // namespace galilei::models
