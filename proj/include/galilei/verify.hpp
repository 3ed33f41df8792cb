#pragma once

// Law-by-law numerical verification of the factor system, the ray
// representation and the interferometer encoding.

#include "galilei/group.hpp"
#include "galilei/rep.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace galilei::verify {

/// Smooth test state, zero on the unpaired Nyquist row of every axis.
rep::WaveFunction test_wavefunction(const rep::MomentumGrid& grid);

/// Largest boost shift (cells per axis) that keeps test_wavefunction clear of
/// the periodic wrap under products of two sampled elements.
int max_boost_cells(const rep::MomentumGrid& grid);

/// Random element whose boost is an on-lattice shift and whose rotation is grid-compatible.
group::GroupElement random_lattice_element(std::mt19937_64& rng, const rep::MomentumGrid& grid,
                                           double mass);

struct Options {
    rep::MomentumGrid grid;
    double mass = 1.0;
    std::uint64_t seed = 0;
    int cocycle_triples = 1000;
    int composition_pairs = 200;
    /// Negative control: run with the exponent sign flipped.
    bool flip_gamma_sign = false;
};

struct LawResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    /// Exact laws pass only at residual zero; tolerance is then reported as 0.
    bool exact = false;
    bool passed() const { return exact ? max_residual == 0.0 : max_residual < tolerance; }
    bool operator==(const LawResult&) const = default;
};

/// Laws in fixed order: cocycle, composition, unitarity, zero_of_energy,
/// common_zero, weyl_phase, block_orthogonality, dnr_coefficients.
std::vector<LawResult> run_all(const Options& options);

}  // namespace galilei::verify
