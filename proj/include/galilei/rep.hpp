#pragma once

// Momentum-space carriers of the mass-m, spin-0 ray representations D_u.
//
// Grid points sit at p_k = (i_k - N/2) dp on each axis, periodic in the
// index. Flat index is row-major with axis 0 slowest.

#include "galilei/group.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace galilei::rep {

using complex = std::complex<double>;
using group::ExtendedElement;
using group::FactorSystem;
using group::GroupElement;

struct MomentumGrid {
    int dim = 2;
    int points_per_axis = 256;
    double spacing = 1.0 / 16.0;

    /// Throws Error(InvalidArgument) on a bad dimension, non power-of-two N, or spacing <= 0.
    void validate() const;

    std::size_t size() const;
    /// Momentum of axis `axis` at flat index `flat`.
    double momentum(std::size_t flat, int axis) const;
    /// Centered integer coordinate i_k - N/2.
    int centered_index(std::size_t flat, int axis) const;
    /// Flat index of a centered coordinate (wrapped periodically).
    std::size_t flat_index(const int* centered) const;
    double cell_volume() const;

    bool operator==(const MomentumGrid&) const = default;
};

class WaveFunction {
public:
    WaveFunction() = default;
    explicit WaveFunction(MomentumGrid grid);
    WaveFunction(MomentumGrid grid, std::vector<complex> amplitudes);

    /// Samples f at every grid point and normalizes.
    static WaveFunction from_function(const MomentumGrid& grid,
                                      const std::function<complex(const double* p)>& f);
    /// Isotropic Gaussian of width `width_cells` grid cells centered at `center` (momentum).
    static WaveFunction gaussian(const MomentumGrid& grid, double width_cells,
                                 const std::vector<double>& center = {});
    /// Kronecker delta at a centered index, normalized to unit norm.
    static WaveFunction delta(const MomentumGrid& grid, const std::vector<int>& centered);

    const MomentumGrid& grid() const { return grid_; }
    const std::vector<complex>& amplitudes() const { return amps_; }
    std::vector<complex>& amplitudes() { return amps_; }
    complex operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const;
    WaveFunction normalized() const;
    WaveFunction scaled(complex factor) const;

private:
    MomentumGrid grid_;
    std::vector<complex> amps_;
};

/// Grid inner product <a, b> with the dp^dim measure (pairwise summation).
complex inner_product(const WaveFunction& a, const WaveFunction& b);

/// Largest pointwise |a - b|.
double max_abs_difference(const WaveFunction& a, const WaveFunction& b);

/// Irreducible label (m, u, s); spin fixed at 0.
struct RepLabel {
    double mass = 1.0;
    double u = 0.0;
    static constexpr int spin = 0;

    bool operator==(const RepLabel&) const = default;
};

/// (D_u(theta, b, a, v, R) psi)(p) = exp(i[theta + E b + p.a]) psi(R^-1 (p - m v)),
/// E = u + p^2 / 2m. Needs m v on the lattice and R a signed permutation
/// preserving the grid axes.
WaveFunction apply_rep(const RepLabel& label, const FactorSystem& fs, const ExtendedElement& g,
                       const WaveFunction& psi);

/// Lattice shift of the boost m v in whole cells per axis, or throws IncompatibleBoost.
std::vector<int> boost_cells(const MomentumGrid& grid, double mass, const group::Vec3& v);

/// Throws IncompatibleRotation unless R is grid-compatible for this grid.
void check_rotation(const MomentumGrid& grid, const group::Rotation& R);

/// All proper signed-permutation rotations compatible with a grid of this dimension.
std::vector<group::Rotation> grid_rotations(int dim);

/// max |D(g1) D(g2) psi - omega(g1, g2) D(g1 g2) psi|.
double verify_composition(const RepLabel& label, const FactorSystem& fs, const GroupElement& g1,
                          const GroupElement& g2, const WaveFunction& psi);

struct ShiftComparison {
    WaveFunction lhs;  // D_{u'}(g) psi
    WaveFunction rhs;  // e^{i u b} D_{u'-u}(g) psi
    double residual = 0.0;
};

/// Zero-of-energy check: D_{u'}(g) = e^{i u b} D_{u' - u}(g), with u' = label.u.
ShiftComparison equivalence_shift(const RepLabel& label, const FactorSystem& fs, double u_shift,
                                  const GroupElement& g, const WaveFunction& psi);

struct Summand {
    RepLabel label;
    WaveFunction psi;
};

/// Ordered direct sum; slots are mutually orthogonal whatever their labels.
class DirectSumState {
public:
    explicit DirectSumState(std::vector<Summand> summands);

    const std::vector<Summand>& summands() const { return summands_; }
    std::size_t size() const { return summands_.size(); }
    double norm_squared() const;

private:
    std::vector<Summand> summands_;
};

DirectSumState direct_sum_apply(const DirectSumState& state, const FactorSystem& fs,
                                const ExtendedElement& g);

/// Pi_index: same slot structure with every other slot zeroed.
DirectSumState project(const DirectSumState& state, std::size_t index);

/// Slot-by-slot sum of grid inner products; cross-slot terms never appear.
complex inner_product(const DirectSumState& s1, const DirectSumState& s2);

/// Recovers u of a single-summand state from a short time translation b.
double measure_internal_energy(const DirectSumState& state, const FactorSystem& fs, double b);

}  // namespace galilei::rep
