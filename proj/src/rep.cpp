#include "galilei/rep.hpp"

#include "galilei/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

namespace galilei::rep {

namespace {

constexpr double kLatticeTol = 1e-9;

template <typename T>
T pairwise_sum(std::span<const T> xs) {
    if (xs.size() <= 8) {
        T acc{};
        for (const T& x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

void require_same_grid(const MomentumGrid& a, const MomentumGrid& b) {
    if (!(a == b)) throw Error(ErrorCode::GridMismatch, "wavefunctions live on different grids");
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void MomentumGrid::validate() const {
    if (dim < 1 || dim > 3) throw Error(ErrorCode::InvalidArgument, "grid dim must be 1, 2 or 3");
    if (!is_power_of_two(points_per_axis) || points_per_axis < 2) {
        throw Error(ErrorCode::InvalidArgument, "points per axis must be a power of two >= 2");
    }
    if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
}

std::size_t MomentumGrid::size() const {
    std::size_t n = 1;
    for (int k = 0; k < dim; ++k) n *= static_cast<std::size_t>(points_per_axis);
    return n;
}

int MomentumGrid::centered_index(std::size_t flat, int axis) const {
    const auto n = static_cast<std::size_t>(points_per_axis);
    for (int k = dim - 1; k > axis; --k) flat /= n;
    return static_cast<int>(flat % n) - points_per_axis / 2;
}

double MomentumGrid::momentum(std::size_t flat, int axis) const {
    return centered_index(flat, axis) * spacing;
}

std::size_t MomentumGrid::flat_index(const int* centered) const {
    const int n = points_per_axis;
    std::size_t flat = 0;
    for (int k = 0; k < dim; ++k) {
        int i = (centered[k] + n / 2) % n;
        if (i < 0) i += n;
        flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    }
    return flat;
}

double MomentumGrid::cell_volume() const { return std::pow(spacing, dim); }

WaveFunction::WaveFunction(MomentumGrid grid) : grid_(grid), amps_(grid.size()) {
    grid_.validate();
}

WaveFunction::WaveFunction(MomentumGrid grid, std::vector<complex> amplitudes)
    : grid_(grid), amps_(std::move(amplitudes)) {
    grid_.validate();
    if (amps_.size() != grid_.size()) {
        throw Error(ErrorCode::GridMismatch, "amplitude count does not match grid size");
    }
}

WaveFunction WaveFunction::from_function(const MomentumGrid& grid,
                                         const std::function<complex(const double* p)>& f) {
    WaveFunction psi(grid);
    std::array<double, 3> p{};
    for (std::size_t i = 0; i < psi.amps_.size(); ++i) {
        for (int k = 0; k < grid.dim; ++k) p[k] = grid.momentum(i, k);
        psi.amps_[i] = f(p.data());
    }
    return psi.normalized();
}

WaveFunction WaveFunction::gaussian(const MomentumGrid& grid, double width_cells,
                                    const std::vector<double>& center) {
    const double sigma = width_cells * grid.spacing;
    return from_function(grid, [&](const double* p) {
        double r2 = 0.0;
        for (int k = 0; k < grid.dim; ++k) {
            const double c = k < static_cast<int>(center.size()) ? center[k] : 0.0;
            r2 += (p[k] - c) * (p[k] - c);
        }
        return complex(std::exp(-0.5 * r2 / (sigma * sigma)), 0.0);
    });
}

WaveFunction WaveFunction::delta(const MomentumGrid& grid, const std::vector<int>& centered) {
    if (static_cast<int>(centered.size()) != grid.dim) {
        throw Error(ErrorCode::InvalidArgument, "delta index has wrong dimension");
    }
    WaveFunction psi(grid);
    psi.amps_[grid.flat_index(centered.data())] = 1.0;
    return psi.normalized();
}

double WaveFunction::norm_squared() const {
    std::vector<double> sq(amps_.size());
    std::transform(amps_.begin(), amps_.end(), sq.begin(), [](complex z) { return std::norm(z); });
    return pairwise_sum<double>(sq) * grid_.cell_volume();
}

WaveFunction WaveFunction::normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
    return scaled(1.0 / n);
}

WaveFunction WaveFunction::scaled(complex factor) const {
    WaveFunction out = *this;
    for (auto& z : out.amps_) z *= factor;
    return out;
}

complex inner_product(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a.grid(), b.grid());
    std::vector<complex> terms(a.amplitudes().size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::conj(a[i]) * b[i];
    return pairwise_sum<complex>(terms) * a.grid().cell_volume();
}

double max_abs_difference(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a.grid(), b.grid());
    double d = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::vector<int> boost_cells(const MomentumGrid& grid, double mass, const group::Vec3& v) {
    std::vector<int> cells(static_cast<std::size_t>(grid.dim));
    for (int k = 0; k < 3; ++k) {
        const double shift = mass * v[k] / grid.spacing;
        if (k >= grid.dim) {
            if (std::abs(shift) > kLatticeTol) {
                throw Error(ErrorCode::IncompatibleBoost, "boost has a component off the grid axes");
            }
            continue;
        }
        const double r = std::round(shift);
        if (std::abs(shift - r) > kLatticeTol) {
            throw Error(ErrorCode::IncompatibleBoost, "m v is not a lattice multiple of dp");
        }
        cells[static_cast<std::size_t>(k)] = static_cast<int>(r);
    }
    return cells;
}

void check_rotation(const MomentumGrid& grid, const group::Rotation& R) {
    const auto& m = R.matrix();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double x = m(i, j);
            if (std::abs(x - std::round(x)) > kLatticeTol) {
                throw Error(ErrorCode::IncompatibleRotation, "rotation is not a signed permutation");
            }
            const bool crosses = (i < grid.dim) != (j < grid.dim);
            if (crosses && std::abs(x) > kLatticeTol) {
                throw Error(ErrorCode::IncompatibleRotation, "rotation mixes grid and off-grid axes");
            }
        }
    }
}

std::vector<group::Rotation> grid_rotations(int dim) {
    std::vector<group::Rotation> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
        for (int signs = 0; signs < 8; ++signs) {
            group::Mat3 m = group::Mat3::Zero();
            for (int i = 0; i < 3; ++i) m(i, perm[i]) = (signs >> i) & 1 ? -1.0 : 1.0;
            if (m.determinant() < 0.5) continue;
            auto R = group::Rotation::from_trusted(m);
            MomentumGrid g{dim, 2, 1.0};
            try {
                check_rotation(g, R);
                out.push_back(R);
            } catch (const Error&) {
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

WaveFunction apply_rep(const RepLabel& label, const FactorSystem& fs, const ExtendedElement& xg,
                       const WaveFunction& psi) {
    if (label.mass != fs.mass()) {
        throw Error(ErrorCode::InvalidArgument, "label mass differs from factor-system mass");
    }
    const MomentumGrid& grid = psi.grid();
    const GroupElement& g = xg.g;
    const std::vector<int> shift = boost_cells(grid, label.mass, g.v);
    check_rotation(grid, g.R);

    const int dim = grid.dim;
    std::array<std::array<int, 3>, 3> rt{};  // R^T restricted to the grid axes
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) rt[i][j] = static_cast<int>(std::round(g.R.matrix()(j, i)));

    WaveFunction out(grid);
    auto& amps = out.amplitudes();
    std::array<int, 3> j{};
    std::array<int, 3> q{};
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        double p2 = 0.0;
        double pa = 0.0;
        for (int k = 0; k < dim; ++k) {
            j[k] = grid.centered_index(idx, k);
            const double p = j[k] * grid.spacing;
            p2 += p * p;
            pa += p * g.a[k];
        }
        for (int k = 0; k < dim; ++k) {
            int acc = 0;
            for (int l = 0; l < dim; ++l) acc += rt[k][l] * (j[l] - shift[static_cast<std::size_t>(l)]);
            q[k] = acc;
        }
        const double energy = label.u + p2 / (2.0 * label.mass);
        const double phase = xg.theta + energy * g.b + pa;
        amps[idx] = std::polar(1.0, phase) * psi[grid.flat_index(q.data())];
    }
    return out;
}

double verify_composition(const RepLabel& label, const FactorSystem& fs, const GroupElement& g1,
                          const GroupElement& g2, const WaveFunction& psi) {
    const WaveFunction lhs = apply_rep(label, fs, {0.0, g1}, apply_rep(label, fs, {0.0, g2}, psi));
    const WaveFunction rhs =
        apply_rep(label, fs, {0.0, group::compose(g1, g2)}, psi).scaled(group::omega(fs, g1, g2));
    return max_abs_difference(lhs, rhs);
}

ShiftComparison equivalence_shift(const RepLabel& label, const FactorSystem& fs, double u_shift,
                                  const GroupElement& g, const WaveFunction& psi) {
    ShiftComparison out;
    out.lhs = apply_rep(label, fs, {0.0, g}, psi);
    const RepLabel lowered{label.mass, label.u - u_shift};
    out.rhs = apply_rep(lowered, fs, {0.0, g}, psi).scaled(std::polar(1.0, u_shift * g.b));
    out.residual = max_abs_difference(out.lhs, out.rhs);
    return out;
}

DirectSumState::DirectSumState(std::vector<Summand> summands) : summands_(std::move(summands)) {
    if (summands_.empty()) throw Error(ErrorCode::StructureMismatch, "direct sum needs a summand");
    const auto& first = summands_.front();
    for (const auto& s : summands_) {
        require_same_grid(first.psi.grid(), s.psi.grid());
        if (s.label.mass != first.label.mass) {
            throw Error(ErrorCode::StructureMismatch, "summands must share one mass");
        }
    }
}

double DirectSumState::norm_squared() const {
    double n = 0.0;
    for (const auto& s : summands_) n += s.psi.norm_squared();
    return n;
}

DirectSumState direct_sum_apply(const DirectSumState& state, const FactorSystem& fs,
                                const ExtendedElement& g) {
    std::vector<Summand> out;
    out.reserve(state.size());
    for (const auto& s : state.summands()) out.push_back({s.label, apply_rep(s.label, fs, g, s.psi)});
    return DirectSumState(std::move(out));
}

DirectSumState project(const DirectSumState& state, std::size_t index) {
    if (index >= state.size()) throw Error(ErrorCode::IndexOutOfRange, "no such summand");
    std::vector<Summand> out = state.summands();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i != index) out[i].psi = WaveFunction(out[i].psi.grid());
    }
    return DirectSumState(std::move(out));
}

complex inner_product(const DirectSumState& s1, const DirectSumState& s2) {
    if (s1.size() != s2.size()) throw Error(ErrorCode::StructureMismatch, "summand counts differ");
    complex acc = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        if (s1.summands()[i].label.mass != s2.summands()[i].label.mass) {
            throw Error(ErrorCode::StructureMismatch, "masses differ");
        }
        acc += inner_product(s1.summands()[i].psi, s2.summands()[i].psi);
    }
    return acc;
}

double measure_internal_energy(const DirectSumState& state, const FactorSystem& fs, double b) {
    if (state.size() != 1) throw Error(ErrorCode::StructureMismatch, "expected a single summand");
    if (b == 0.0) throw Error(ErrorCode::InvalidArgument, "time step must be nonzero");
    const Summand& s = state.summands().front();
    const WaveFunction evolved = apply_rep(s.label, fs, {0.0, GroupElement::time_translation(b)}, s.psi);
    const MomentumGrid& grid = s.psi.grid();

    double peak = 0.0;
    for (const auto& z : s.psi.amplitudes()) peak = std::max(peak, std::abs(z));
    const double floor = 1e-8 * peak;

    double lo = INFINITY;
    double hi = -INFINITY;
    std::vector<double> phases;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(s.psi[i]) <= floor) continue;
        double p2 = 0.0;
        for (int k = 0; k < grid.dim; ++k) p2 += std::pow(grid.momentum(i, k), 2);
        const double raw = std::arg(evolved[i] / s.psi[i]);
        const double residual = raw - p2 / (2.0 * s.label.mass) * b;
        lo = std::min(lo, residual);
        hi = std::max(hi, residual);
        phases.push_back(residual);
    }
    if (phases.empty()) throw Error(ErrorCode::InvalidArgument, "state has no support");
    if (hi - lo > 1e-6) {
        throw Error(ErrorCode::PhaseWrap, "per-point phases disagree; shorten the time step");
    }
    return pairwise_sum<double>(phases) / static_cast<double>(phases.size()) / b;
}

}  // namespace galilei::rep
