#include "galilei/verify.hpp"

#include "galilei/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace galilei::verify {

namespace {

using group::ExtendedElement;
using group::FactorSystem;
using group::GroupElement;
using rep::DirectSumState;
using rep::RepLabel;
using rep::WaveFunction;

constexpr std::array kEnergies{-3.0, 0.0, 0.1, 7.0};

group::Vec3 random_translation(std::mt19937_64& rng, const rep::MomentumGrid& grid) {
    std::uniform_real_distribution<double> space(-2.0, 2.0);
    group::Vec3 a = group::Vec3::Zero();
    for (int k = 0; k < grid.dim; ++k) a[k] = space(rng);
    return a;
}

LawResult cocycle(const FactorSystem& fs, std::mt19937_64& rng, int triples) {
    LawResult r{"cocycle", 0.0, 1e-12};
    std::uniform_real_distribution<double> time(-2.0, 2.0);
    std::uniform_real_distribution<double> space(-2.0, 2.0);
    std::normal_distribution<double> gauss;
    auto element = [&] {
        GroupElement g;
        g.b = time(rng);
        g.a = {space(rng), space(rng), space(rng)};
        g.v = {space(rng), space(rng), space(rng)};
        g.R = group::Rotation(Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng))
                                  .normalized()
                                  .toRotationMatrix());
        return g;
    };
    for (int i = 0; i < triples; ++i) {
        const auto g1 = element();
        const auto g2 = element();
        const auto g3 = element();
        r.max_residual = std::max(r.max_residual, group::cocycle_residual(fs, g1, g2, g3));
    }
    return r;
}

/// Composition and unitarity share the same sampled pairs.
std::array<LawResult, 2> composition_and_unitarity(const FactorSystem& fs, const Options& o,
                                                   std::mt19937_64& rng) {
    LawResult comp{"composition", 0.0, 1e-9};
    LawResult unit{"unitarity", 0.0, 1e-12};
    const RepLabel label{o.mass, 0.1};
    const WaveFunction psi = test_wavefunction(o.grid);
    const double n0 = psi.norm_squared();
    for (int i = 0; i < o.composition_pairs; ++i) {
        const auto g1 = random_lattice_element(rng, o.grid, o.mass);
        const auto g2 = random_lattice_element(rng, o.grid, o.mass);
        comp.max_residual = std::max(comp.max_residual, rep::verify_composition(label, fs, g1, g2, psi));
        const double n1 = rep::apply_rep(label, fs, ExtendedElement{0.0, g1}, psi).norm_squared();
        unit.max_residual = std::max(unit.max_residual, std::abs(n1 - n0));
    }
    return {comp, unit};
}

LawResult zero_of_energy(const FactorSystem& fs, const Options& o, std::mt19937_64& rng) {
    LawResult r{"zero_of_energy", 0.0, 1e-12};
    const WaveFunction psi = test_wavefunction(o.grid);
    for (double u : kEnergies) {
        for (double up : kEnergies) {
            const auto g = random_lattice_element(rng, o.grid, o.mass);
            r.max_residual = std::max(r.max_residual, rep::equivalence_shift({o.mass, up}, fs, u, g, psi).residual);
        }
    }
    return r;
}

/// D_u + D_u' against e^{iub} (D_0 + D_{u'-u}), slot by slot.
LawResult common_zero(const FactorSystem& fs, const Options& o, std::mt19937_64& rng) {
    LawResult r{"common_zero", 0.0, 1e-12};
    const WaveFunction psi = test_wavefunction(o.grid);
    for (double u : kEnergies) {
        for (double up : kEnergies) {
            const auto g = random_lattice_element(rng, o.grid, o.mass);
            const ExtendedElement x{0.0, g};
            const auto lhs = rep::direct_sum_apply(DirectSumState({{{o.mass, u}, psi}, {{o.mass, up}, psi}}), fs, x);
            const auto rhs =
                rep::direct_sum_apply(DirectSumState({{{o.mass, 0.0}, psi}, {{o.mass, up - u}, psi}}), fs, x);
            const auto phase = std::polar(1.0, u * g.b);
            for (std::size_t s = 0; s < 2; ++s) {
                r.max_residual = std::max(r.max_residual, rep::max_abs_difference(lhs.summands()[s].psi,
                                                                                  rhs.summands()[s].psi.scaled(phase)));
            }
        }
    }
    return r;
}

LawResult weyl_phase(const FactorSystem& fs, const Options& o, std::mt19937_64& rng) {
    LawResult r{"weyl_phase", 0.0, 1e-9};
    const RepLabel label{o.mass, 0.0};
    const WaveFunction psi = test_wavefunction(o.grid);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_translation(rng, o.grid);
        const auto v = random_lattice_element(rng, o.grid, o.mass).v;
        const ExtendedElement A{0.0, GroupElement::translation(a)};
        const ExtendedElement V{0.0, GroupElement::boost(v)};
        const auto av = rep::apply_rep(label, fs, A, rep::apply_rep(label, fs, V, psi));
        const auto va = rep::apply_rep(label, fs, V, rep::apply_rep(label, fs, A, psi));
        r.max_residual =
            std::max(r.max_residual, rep::max_abs_difference(av, va.scaled(std::polar(1.0, o.mass * a.dot(v)))));
    }
    return r;
}

/// Cross-slot inner products, with equal labels in both slots included.
LawResult block_orthogonality(const Options& o) {
    LawResult r{"block_orthogonality", 0.0, 0.0, true};
    const WaveFunction psi = test_wavefunction(o.grid);
    const WaveFunction zero(o.grid);
    for (double u : kEnergies) {
        for (double up : kEnergies) {
            const DirectSumState s({{{o.mass, u}, psi}, {{o.mass, up}, psi}});
            const DirectSumState left({{{o.mass, u}, psi}, {{o.mass, up}, zero}});
            const DirectSumState right({{{o.mass, u}, zero}, {{o.mass, up}, psi}});
            r.max_residual = std::max(r.max_residual, std::abs(rep::inner_product(rep::project(s, 0),
                                                                                  rep::project(s, 1))));
            r.max_residual = std::max(r.max_residual, std::abs(rep::inner_product(left, right)));
        }
    }
    return r;
}

/// Amplitudes on (D|2>, E|3>, F|2>, G|3>) against (-1, 1, 1, 1)/2 up to a global phase.
LawResult dnr_regression(const Options& o) {
    LawResult r{"dnr_coefficients", 0.0, 1e-10};
    models::Params p;
    p.grid = o.grid;
    p.mass = o.mass;
    p.envelope_width_cells = std::max(0.5, o.grid.points_per_axis / 32.0);
    const auto c = models::dnr_coefficients(p);
    const std::array<double, 4> expected{-0.5, 0.5, 0.5, 0.5};
    const auto global = c[0] / expected[0];
    const auto phase = std::abs(global) > 0.0 ? global / std::abs(global) : rep::complex(1.0);
    for (std::size_t k = 0; k < 4; ++k)
        r.max_residual = std::max(r.max_residual, std::abs(c[k] - phase * expected[k]));
    return r;
}

}  // namespace

std::vector<LawResult> run_all(const Options& options) {
    options.grid.validate();
    const FactorSystem fs(options.mass, options.flip_gamma_sign ? -1.0 : 1.0);
    std::mt19937_64 rng(options.seed);
    std::vector<LawResult> out;
    out.push_back(cocycle(fs, rng, options.cocycle_triples));
    const auto [comp, unit] = composition_and_unitarity(fs, options, rng);
    out.push_back(comp);
    out.push_back(unit);
    out.push_back(zero_of_energy(fs, options, rng));
    out.push_back(common_zero(fs, options, rng));
    out.push_back(weyl_phase(fs, options, rng));
    out.push_back(block_orthogonality(options));
    out.push_back(dnr_regression(options));
    return out;
}

}  // namespace galilei::verify
