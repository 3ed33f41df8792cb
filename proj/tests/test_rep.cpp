#include "doctest.h"

#include "galilei/error.hpp"
#include "galilei/rep.hpp"
#include "galilei/verify.hpp"

#include <cmath>
#include <random>

using namespace galilei;
using namespace galilei::rep;
using group::GroupElement;
using group::Vec3;

namespace {

const MomentumGrid kGrid{2, 64, 1.0 / 16.0};
const double kMass = 1.0;

WaveFunction random_state(const MomentumGrid& grid, std::mt19937_64& rng) {
    // random phases on top of the verification envelope
    std::uniform_real_distribution<double> ph(-3.14159, 3.14159);
    WaveFunction psi = verify::test_wavefunction(grid);
    for (auto& z : psi.amplitudes()) z *= std::polar(1.0, ph(rng));
    return psi;
}

}  // namespace

TEST_CASE("grid layout") {
    const MomentumGrid g{2, 4, 0.5};
    CHECK(g.size() == 16);
    CHECK(g.momentum(0, 0) == -1.0);
    CHECK(g.momentum(15, 1) == 0.5);
    const int c[2] = {2, -2};  // wraps to -2 on axis 0
    CHECK(g.flat_index(c) == 0);
    CHECK_THROWS_AS((MomentumGrid{2, 6, 0.5}.validate()), Error);
    CHECK_THROWS_AS((MomentumGrid{4, 8, 0.5}.validate()), Error);
}

TEST_CASE("apply_rep: identity, central phase, time translation at a delta") {
    const FactorSystem fs(kMass);
    const RepLabel label{kMass, 2.5};
    std::mt19937_64 rng(1);
    const WaveFunction psi = random_state(kGrid, rng);

    CHECK(max_abs_difference(apply_rep(label, fs, {}, psi), psi) == 0.0);

    const double theta = 0.83;
    const auto phased = apply_rep(label, fs, {theta, {}}, psi);
    CHECK(max_abs_difference(phased, psi.scaled(std::polar(1.0, theta))) < 1e-15);

    // delta at p0 = (3, -5) dp; phase e^{i(u + p0^2/2m) b}
    const WaveFunction d = WaveFunction::delta(kGrid, {3, -5});
    const double b = 0.7;
    const auto out = apply_rep(label, fs, {0.0, GroupElement::time_translation(b)}, d);
    const double p0sq = (9.0 + 25.0) * kGrid.spacing * kGrid.spacing;
    const int idx[2] = {3, -5};
    const auto expected = std::polar(1.0, (2.5 + p0sq / 2.0) * b) * d[kGrid.flat_index(idx)];
    CHECK(std::abs(out[kGrid.flat_index(idx)] - expected) < 1e-14);
}

TEST_CASE("apply_rep errors") {
    const FactorSystem fs(kMass);
    const RepLabel label{kMass, 0.0};
    const WaveFunction psi = verify::test_wavefunction(kGrid);
    CHECK_THROWS_AS(apply_rep(label, fs, {0.0, GroupElement::boost(Vec3(0.3 * kGrid.spacing, 0, 0))}, psi), Error);
    CHECK_THROWS_AS(apply_rep(label, fs, {0.0, GroupElement::boost(Vec3(0, 0, kGrid.spacing))}, psi), Error);
    Eigen::AngleAxisd tilt(0.3, Vec3::UnitZ());
    CHECK_THROWS_AS(
        apply_rep(label, fs, {0.0, GroupElement::rotation(group::Rotation(tilt.toRotationMatrix()))}, psi), Error);
    // a 90 degree turn about x would mix the y axis with the off-grid z axis
    Eigen::AngleAxisd ninety(M_PI / 2, Vec3::UnitX());
    group::Mat3 m = ninety.toRotationMatrix().array().round();
    try {
        apply_rep(label, fs, {0.0, GroupElement::rotation(group::Rotation(m))}, psi);
        FAIL("expected IncompatibleRotation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IncompatibleRotation);
    }
}

TEST_CASE("grid rotation groups") {
    CHECK(grid_rotations(3).size() == 24);
    CHECK(grid_rotations(2).size() == 8);
    CHECK(grid_rotations(1).size() == 8);
}

TEST_CASE("unitarity and ray composition on random lattice pairs") {
    const FactorSystem fs(kMass);
    const RepLabel label{kMass, 0.1};
    std::mt19937_64 rng(42);
    double unitarity = 0.0;
    double composition = 0.0;
    for (int i = 0; i < 50; ++i) {
        const WaveFunction psi = random_state(kGrid, rng);
        const auto g1 = verify::random_lattice_element(rng, kGrid, kMass);
        const auto g2 = verify::random_lattice_element(rng, kGrid, kMass);
        unitarity = std::max(unitarity, std::abs(apply_rep(label, fs, {0.0, g1}, psi).norm_squared() - 1.0));
        composition = std::max(composition, verify_composition(label, fs, g1, g2, psi));
    }
    CHECK(unitarity < 1e-12);
    CHECK(composition < 1e-9);

    // the trivial pair
    const WaveFunction psi = random_state(kGrid, rng);
    CHECK(verify_composition(label, fs, {}, {}, psi) == 0.0);
}

TEST_CASE("flipped exponent breaks composition") {
    const FactorSystem flipped(kMass, -1.0);
    const RepLabel label{kMass, 0.0};
    const WaveFunction psi = verify::test_wavefunction(kGrid);
    GroupElement boost = GroupElement::boost(Vec3(4 * kGrid.spacing, 0, 0));
    GroupElement shift = GroupElement::translation(Vec3(0.5, 0, 0));
    CHECK(verify_composition(label, flipped, boost, shift, psi) > 0.1);
}

TEST_CASE("Weyl phase from translation-boost reordering") {
    const FactorSystem fs(kMass);
    const RepLabel label{kMass, 0.0};
    std::mt19937_64 rng(8);
    const WaveFunction psi = random_state(kGrid, rng);
    const Vec3 a(0.9, -1.3, 0.0);
    const Vec3 v(5 * kGrid.spacing, -3 * kGrid.spacing, 0.0);
    const auto A = GroupElement::translation(a);
    const auto V = GroupElement::boost(v);
    const auto av = apply_rep(label, fs, {0.0, A}, apply_rep(label, fs, {0.0, V}, psi));
    const auto va = apply_rep(label, fs, {0.0, V}, apply_rep(label, fs, {0.0, A}, psi));
    CHECK(max_abs_difference(av, va.scaled(std::polar(1.0, kMass * a.dot(v)))) < 1e-9);
    CHECK(max_abs_difference(av, va.scaled(std::polar(1.0, -kMass * a.dot(v)))) > 1e-3);
}

TEST_CASE("zero of energy is arbitrary") {
    const FactorSystem fs(kMass);
    std::mt19937_64 rng(5);
    const WaveFunction psi = random_state(kGrid, rng);
    const auto g = verify::random_lattice_element(rng, kGrid, kMass);

    CHECK(equivalence_shift({kMass, 4.0}, fs, 0.0, g, psi).residual == 0.0);

    auto no_time = g;
    no_time.b = 0.0;
    CHECK(equivalence_shift({kMass, 4.0}, fs, 2.5, no_time, psi).residual < 1e-15);

    auto unit_time = g;
    unit_time.b = 1.0;
    CHECK(equivalence_shift({kMass, 5.0}, fs, 3.0, unit_time, psi).residual < 1e-12);
}

TEST_CASE("direct sums") {
    const FactorSystem fs(kMass);
    const WaveFunction d = WaveFunction::delta(kGrid, {2, 1});
    const int idx[2] = {2, 1};
    const std::size_t at = kGrid.flat_index(idx);

    const DirectSumState single({{{kMass, 1.5}, d}});
    const double b = 0.37;
    const GroupElement tb = GroupElement::time_translation(b);
    const auto one = direct_sum_apply(single, fs, {0.0, tb});
    CHECK(max_abs_difference(one.summands()[0].psi, apply_rep({kMass, 1.5}, fs, {0.0, tb}, d)) == 0.0);

    const double u = 1.5, up = 4.0;
    const DirectSumState pair({{{kMass, u}, d}, {{kMass, up}, d}});
    const auto evolved = direct_sum_apply(pair, fs, {0.0, tb});
    CHECK(evolved.size() == 2);
    const double kin = 5.0 * kGrid.spacing * kGrid.spacing / 2.0;
    const auto z0 = evolved.summands()[0].psi[at] / d[at];
    const auto z1 = evolved.summands()[1].psi[at] / d[at];
    CHECK(std::abs(z0 - std::polar(1.0, (u + kin) * b)) < 1e-14);
    CHECK(std::abs(z1 - std::polar(1.0, (up + kin) * b)) < 1e-14);
    CHECK(std::abs(z1 / z0 - std::polar(1.0, (up - u) * b)) < 1e-14);

    // D_u + D_u' = e^{iub} [D_0 + D_{u'-u}]
    std::mt19937_64 rng(77);
    const WaveFunction psi = verify::test_wavefunction(kGrid);
    const auto g = verify::random_lattice_element(rng, kGrid, kMass);
    const auto lhs = direct_sum_apply(DirectSumState({{{kMass, u}, psi}, {{kMass, up}, psi}}), fs, {0.0, g});
    const auto rhs = direct_sum_apply(DirectSumState({{{kMass, 0.0}, psi}, {{kMass, up - u}, psi}}), fs, {0.0, g});
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(max_abs_difference(lhs.summands()[i].psi,
                                 rhs.summands()[i].psi.scaled(std::polar(1.0, u * g.b))) < 1e-12);
    }
}

TEST_CASE("projections and block orthogonality") {
    std::mt19937_64 rng(3);
    const WaveFunction a = random_state(kGrid, rng).scaled(0.6);
    const WaveFunction b = random_state(kGrid, rng).scaled(0.8);
    const DirectSumState s({{{kMass, 0.0}, a}, {{kMass, 0.0}, b}});

    const auto p0 = project(s, 0);
    const auto p1 = project(s, 1);
    CHECK(inner_product(project(p0, 0), p0) == inner_product(p0, p0));
    CHECK(inner_product(p0, p1) == std::complex<double>(0.0, 0.0));
    CHECK(std::abs(s.norm_squared() - p0.norm_squared() - p1.norm_squared()) < 1e-12);
    CHECK_THROWS_AS(project(s, 2), Error);

    // identical wavefunction and identical u in different slots
    const DirectSumState left({{{kMass, 0.0}, a}, {{kMass, 0.0}, WaveFunction(kGrid)}});
    const DirectSumState right({{{kMass, 0.0}, WaveFunction(kGrid)}, {{kMass, 0.0}, a}});
    CHECK(inner_product(left, right) == std::complex<double>(0.0, 0.0));

    const auto self = inner_product(s, s);
    CHECK(self.imag() == 0.0);
    CHECK(self.real() > 0.0);

    // 2-point grid, (1,0)+(0,0) with itself: dp
    const MomentumGrid tiny{1, 2, 0.25};
    const WaveFunction e0(tiny, {1.0, 0.0});
    const DirectSumState t({{{kMass, 0.0}, e0}, {{kMass, 0.0}, WaveFunction(tiny)}});
    CHECK(inner_product(t, t) == std::complex<double>(0.25, 0.0));

    CHECK_THROWS_AS(inner_product(t, DirectSumState({{{kMass, 0.0}, e0}})), Error);
    CHECK_THROWS_AS(inner_product(s, DirectSumState({{{kMass, 0.0}, e0}, {{kMass, 0.0}, e0}})), Error);
}

TEST_CASE("internal energy round trip") {
    const FactorSystem fs(kMass);
    const MomentumGrid grid{2, 256, 1.0 / 16.0};
    const WaveFunction psi = WaveFunction::gaussian(grid, 8.0);
    for (double u : {-3.0, 0.0, 0.1, 2.5, 7.0}) {
        const double measured = measure_internal_energy(DirectSumState({{{kMass, u}, psi}}), fs, 0.01);
        CHECK(std::abs(measured - u) <= 1e-9 * std::max(1.0, std::abs(u)));
    }
    CHECK(measure_internal_energy(DirectSumState({{{kMass, 0.0}, psi}}), fs, 0.01) == doctest::Approx(0.0));

    // two deltas with different p: same extracted u
    const WaveFunction two(grid, [&] {
        std::vector<std::complex<double>> amps(grid.size());
        const int i1[2] = {4, 0}, i2[2] = {-20, 9};
        amps[grid.flat_index(i1)] = 1.0;
        amps[grid.flat_index(i2)] = 1.0;
        return amps;
    }());
    CHECK(measure_internal_energy(DirectSumState({{{kMass, 1.25}, two}}), fs, 0.02) == doctest::Approx(1.25));

    // kinetic phase wraps at the grid edge for a long step
    CHECK_THROWS_AS(measure_internal_energy(DirectSumState({{{kMass, 0.0}, verify::test_wavefunction(grid)}}), fs, 2.0),
                    Error);
}
