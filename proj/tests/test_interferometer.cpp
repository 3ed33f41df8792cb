#include "doctest.h"

#include "galilei/error.hpp"
#include "galilei/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace galilei;
using namespace galilei::interf;

namespace {

constexpr double pi = std::numbers::pi;
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
const rep::MomentumGrid kGrid{2, 64, 1.0 / 16.0};
constexpr double kKick = 0.5;  // 8 cells

BeamEnsemble source(Doublet internal, const std::string& path = "A") {
    BeamEnsemble ens;
    ens.grid = kGrid;
    ens.levels = {0.0, 3.0, 1000.0};
    BeamMode m;
    m.path = path;
    m.envelope = std::make_shared<const rep::WaveFunction>(rep::WaveFunction::gaussian(kGrid, 4.0));
    m.internal = internal;
    ens.modes.push_back(m);
    return ens;
}

bool close(const Doublet& a, const Doublet& b, double tol = 1e-14) {
    return std::abs(a[0] - b[0]) < tol && std::abs(a[1] - b[1]) < tol;
}

const BeamMode& on(const BeamEnsemble& ens, const std::string& path) {
    for (const auto& m : ens.modes)
        if (m.path == path) return m;
    throw std::runtime_error("missing path " + path);
}

LightCrystal first_crystal(double r = 0.5) { return {r, true, {{"A", "C", "B", kKick}}}; }
LightCrystal second_crystal(double r = 0.5) {
    return {r, true, {{"B", "D", "F", kKick}, {"C", "G", "E", -kKick}}};
}

std::vector<OpticalElement> dnr_layout(bool pulses) {
    const double period = 2.0 * pi / (2.0 * kKick);
    std::vector<OpticalElement> els;
    if (pulses) els.push_back(MicrowavePulse{pi / 2, 0.0, {"A"}});
    els.push_back(first_crystal());
    els.push_back(FreeFlight{0.3});
    if (pulses) els.push_back(MicrowavePulse{pi / 2, 0.0, {"B", "C"}});
    els.push_back(second_crystal());
    els.push_back(FreeFlight{0.3});
    els.push_back(Screen::centered("DE", {"D", "E"}, period));
    els.push_back(Screen::centered("FG", {"F", "G"}, period));
    return els;
}

}  // namespace

TEST_CASE("microwave pulses") {
    const MicrowavePulse half{pi / 2, 0.0, {"A"}};
    CHECK(close(apply_pulse(source({1.0, 0.0}), half).modes[0].internal, {inv_sqrt2, inv_sqrt2}));
    CHECK(close(apply_pulse(source({-inv_sqrt2, inv_sqrt2}), half).modes[0].internal, {-1.0, 0.0}));
    CHECK(close(apply_pulse(source({inv_sqrt2, inv_sqrt2}), half).modes[0].internal, {0.0, 1.0}));

    // as matrices: two halves make the pi pulse, four make -1
    auto mul = [](const std::array<Doublet, 2>& x, const std::array<Doublet, 2>& y) {
        std::array<Doublet, 2> z{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        return z;
    };
    const auto h = pulse_matrix(pi / 2, 0.0);
    const auto full = pulse_matrix(pi, 0.0);
    const auto h2 = mul(h, h);
    const auto h4 = mul(h2, h2);
    for (int i = 0; i < 2; ++i) {
        CHECK(close(h2[i], full[i]));
        CHECK(close(h4[i], Doublet{i == 0 ? -1.0 : 0.0, i == 1 ? -1.0 : 0.0}));
    }
    CHECK(close(apply_pulse(source({1.0, 0.0}), {pi, 0.0, {"A"}}).modes[0].internal, {0.0, 1.0}));
    CHECK(close(apply_pulse(source({0.0, 1.0}), {pi, 0.0, {"A"}}).modes[0].internal, {-1.0, 0.0}));

    CHECK_THROWS_AS(apply_pulse(source({1.0, 0.0}), {pi, 0.0, {"Q"}}), Error);
}

TEST_CASE("light crystal") {
    const auto in = source({inv_sqrt2, inv_sqrt2});

    const auto blocked = apply_light_crystal(in, first_crystal(0.0));
    CHECK(on(blocked, "C").amplitude == 1.0);
    CHECK(on(blocked, "B").amplitude == 0.0);
    CHECK(close(on(blocked, "C").internal, in.modes[0].internal));

    const auto split = apply_light_crystal(in, first_crystal(0.5));
    CHECK(close({on(split, "C").amplitude * on(split, "C").internal[0], on(split, "C").amplitude * on(split, "C").internal[1]},
                {0.5, 0.5}));
    CHECK(close({on(split, "B").amplitude * on(split, "B").internal[0], on(split, "B").amplitude * on(split, "B").internal[1]},
                {-0.5, 0.5}));
    CHECK(on(split, "B").central_momentum[0] == kKick);
    CHECK(on(split, "C").central_momentum[0] == 0.0);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double th = 2 * pi * u(rng);
        const Doublet st{std::polar(std::cos(th), 2 * pi * u(rng)), std::polar(std::sin(th), 2 * pi * u(rng))};
        const auto out = apply_light_crystal(source(st), first_crystal(u(rng)));
        worst = std::max(worst, std::abs(out.norm_squared() - 1.0));
    }
    CHECK(worst < 1e-12);

    CHECK_THROWS_AS(apply_light_crystal(source({1.0, 0.0}, "Z"), first_crystal()), Error);
    CHECK_THROWS_AS(apply_light_crystal(in, first_crystal(1.5)), Error);
}

TEST_CASE("cavity transition") {
    const auto in = source({0.0, 1.0}, "1");
    const Cavity cav{CavityMode::coherent, "1", 1, {Level::lvl3, Level::lvl2}};
    const auto out = apply_cavity(in, cav, Rules::plain());
    CHECK(close(out.modes[0].internal, {1.0, 0.0}));
    REQUIRE(out.modes[0].sector.cavity_transition.has_value());
    CHECK_THROWS_AS(apply_cavity(in, Cavity{CavityMode::coherent, "2", 2, {}}, Rules::plain()), Error);
    CHECK_THROWS_AS(apply_cavity(in, Cavity{CavityMode::coherent, "1", 1, {Level::lvl3, Level::lvlE}}, Rules::plain()),
                    Error);
}

TEST_CASE("free flight") {
    auto in = source({1.0, 0.0});
    CHECK(propagate(in, {0.0}).modes[0].amplitude == in.modes[0].amplitude);

    // plane wave (single grid point): global phase only
    auto plane = in;
    plane.modes[0].envelope = std::make_shared<const rep::WaveFunction>(rep::WaveFunction::delta(kGrid, {5, 0}));
    const auto moved = propagate(plane, {1.7});
    CHECK(std::abs(moved.modes[0].weight() - 1.0) < 1e-14);

    // two sectors with u' - u = delta acquire relative phase e^{i delta t}
    auto two = in;
    two.modes.push_back(two.modes[0]);
    two.modes[1].sector.label_level = Level::lvl3;
    const double t = 0.4;
    const auto out = propagate(two, {t});
    const double delta = two.levels.e3 - two.levels.e2;
    CHECK(std::abs(out.modes[1].amplitude / out.modes[0].amplitude - std::polar(1.0, delta * t)) < 1e-14);
    CHECK(std::abs(out.norm_squared() - two.norm_squared()) < 1e-12);
}

TEST_CASE("detect: analytic two-beam fringe") {
    const double dp = 2.0 * kKick;
    const double period = 2.0 * pi / dp;
    auto ens = source({1.0, 0.0}, "D");
    ens.modes[0].amplitude = inv_sqrt2;
    ens.modes.push_back(ens.modes[0]);
    ens.modes[1].path = "E";
    ens.modes[1].central_momentum[0] = dp;
    const Screen screen = Screen::centered("DE", {"D", "E"}, period);

    const auto coherent = detect(ens, screen, Rules::plain());
    CHECK(std::abs(coherent.visibility - 1.0) < 1e-6);
    // I(x) = |env(x)|^2 |1/sqrt2 + e^{i dp x}/sqrt2|^2 = |env(x)|^2 (1 + cos(dp x))
    auto single = ens;
    single.modes.pop_back();
    single.modes[0].amplitude = 1.0;
    const auto one = detect(single, screen, Rules::plain());
    CHECK(one.visibility == 0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < screen.positions.size(); ++k) {
        const double oracle = one.intensity[k] * (1.0 + std::cos(dp * screen.positions[k]));
        worst = std::max(worst, std::abs(coherent.intensity[k] - oracle));
    }
    CHECK(worst < 1e-12);

    Rules split = Rules::plain();
    split.coherence_key = [](const BeamMode& m, Level) { return SectorKey{m.path == "D" ? 0L : 1L, 0, 0}; };
    CHECK(detect(ens, screen, split).visibility < 1e-10);

    // global phase on a whole sector leaves V alone
    auto shifted = ens;
    for (auto& m : shifted.modes) m.amplitude *= std::polar(1.0, 1.234);
    CHECK(std::abs(detect(shifted, screen, Rules::plain()).visibility - coherent.visibility) < 1e-12);
    auto one_sector = ens;
    one_sector.modes[1].amplitude *= std::polar(1.0, 1.234);
    CHECK(detect(one_sector, screen, split).visibility < 1e-10);
    // a relative phase inside one sector only moves the fringes
    CHECK(std::abs(detect(one_sector, screen, Rules::plain()).visibility - 1.0) < 1e-6);

    for (double v : {coherent.visibility, one.visibility}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    for (double i : coherent.intensity) CHECK(i >= 0.0);

    CHECK_THROWS_AS(detect(ens, Screen::centered("FG", {"F", "G"}, period), Rules::plain()), Error);
}

TEST_CASE("pipeline: plain interferometer and pulse-marked encoding") {
    CHECK(run_pipeline({}, source({1.0, 0.0}), Rules::plain()).final.modes.size() == 1);

    const auto plain = run_pipeline(dnr_layout(false), source({1.0, 0.0}), Rules::plain());
    REQUIRE(plain.profiles.size() == 2);
    CHECK(plain.profiles[0].visibility > 0.99);
    CHECK(plain.profiles[1].visibility > 0.99);
    CHECK(std::abs(plain.final.norm_squared() - 1.0) < 1e-10);

    const auto marked = run_pipeline(dnr_layout(true), source({1.0, 0.0}), Rules::plain());
    CHECK(marked.profiles[0].visibility < 1e-10);
    CHECK(marked.profiles[1].visibility < 1e-10);
    CHECK(std::abs(marked.final.norm_squared() - 1.0) < 1e-10);

    // without flight, the coefficients are exactly -1/2, 1/2, 1/2, 1/2
    std::vector<OpticalElement> bare{MicrowavePulse{pi / 2, 0.0, {"A"}}, first_crystal(),
                                     MicrowavePulse{pi / 2, 0.0, {"B", "C"}}, second_crystal()};
    const auto enc = run_pipeline(bare, source({1.0, 0.0}), Rules::plain()).final;
    auto coeff = [&](const char* p, int lvl) { return on(enc, p).amplitude * on(enc, p).internal[lvl]; };
    CHECK(std::abs(coeff("D", 0) + 0.5) < 1e-10);
    CHECK(std::abs(coeff("E", 1) - 0.5) < 1e-10);
    CHECK(std::abs(coeff("F", 0) - 0.5) < 1e-10);
    CHECK(std::abs(coeff("G", 1) - 0.5) < 1e-10);
    CHECK(std::abs(coeff("D", 1)) < 1e-15);
    CHECK(std::abs(coeff("E", 0)) < 1e-15);
}

TEST_CASE("transmitted-arm phase convention cancels in visibilities") {
    const auto base = run_pipeline(dnr_layout(false), source({1.0, 0.0}), Rules::plain());
    auto els = dnr_layout(false);
    // extra phase on every transmitted beam
    els.insert(els.begin() + 1, Hook{"phase C", [](const BeamEnsemble& e) {
                                         BeamEnsemble out = e;
                                         for (auto& m : out.modes)
                                             if (m.path == "C") m.amplitude *= std::polar(1.0, 0.77);
                                         return out;
                                     }});
    els.insert(els.begin() + 5, Hook{"phase D,G", [](const BeamEnsemble& e) {
                                         BeamEnsemble out = e;
                                         for (auto& m : out.modes)
                                             if (m.path == "D" || m.path == "G") m.amplitude *= std::polar(1.0, -2.1);
                                         return out;
                                     }});
    const auto moved = run_pipeline(els, source({1.0, 0.0}), Rules::plain());
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(moved.profiles[i].visibility - base.profiles[i].visibility) < 1e-6);
    }
}
