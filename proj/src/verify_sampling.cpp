#include "galilei/verify.hpp"

#include <algorithm>
#include <cmath>

namespace galilei::verify {

rep::WaveFunction test_wavefunction(const rep::MomentumGrid& grid) {
    const double width = std::max(0.5, grid.points_per_axis / 32.0);
    rep::WaveFunction psi(grid);
    auto& amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        double r2 = 0.0;
        double skew = 0.0;
        bool nyquist = false;
        for (int k = 0; k < grid.dim; ++k) {
            const int c = grid.centered_index(i, k);
            nyquist = nyquist || c == -grid.points_per_axis / 2;
            r2 += static_cast<double>(c) * c;
            skew += (k + 1) * 0.1 * c;
        }
        // a mild momentum-dependent phase keeps the state generic
        if (!nyquist) amps[i] = std::polar(std::exp(-0.5 * r2 / (width * width)), skew / width);
    }
    return psi.normalized();
}

int max_boost_cells(const rep::MomentumGrid& grid) {
    return grid.points_per_axis >= 64 ? grid.points_per_axis / 8 : 0;
}

group::GroupElement random_lattice_element(std::mt19937_64& rng, const rep::MomentumGrid& grid,
                                           double mass) {
    static thread_local std::vector<std::vector<group::Rotation>> rotations(4);
    auto& rots = rotations[static_cast<std::size_t>(grid.dim)];
    if (rots.empty()) rots = rep::grid_rotations(grid.dim);

    const int cells = max_boost_cells(grid);
    std::uniform_real_distribution<double> time(-1.0, 1.0);
    std::uniform_real_distribution<double> space(-2.0, 2.0);
    std::uniform_int_distribution<int> shift(-cells, cells);
    std::uniform_int_distribution<std::size_t> pick(0, rots.size() - 1);

    group::GroupElement g;
    g.b = time(rng);
    for (int k = 0; k < grid.dim; ++k) {
        g.a[k] = space(rng);
        g.v[k] = shift(rng) * grid.spacing / mass;
    }
    g.R = rots[pick(rng)];
    return g;
}

}  // namespace galilei::verify
