#include "doctest.h"

#include "galilei/verify.hpp"

using namespace galilei;

namespace {

verify::Options small_options() {
    verify::Options o;
    o.grid = {2, 64, 1.0 / 16.0};
    o.seed = 11;
    o.composition_pairs = 40;
    return o;
}

}  // namespace

TEST_CASE("all laws hold on a small grid") {
    const auto results = verify::run_all(small_options());
    REQUIRE(results.size() == 8);
    const char* names[] = {"cocycle",     "composition", "unitarity",           "zero_of_energy",
                           "common_zero", "weyl_phase",  "block_orthogonality", "dnr_coefficients"};
    for (std::size_t i = 0; i < results.size(); ++i) {
        CHECK(results[i].name == names[i]);
        INFO(results[i].name, " residual ", results[i].max_residual);
        CHECK(results[i].passed());
    }
    CHECK(results[6].max_residual == 0.0);
}

TEST_CASE("flipped exponent sign fails composition only") {
    auto o = small_options();
    o.flip_gamma_sign = true;
    const auto results = verify::run_all(o);
    CHECK(results[0].passed());
    CHECK_FALSE(results[1].passed());
    CHECK(results[1].max_residual > 0.1);
    CHECK(results[2].passed());
}

TEST_CASE("laws are grid-size independent") {
    for (int n : {2, 4, 8}) {
        for (int dim : {1, 2, 3}) {
            verify::Options o;
            o.grid = {dim, n, 0.5};
            o.seed = 3;
            o.cocycle_triples = 50;
            o.composition_pairs = 20;
            for (const auto& r : verify::run_all(o)) {
                INFO("dim ", dim, " n ", n, " ", r.name, " ", r.max_residual);
                CHECK(r.passed());
            }
        }
    }
}

TEST_CASE("same seed, same residuals") {
    const auto a = verify::run_all(small_options());
    const auto b = verify::run_all(small_options());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].max_residual == b[i].max_residual);
}
