#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "alphaport/alpha_analysis.hpp"
#include "alphaport/error.hpp"
#include "linear_oracle.hpp"
#include "random_circuits.hpp"

using namespace alphaport;

TEST_SUITE("alpha-analysis") {

TEST_CASE("phi(1) is the input conductance of the linear circuit") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = testing::random_circuit(rng, 9);
        const auto p = alpha_solve(c, 1.0);
        CHECK(p.phi == doctest::Approx(testing::linear_conductance(c)).epsilon(1e-10));
        CHECK(p.phi_a_side == doctest::Approx(p.phi).epsilon(1e-10));
    }
    CHECK(alpha_solve(build_canonical(CanonicalCircuit::fig_a1), 1.0).phi == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("bridge phi matches its closed form") {
    const auto c = build_canonical(CanonicalCircuit::fig_a1);
    for (double alpha : {0.2, 0.5, 1.0, 1.7, 3.0, 7.0, 20.0}) {
        CHECK(alpha_solve(c, alpha).phi == doctest::Approx(phi_closed_form_fig_a1(alpha)).epsilon(1e-10));
    }
    CHECK(phi_closed_form_fig_a1(3.0) == doctest::Approx(1.132505911).epsilon(1e-9));
    CHECK(alpha_solve(c, 3.0).d_of("o") == doctest::Approx(0.490186008).epsilon(1e-8));
}

TEST_CASE("fig4 dividers give phi = 1 + 2 * 3^-alpha") {
    const auto c = build_canonical(CanonicalCircuit::fig4);
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        const auto p = alpha_solve(c, alpha);
        CHECK(p.phi == doctest::Approx(1.0 + 2.0 * std::pow(3.0, -alpha)).epsilon(1e-11));
        CHECK(p.d_of("c") == doctest::Approx(2.0 / 3.0));
        CHECK(p.d_of("f") == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("d and phi do not depend on v_in") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const auto c = testing::random_circuit(rng);
        const double alpha = std::uniform_real_distribution<double>(0.3, 4.0)(rng);
        const auto p1 = alpha_solve(c, alpha, 1.0);
        for (double v : {1e-3, 30.0}) {
            const auto pv = alpha_solve(c, alpha, v);
            CHECK(pv.phi == doctest::Approx(p1.phi).epsilon(1e-9));
            for (std::size_t k = 0; k < p1.d.size(); ++k) {
                CHECK(pv.d[k] == doctest::Approx(p1.d[k]).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("d sweep keeps grid order and classifies trends") {
    const auto c = build_canonical(CanonicalCircuit::fig_a1);
    const std::vector<double> grid{1, 1.5, 2, 3, 4, 6};
    const auto s = d_sweep(c, grid);
    REQUIRE(s.profiles.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(s.profiles[i].alpha == grid[i]);
    CHECK(s.verdicts[c.node("a")] == Monotonicity::constant);
    CHECK(s.verdicts[c.node("o")] == Monotonicity::nondecreasing);
    CHECK(s.verdicts[c.node("x")] == Monotonicity::nondecreasing);
    CHECK_FALSE(s.any_violation());
    CHECK(to_string(Monotonicity::violation) == "violation");
}

TEST_CASE("d sweep rejects bad grids") {
    const auto c = build_canonical(CanonicalCircuit::fig_a1);
    CHECK_THROWS_AS(d_sweep(c, std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(d_sweep(c, std::vector<double>{2, 1}), DomainError);
    CHECK_THROWS_AS(d_sweep(c, std::vector<double>{0, 1}), DomainError);
}

TEST_CASE("hardlimiter limit of the bridge") {
    // As alpha grows every element holds its drop, so the divider splits evenly.
    const auto h = hardlimiter_limit(build_canonical(CanonicalCircuit::fig_a1));
    CHECK(h.extrapolated[2] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(h.surrogate[2] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(h.extrapolated[3] == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("alpha must be positive") {
    CHECK_THROWS_AS(alpha_solve(build_canonical(CanonicalCircuit::fig_a1), 0.0), DomainError);
}

}
