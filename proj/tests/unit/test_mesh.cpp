#include <doctest.h>

#include <cmath>
#include <vector>

#include "alphaport/alpha_analysis.hpp"
#include "alphaport/error.hpp"
#include "alphaport/mesh.hpp"

using namespace alphaport;

namespace {

// Mesh currents of the fig_b1 basis for v = i^alpha, by eliminating the two
// KVL equations by hand: j1 = (1 + 2^{1/a}) j2 and 1 - j1 = q^{1/a} j2.
std::pair<double, double> bridge_mesh_currents(double alpha, double i_in) {
    const double r2 = std::pow(2.0, 1.0 / alpha);
    const double q = 2.0 + std::pow(1.0 + r2, alpha);
    const double j2 = i_in / (1.0 + r2 + std::pow(q, 1.0 / alpha));
    return {(1.0 + r2) * j2, j2};
}

}  // namespace

TEST_SUITE("mesh-analysis") {

TEST_CASE("bridge mesh currents match hand elimination") {
    const auto c = build_canonical(CanonicalCircuit::fig_b1);
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        for (double i_in : {0.3, 1.0, 4.0}) {
            const auto m = mesh_solve(c, Characteristic::power_law(alpha), i_in);
            const auto [j1, j2] = bridge_mesh_currents(alpha, i_in);
            REQUIRE(m.mesh_ids.size() == 2);
            CHECK(m.mesh_currents[0] == doctest::Approx(j1).epsilon(1e-11));
            CHECK(m.mesh_currents[1] == doctest::Approx(j2).epsilon(1e-11));
            CHECK(m.input_voltage == doctest::Approx(std::pow(i_in - j1, alpha)).epsilon(1e-11));
            REQUIRE(m.phi_meshes.has_value());
            CHECK(*m.phi_meshes == doctest::Approx(phi_b6_closed_form(alpha)).epsilon(1e-10));
        }
    }
}

TEST_CASE("linear bridge: mesh phi is the input resistance") {
    const auto m = mesh_solve(build_canonical(CanonicalCircuit::fig_b1), Characteristic::power_law(1.0), 1.0);
    CHECK(*m.phi_meshes == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(1.0 / alpha_solve(build_canonical(CanonicalCircuit::fig_a1), 1.0).phi == doctest::Approx(0.625));
}

TEST_CASE("duality with the nodal phi") {
    const auto a1 = build_canonical(CanonicalCircuit::fig_a1);
    auto phi_nodes = [&](double a) { return alpha_solve(a1, a).phi; };
    for (double alpha : {0.5, 2.0, 3.0}) {
        CHECK(phi_meshes_from_nodes(phi_nodes, alpha) == doctest::Approx(phi_b6_closed_form(alpha)).epsilon(1e-10));
    }
}

TEST_CASE("multi-term resistive characteristic satisfies KVL") {
    const auto c = build_canonical(CanonicalCircuit::fig_b1);
    const auto f = parse_characteristic("1:1,0.5:2");
    const auto m = mesh_solve(c, f, 1.5);
    const auto& i = m.branch_currents;
    // Branches: 0 a-b, 1 a-o, 2 o-b, 3 o-x, 4 x-b.
    CHECK(f.eval_signed(i[1]) + f.eval_signed(i[2]) == doctest::Approx(f.eval_signed(i[0])).epsilon(1e-11));
    CHECK(f.eval_signed(i[3]) + f.eval_signed(i[4]) == doctest::Approx(f.eval_signed(i[2])).epsilon(1e-11));
    CHECK(i[0] + i[1] == doctest::Approx(1.5));
    CHECK(m.input_voltage == doctest::Approx(f.eval(i[0])).epsilon(1e-12));
    CHECK_FALSE(m.phi_meshes.has_value());
}

TEST_CASE("basis validation") {
    const auto c = build_canonical(CanonicalCircuit::fig_a1);
    const SignedBranch ab{0, 1}, ao{1, 1}, ob{2, 1}, ox{3, 1}, xb{4, 1};
    const MeshLoop in{"in", {ab}};
    const MeshLoop m1{"m1", {ao, ob, {0, -1}}};
    const MeshLoop m2{"m2", {ox, xb, {2, -1}}};
    CHECK_NOTHROW(validate_mesh_basis(c, std::vector<MeshLoop>{in, m1, m2}));
    CHECK_THROWS_AS(validate_mesh_basis(c, std::vector<MeshLoop>{m1, m2}), InvalidCircuit);
    CHECK_THROWS_AS(validate_mesh_basis(c, std::vector<MeshLoop>{in, m1, m1}), InvalidCircuit);
    CHECK_THROWS_AS(validate_mesh_basis(c, std::vector<MeshLoop>{in, MeshLoop{"m1", {ao, ob}}}), InvalidCircuit);
    CHECK_THROWS_AS(validate_mesh_basis(c, std::vector<MeshLoop>{MeshLoop{"in", {ao}}, m1}), InvalidCircuit);
    CHECK_THROWS_AS(validate_mesh_basis(c, std::vector<MeshLoop>{in, m1, MeshLoop{"m3", {ao, ob, {0, -1}}}}),
                    InvalidCircuit);
    CHECK_THROWS_AS(validate_mesh_basis(c, std::vector<MeshLoop>{in, MeshLoop{"m9", {{9, 1}}}}), InvalidCircuit);
    CHECK_THROWS_AS(mesh_solve(c, Characteristic::power_law(1.0), 1.0), InvalidCircuit);
    CHECK_THROWS_AS(mesh_solve(build_canonical(CanonicalCircuit::fig_b1), Characteristic::power_law(1.0), 0.0),
                    DomainError);
}

TEST_CASE("dual of the dual is the original port") {
    const auto a1 = build_canonical(CanonicalCircuit::fig_a1);
    PowerLawPort port{3.0, 2.0, [&](double a) { return alpha_solve(a1, a).phi; }};
    const auto dual = port.to_dual();
    CHECK(dual.alpha == doctest::Approx(1.0 / 3.0));
    CHECK(dual.coefficient == doctest::Approx(std::pow(2.0, -1.0 / 3.0)));
    CHECK(dual.phi_value() == doctest::Approx(std::pow(port.phi_value(), -1.0 / 3.0)));
    const auto back = dual.to_dual();
    CHECK(back.alpha == doctest::Approx(3.0));
    CHECK(back.coefficient == doctest::Approx(2.0));
    CHECK(back.phi_value() == doctest::Approx(port.phi_value()).epsilon(1e-10));
}

}
