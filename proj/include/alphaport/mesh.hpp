#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphaport/characteristic.hpp"
#include "alphaport/circuit.hpp"
#include "alphaport/nodal_solver.hpp"

namespace alphaport {

/// Resistive formulation: every element obeys v = f(i) and the port is driven
/// by a current source i_in. The mesh basis is an explicit input: one loop
/// with id "in" giving the source path from a to b, plus KVL loops whose
/// currents are the unknowns.
struct MeshSolution {
    std::vector<std::string> mesh_ids;
    std::vector<double> mesh_currents;
    std::vector<double> branch_currents;  ///< along the declared orientation
    double i_in = 0.0;
    double input_voltage = 0.0;  ///< drop from a to b along the source path
    /// input_voltage / (D i_in^alpha) for a single-term f, empty otherwise.
    std::optional<double> phi_meshes;
    double residual_norm = 0.0;
    double relative_residual = 0.0;
    int iterations = 0;
};

/// Throws InvalidCircuit when the loops are not closed, the "in" path does not
/// lead from a to b, or a branch appears in more than two loops.
void validate_mesh_basis(const Circuit& c, std::span<const MeshLoop> loops);

/// Uses `c.meshes()` as the basis.
MeshSolution mesh_solve(const Circuit& c, const Characteristic& f_resistive, double i_in,
                        const SolverOptions& options = {});
MeshSolution mesh_solve(const Circuit& c, std::span<const MeshLoop> loops,
                        const Characteristic& f_resistive, double i_in,
                        const SolverOptions& options = {});

/// 1 / [phi_nodes(1/alpha)]^alpha.
double phi_meshes_from_nodes(const std::function<double(double)>& phi_nodes, double alpha);

/// Closed-form phi_meshes(alpha) of fig_b1:
/// q / [1 + 2^{1/alpha} + q^{1/alpha}]^alpha with q = 2 + (1 + 2^{1/alpha})^alpha.
double phi_b6_closed_form(double alpha);

/// A power-law one-port (alpha, D, phi(.)) in one formulation; `to_dual`
/// returns the other formulation: exponent beta = 1/alpha, coefficient
/// D^{-beta}, and phi_dual(beta) = [phi(1/beta)]^{-beta}.
struct PowerLawPort {
    double alpha = 1.0;
    double coefficient = 1.0;
    std::function<double(double)> phi;

    /// phi evaluated at this port's own alpha.
    double phi_value() const { return phi(alpha); }
    PowerLawPort to_dual() const;
};

}  // namespace alphaport
