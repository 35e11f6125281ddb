#pragma once

#include <span>
#include <vector>

#include "alphaport/characteristic.hpp"
#include "alphaport/circuit.hpp"

namespace alphaport {

struct SolverOptions {
    /// Iteration cap per continuation stage. Defaults to 200, or to the value
    /// of the ALPHAPORT_MAX_ITERS environment variable.
    int max_iterations = 0;
    /// Per-node relative KCL tolerance: |residual_k| <= tolerance * (sum of
    /// magnitudes of the currents meeting at k).
    double tolerance = 1e-12;
};

/// DC operating point of an f-circuit driven by v_in between a and b.
struct DcSolution {
    double v_in = 0.0;
    std::vector<double> potentials;       ///< by node index; potential(b) = 0
    std::vector<double> branch_voltages;  ///< |drop|, >= 0
    std::vector<double> branch_currents;  ///< w * f(branch_voltage), >= 0
    /// +1 when the declared orientation carries the positive drop, -1 when the
    /// solution reversed it.
    std::vector<int> orientation;
    double input_current = 0.0;    ///< summed over branches incident to b
    double input_current_a = 0.0;  ///< same, summed at a
    double residual_norm = 0.0;    ///< max absolute KCL residual over internal nodes
    double relative_residual = 0.0;
    int iterations = 0;

    double potential(const Circuit& c, std::string_view node) const {
        return potentials.at(c.node(node));
    }
    /// Input power v_in * F(v_in).
    double input_power() const noexcept { return v_in * input_current; }
};

/// Solves KCL at every internal node with potential(a) = v_in, potential(b) = 0.
/// Throws InvalidCircuit for circuits that fail `validate`, DomainError for
/// v_in <= 0 and SolverError if Newton does not converge.
DcSolution solve_dc(const Circuit& c, const Characteristic& f, double v_in,
                    const SolverOptions& options = {});

/// Current drawn from the source, sum_{branches at b} w f(v_s). With
/// `at_a` the same sum is taken over branches incident to a.
double input_current_from_potentials(const Circuit& c, const Characteristic& f,
                                     std::span<const double> potentials, bool at_a = false);

/// Sum over branches of w * integral_0^{|v_s|} f. Strictly convex in the
/// internal potentials and minimised by the DC solution.
double co_content(const Circuit& c, const Characteristic& f, std::span<const double> potentials);

/// Per-term split of the input current: entry p is the current carried by
/// term p of f through the branches incident to b (or a).
std::vector<double> input_current_by_term(const Circuit& c, const Characteristic& f,
                                          std::span<const double> potentials, bool at_a = false);

}  // namespace alphaport
