#pragma once

#include <span>
#include <string>
#include <vector>

#include "alphaport/circuit.hpp"
#include "alphaport/nodal_solver.hpp"

namespace alphaport {

/// Result of the alpha-test for one exponent: the circuit with f(v) = v^alpha.
struct AlphaProfile {
    double alpha = 1.0;
    std::vector<std::string> nodes;  ///< node names, same order as `d`
    std::vector<double> d;           ///< v_k / v_in, in [0, 1]
    double phi = 0.0;                ///< sum over branches at b of w d^alpha
    double phi_a_side = 0.0;         ///< same coefficient summed at a

    double d_of(std::string_view node) const;
};

/// Solves the power-law circuit at v_in (default 1). d and phi do not depend
/// on v_in; the argument exists so that independence can be checked.
AlphaProfile alpha_solve(const Circuit& c, double alpha, double v_in = 1.0,
                         const SolverOptions& options = {});

/// Closed form of phi(alpha) for fig_a1:
/// 1 + (1 + 2^-alpha) / (1 + (1 + 2^-alpha)^{1/alpha})^alpha.
double phi_closed_form_fig_a1(double alpha);

enum class Monotonicity { constant, nondecreasing, nonincreasing, violation };

std::string_view to_string(Monotonicity m);

struct DSweep {
    std::vector<double> alphas;
    std::vector<std::string> nodes;
    std::vector<std::vector<double>> d;   ///< d[node][alpha index]
    std::vector<Monotonicity> verdicts;   ///< per node
    std::vector<AlphaProfile> profiles;   ///< per alpha

    bool any_violation() const;
};

/// d_k(alpha) over an ascending grid with a monotonicity verdict per node.
/// Differences within `tolerance` count as equal. Profiles are computed
/// concurrently; results are ordered as the grid.
DSweep d_sweep(const Circuit& c, std::span<const double> alphas, double tolerance = 1e-10);

/// Large-alpha limit of d_k (elements act as voltage hardlimiters).
struct HardlimiterLimit {
    std::vector<std::string> nodes;
    std::vector<double> surrogate;     ///< d at alpha = 64
    std::vector<double> extrapolated;  ///< Aitken delta^2 over alpha = 16, 32, 64
};

HardlimiterLimit hardlimiter_limit(const Circuit& c);

}  // namespace alphaport
