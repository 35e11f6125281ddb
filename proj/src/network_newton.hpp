#pragma once

// Shared Newton machinery for nodal (KCL) and mesh (KVL) formulations.
//
// Both are minimisations of a separable convex content
//
//     E(y) = sum_s w_s * Psi(x_s),   x_s = offset_s + sum_k c_sk y_k,
//
// with Psi the co-content of the element characteristic. The gradient is the
// vector of KCL (or KVL) residuals; the Hessian is B^T diag(w f'(|x|)) B.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "alphaport/characteristic.hpp"

namespace alphaport::detail {

struct NetworkRow {
    std::vector<std::pair<std::size_t, double>> coeffs;
    double offset = 0.0;
    double weight = 1.0;
};

struct NetworkProblem {
    std::size_t unknowns = 0;
    std::vector<NetworkRow> rows;
    /// Magnitude of the driving quantity (v_in or i_in); sets the floor used
    /// to keep sublinear slopes finite and the stagnation threshold.
    double drive_scale = 1.0;
};

struct NewtonSettings {
    int max_iterations = 200;
    double tolerance = 1e-12;  ///< max_k |g_k| / sum_s |c_sk| w_s |f(x_s)|
};

struct NewtonResult {
    Eigen::VectorXd y;
    double relative_residual = 0.0;
    double absolute_residual = 0.0;  ///< max_k |g_k|
    int iterations = 0;
    bool converged = false;
};

/// Branch variables x = offset + B y.
Eigen::VectorXd branch_values(const NetworkProblem& p, const Eigen::VectorXd& y);

/// Sum of weighted co-contents at y.
double network_content(const NetworkProblem& p, const Characteristic& f, const Eigen::VectorXd& y);

/// Damped Newton from `start`. Never throws; inspect `converged`.
NewtonResult minimize_content(const NetworkProblem& p, const Characteristic& f,
                              Eigen::VectorXd start, const NewtonSettings& settings);

/// Exact minimiser for the unit linear element (f(x) = x).
Eigen::VectorXd linear_start(const NetworkProblem& p);

/// Iteration cap: `fallback`, or ALPHAPORT_MAX_ITERS when set to a positive integer.
int max_iterations_from_env(int fallback = 200);

}  // namespace alphaport::detail
