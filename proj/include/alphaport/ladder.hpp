#pragma once

#include <span>
#include <utility>
#include <vector>

#include "alphaport/characteristic.hpp"

namespace alphaport {

/// Infinite ladder of identical power-law conductors, each cell a top series
/// element, a bottom series element and a shunt.
///
/// lambda = v_in / v_cd is the voltage division across the first shunt; it is
/// the largest root > 1 of (lambda^a - 1)(lambda - 1)^a = (2 lambda)^a.
struct LadderResult {
    double alpha = 1.0;
    double lambda = 0.0;
    double phi = 0.0;  ///< ((lambda - 1) / (2 lambda))^alpha, plus 1 when central
    bool central = false;
};

double lambda_root(double alpha);
double ladder_phi(double alpha);
LadderResult ladder_result(double alpha, bool central = false);

/// (alpha_p, D_p (phi(alpha_p) + [central])) for each term of f.
std::vector<std::pair<double, double>> ladder_g_coeffs(const Characteristic& f, bool central = false);

/// Upper input voltage 0.574 D_1 / D_2 for which the small-signal series of
/// the ladder's F converges (two-term f).
double ladder_series_radius(const Characteristic& f);

struct TruncationPoint {
    int sections = 0;
    double phi = 0.0;  ///< alpha-test phi of the finite ladder
    double gap = 0.0;  ///< |phi - ladder_phi(alpha)|
};

/// phi of finite ladders (terminated on their last shunt) against the
/// fixed point.
std::vector<TruncationPoint> truncation_convergence(double alpha, std::span<const int> sections,
                                                    bool central = false);

}  // namespace alphaport
