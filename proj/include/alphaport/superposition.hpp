#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphaport/alpha_analysis.hpp"
#include "alphaport/characteristic.hpp"
#include "alphaport/circuit.hpp"

namespace alphaport {

/// One term of G(v) = sum_p D_p phi(alpha_p) v^{alpha_p}.
struct GTerm {
    double exponent = 1.0;
    double coefficient = 1.0;    ///< D_p
    double phi = 0.0;            ///< phi(alpha_p) of the topology
    double g_coefficient = 0.0;  ///< D_p * phi(alpha_p)
};

/// Coefficients of the analytical superposition G. Independent of v_in.
std::vector<GTerm> superpose(const Circuit& c, const Characteristic& f);

double evaluate_g(std::span<const GTerm> terms, double v_in);

struct PerTerm {
    double alpha = 1.0;
    double coefficient = 1.0;  ///< D_p
    double phi = 0.0;
    double g_term = 0.0;       ///< D_p phi(alpha_p) v_in^{alpha_p}
    /// Current carried by this term of f through the branches at b in the
    /// exact (f-connected) solution.
    double connected = 0.0;
};

struct SuperpositionReport {
    double v_in = 0.0;
    double F = 0.0;
    double G = 0.0;
    double eta = 0.0;        ///< |F - G| / F
    double eta_power = 0.0;  ///< |P_F - P_G| / P_F
    /// |F - G| / (F - L), L = D_1 phi(alpha_1) v_in^{alpha_1} the common
    /// leading term of F and G.
    double eta_nonlinear = 0.0;
    /// Ratio of the higher-exponent terms of f to the lowest-exponent term,
    /// summed over the source-side (a) branches of the exact solution.
    double nonlinearity_degree = 0.0;
    std::optional<double> bound;  ///< two-term f only
    bool bound_normalized = false;
    std::vector<PerTerm> per_term;
};

/// Exact F, the approximation G and their discrepancy at v_in.
SuperpositionReport report(const Circuit& c, const Characteristic& f, double v_in);

// ---------------------------------------------------------------------------

/// F(x)/G(x) on a grid shrinking toward 0, with the fitted order of
/// |F/G - 1| against x.
struct Statement1Check {
    std::vector<double> x;
    std::vector<double> ratio;
    std::vector<double> deviation;  ///< |ratio - 1|
    double expected_slope = 0.0;    ///< alpha_2 - alpha_1
    double fitted_slope = 0.0;      ///< NaN when fewer than two points rise above rounding
    bool ideal = false;             ///< every deviation at rounding level
    bool decreasing = false;        ///< deviation shrinks along the grid
    bool order_matches = false;     ///< |fitted - expected| <= 0.1 (or ideal)
};

Statement1Check statement1_check(const Circuit& c, const Characteristic& f,
                                 std::span<const double> x_grid);

// ---------------------------------------------------------------------------

/// Upper bound on |F - G| for f = v^m + v^n built from the separately solved
/// m- and n-circuits.
double error_bound(const Circuit& c, double m, double n, double v_in);
double error_bound(const Circuit& c, const AlphaProfile& pm, const AlphaProfile& pn, double v_in);

// ---------------------------------------------------------------------------

struct SeriesFitOptions {
    double v_max = 0.0;     ///< 0: 0.1 (D_1/D_2)^{1/(alpha_2 - alpha_1)}
    int points = 16;        ///< log-spaced over [v_max / 100, v_max]
    int extra_terms = 4;    ///< higher-order series exponents absorbed by the fit
    double max_condition = 1e10;
};

struct SeriesFit {
    std::vector<double> exponents;     ///< requested
    std::vector<double> coefficients;  ///< b_p for the requested exponents
    std::vector<double> basis_exponents;
    std::vector<double> basis_coefficients;
    double v_min = 0.0;
    double v_max = 0.0;
    double condition = 0.0;

    double coefficient(double exponent) const;
};

/// Least-squares fit of F(v) ~ sum_p b_p v^{alpha_p} at small v. The basis is
/// the requested exponents plus the next exponents alpha_1 + sum k_p (alpha_p
/// - alpha_1) that the exact expansion contains. DomainError when the design
/// matrix is ill-conditioned.
SeriesFit extract_series_coeffs(const Circuit& c, const Characteristic& f,
                                std::span<const double> exponents,
                                const SeriesFitOptions& options = {});

/// Higher-order part over leading part of a fitted series at v_in.
double series_nonlinearity_degree(const SeriesFit& fit, double v_in);

// ---------------------------------------------------------------------------

/// For two-term f: do the exact-solution ratios d_k(v_in) stay between the
/// alpha = m and alpha = n values?
struct IntermediateValueCheck {
    double m = 1.0;
    double n = 1.0;
    std::vector<std::string> nodes;  ///< internal nodes
    std::vector<double> d_m;
    std::vector<double> d_n;
    std::vector<double> v_grid;
    std::vector<std::vector<double>> d;      ///< d[grid index][node]
    std::vector<std::vector<bool>> inside;   ///< same shape
    std::vector<Monotonicity> trend;         ///< per node, along the grid
    /// (d_k(v_min) - d_k(m)) / v_min^{n - m} at the smallest grid value.
    std::vector<double> growth;
    bool all_inside = true;
};

IntermediateValueCheck intermediate_value_check(const Circuit& c, const Characteristic& f,
                                                std::span<const double> v_grid);

}  // namespace alphaport
