#include "alphaport/ladder.hpp"

#include <cmath>
#include <string>

#include "alphaport/alpha_analysis.hpp"
#include "alphaport/circuit.hpp"
#include "alphaport/error.hpp"

namespace alphaport {

namespace {

// log[(l^a - 1)(l - 1)^a] - log[(2l)^a]; increasing through the root.
double lambda_equation(double l, double a) {
    return std::log(std::expm1(a * std::log(l))) + a * std::log(l - 1.0) - a * std::log(2.0 * l);
}

double lambda_equation_slope(double l, double a) {
    const double la = std::pow(l, a);
    return a * la / (l * (la - 1.0)) + a / (l - 1.0) - a / l;
}

}  // namespace

double lambda_root(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");

    // Past the root the equation is positive and stays so; bracket the
    // largest root by doubling the right edge.
    double lo = 1.0 + 1e-9;
    double hi = 8.0;
    int expansions = 0;
    while (lambda_equation(hi, alpha) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 60) throw SolverError("lambda bracket did not close");
    }
    if (lambda_equation(lo, alpha) > 0.0) throw SolverError("lambda bracket has no sign change");

    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (lambda_equation(mid, alpha) > 0.0) hi = mid; else lo = mid;
    }
    double l = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
        const double d = lambda_equation_slope(l, alpha);
        const double next = l - lambda_equation(l, alpha) / d;
        if (std::isfinite(next) && next > 1.0) l = next;
    }
    return l;
}

double ladder_phi(double alpha) {
    const double l = lambda_root(alpha);
    return std::pow((l - 1.0) / (2.0 * l), alpha);
}

LadderResult ladder_result(double alpha, bool central) {
    LadderResult r;
    r.alpha = alpha;
    r.lambda = lambda_root(alpha);
    r.phi = std::pow((r.lambda - 1.0) / (2.0 * r.lambda), alpha) + (central ? 1.0 : 0.0);
    r.central = central;
    return r;
}

std::vector<std::pair<double, double>> ladder_g_coeffs(const Characteristic& f, bool central) {
    std::vector<std::pair<double, double>> out;
    for (const auto& t : f.terms()) {
        out.emplace_back(t.exponent, t.coefficient * (ladder_phi(t.exponent) + (central ? 1.0 : 0.0)));
    }
    return out;
}

double ladder_series_radius(const Characteristic& f) {
    if (f.size() != 2) throw DomainError("series radius is defined for two-term characteristics");
    return 0.574 * f.terms()[0].coefficient / f.terms()[1].coefficient;
}

std::vector<TruncationPoint> truncation_convergence(double alpha, std::span<const int> sections,
                                                    bool central) {
    const double target = ladder_phi(alpha) + (central ? 1.0 : 0.0);
    std::vector<TruncationPoint> out;
    for (int n : sections) {
        if (n < 1) throw DomainError("ladder needs at least one section");
        const auto c = build_canonical(CanonicalCircuit::ladder, {n, central});
        const double phi = alpha_solve(c, alpha).phi;
        out.push_back({n, phi, std::fabs(phi - target)});
    }
    return out;
}

}  // namespace alphaport
