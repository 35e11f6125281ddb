#include "alphaport/superposition.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>
#include <sstream>

#include "alphaport/error.hpp"
#include "alphaport/nodal_solver.hpp"

namespace alphaport {

namespace {

std::vector<AlphaProfile> profiles_for(const Circuit& c, const Characteristic& f) {
    std::vector<std::future<AlphaProfile>> jobs;
    for (const auto& t : f.terms()) {
        jobs.push_back(std::async(std::launch::async,
                                  [&c, a = t.exponent] { return alpha_solve(c, a); }));
    }
    std::vector<AlphaProfile> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::vector<GTerm> g_terms(const Characteristic& f, const std::vector<AlphaProfile>& profiles) {
    std::vector<GTerm> out;
    for (std::size_t p = 0; p < f.size(); ++p) {
        const auto& t = f.terms()[p];
        out.push_back({t.exponent, t.coefficient, profiles[p].phi, t.coefficient * profiles[p].phi});
    }
    return out;
}

double second_exponent(const Characteristic& f) {
    return f.size() > 1 ? f.terms()[1].exponent : f.min_exponent();
}

}  // namespace

std::vector<GTerm> superpose(const Circuit& c, const Characteristic& f) {
    return g_terms(f, profiles_for(c, f));
}

double evaluate_g(std::span<const GTerm> terms, double v_in) {
    double g = 0.0;
    for (const auto& t : terms) g += t.g_coefficient * std::pow(v_in, t.exponent);
    return g;
}

SuperpositionReport report(const Circuit& c, const Characteristic& f, double v_in) {
    if (!(v_in > 0.0)) throw DomainError("v_in must be positive");
    auto exact = std::async(std::launch::async, [&] { return solve_dc(c, f, v_in); });
    const auto profiles = profiles_for(c, f);
    const auto sol = exact.get();
    const auto terms = g_terms(f, profiles);

    SuperpositionReport r;
    r.v_in = v_in;
    r.F = sol.input_current;
    r.G = evaluate_g(terms, v_in);
    r.eta = std::fabs(r.F - r.G) / r.F;
    const double p_f = v_in * r.F;
    const double p_g = v_in * r.G;
    r.eta_power = std::fabs(p_f - p_g) / p_f;

    const double leading = terms.front().g_coefficient * std::pow(v_in, terms.front().exponent);
    const double nonlinear_f = r.F - leading;
    r.eta_nonlinear = nonlinear_f > 0.0 ? std::fabs(r.F - r.G) / nonlinear_f : 0.0;

    const auto split_b = input_current_by_term(c, f, sol.potentials, false);
    const auto split_a = input_current_by_term(c, f, sol.potentials, true);
    double higher = 0.0;
    for (std::size_t p = 1; p < split_a.size(); ++p) higher += split_a[p];
    r.nonlinearity_degree = split_a.front() > 0.0 ? higher / split_a.front() : 0.0;

    for (std::size_t p = 0; p < terms.size(); ++p) {
        r.per_term.push_back({terms[p].exponent, terms[p].coefficient, terms[p].phi,
                              terms[p].g_coefficient * std::pow(v_in, terms[p].exponent),
                              split_b[p]});
    }

    if (f.size() == 2) {
        // f = D_m v^m + D_n v^n = D_m s^m (u^m + u^n) with v = s u and
        // s = (D_m / D_n)^{1/(n-m)}; the unit-coefficient bound then maps back
        // exactly.
        const auto& tm = f.terms()[0];
        const auto& tn = f.terms()[1];
        if (tm.coefficient == 1.0 && tn.coefficient == 1.0) {
            r.bound = error_bound(c, profiles[0], profiles[1], v_in);
        } else {
            const double s = std::pow(tm.coefficient / tn.coefficient, 1.0 / (tn.exponent - tm.exponent));
            r.bound = tm.coefficient * std::pow(s, tm.exponent) *
                      error_bound(c, profiles[0], profiles[1], v_in / s);
            r.bound_normalized = true;
        }
    }
    return r;
}

Statement1Check statement1_check(const Circuit& c, const Characteristic& f,
                                 std::span<const double> x_grid) {
    if (x_grid.size() < 2) throw DomainError("statement-1 grid needs at least two points");
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > 0.0)) throw DomainError("grid values must be positive");
        if (i > 0 && !(x_grid[i] < x_grid[i - 1])) throw DomainError("grid must be descending");
    }

    const auto terms = superpose(c, f);
    Statement1Check out;
    out.expected_slope = second_exponent(f) - f.min_exponent();
    constexpr double kNoise = 1e-13;

    std::vector<double> lx, ly;
    for (double x : x_grid) {
        const double F = solve_dc(c, f, x).input_current;
        const double G = evaluate_g(terms, x);
        out.x.push_back(x);
        out.ratio.push_back(F / G);
        out.deviation.push_back(std::fabs(F / G - 1.0));
        if (out.deviation.back() > kNoise) {
            lx.push_back(std::log(x));
            ly.push_back(std::log(out.deviation.back()));
        }
    }

    out.ideal = std::all_of(out.deviation.begin(), out.deviation.end(),
                            [](double d) { return d <= kNoise; });
    out.decreasing = true;
    for (std::size_t i = 1; i < out.deviation.size(); ++i) {
        if (out.deviation[i] > out.deviation[i - 1] && out.deviation[i] > kNoise) out.decreasing = false;
    }

    out.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    if (lx.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
        mx /= lx.size();
        my /= ly.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        out.fitted_slope = sxy / sxx;
    }
    out.order_matches = out.ideal || std::fabs(out.fitted_slope - out.expected_slope) <= 0.1;
    return out;
}

double error_bound(const Circuit& c, const AlphaProfile& pm, const AlphaProfile& pn, double v_in) {
    if (!(v_in > 0.0)) throw DomainError("v_in must be positive");
    const double m = pm.alpha;
    const double n = pn.alpha;
    double sum = 0.0;
    for (const auto& br : c.branches()) {
        const double vm = std::fabs(pm.d[br.from] - pm.d[br.to]) * v_in;
        const double vn = std::fabs(pn.d[br.from] - pn.d[br.to]) * v_in;
        const double term = vn >= vm ? std::pow(vn, n + 1.0) - std::pow(vm, n + 1.0)
                                     : std::pow(vm, m + 1.0) - std::pow(vn, m + 1.0);
        sum += br.multiplicity * term;
    }
    return sum / v_in;
}

double error_bound(const Circuit& c, double m, double n, double v_in) {
    if (m == n) return 0.0;
    return error_bound(c, alpha_solve(c, m), alpha_solve(c, n), v_in);
}

double SeriesFit::coefficient(double exponent) const {
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (std::fabs(exponents[i] - exponent) <= Characteristic::kMergeTolerance) return coefficients[i];
    }
    throw DomainError("exponent not part of the fit");
}

SeriesFit extract_series_coeffs(const Circuit& c, const Characteristic& f,
                                std::span<const double> exponents, const SeriesFitOptions& options) {
    if (exponents.empty()) throw DomainError("no exponents requested");
    if (options.points < 2) throw DomainError("series fit needs at least two points");

    SeriesFit fit;
    fit.exponents.assign(exponents.begin(), exponents.end());
    std::sort(fit.exponents.begin(), fit.exponents.end());

    // Exponents alpha_1 + sum_p k_p (alpha_p - alpha_1), smallest first.
    const double base = f.min_exponent();
    std::set<double> candidates{base};
    for (int round = 0; round < options.extra_terms + static_cast<int>(fit.exponents.size()); ++round) {
        std::set<double> next = candidates;
        for (double e : candidates) {
            for (std::size_t p = 1; p < f.size(); ++p) next.insert(e + f.terms()[p].exponent - base);
        }
        candidates = std::move(next);
    }
    fit.basis_exponents = fit.exponents;
    int extra = 0;
    for (double e : candidates) {
        if (extra >= options.extra_terms) break;
        const bool present = std::any_of(fit.basis_exponents.begin(), fit.basis_exponents.end(),
                                         [e](double x) { return std::fabs(x - e) < 1e-9; });
        if (!present && e > fit.exponents.back()) {
            fit.basis_exponents.push_back(e);
            ++extra;
        }
    }

    fit.v_max = options.v_max;
    if (fit.v_max <= 0.0) {
        fit.v_max = 0.1;
        if (f.size() > 1) {
            const auto& t1 = f.terms()[0];
            const auto& t2 = f.terms()[1];
            fit.v_max = 0.1 * std::pow(t1.coefficient / t2.coefficient, 1.0 / (t2.exponent - t1.exponent));
        }
    }
    fit.v_min = fit.v_max / 100.0;

    const auto rows = static_cast<Eigen::Index>(options.points);
    const auto cols = static_cast<Eigen::Index>(fit.basis_exponents.size());
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = double(i) / double(rows - 1);
        const double v = fit.v_min * std::pow(fit.v_max / fit.v_min, t);
        const double F = solve_dc(c, f, v).input_current;
        // Rows scaled by the leading power, columns by v_max^e.
        const double row_scale = std::pow(v, fit.basis_exponents.front());
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double e = fit.basis_exponents[static_cast<std::size_t>(j)];
            design(i, j) = std::pow(v / fit.v_max, e) * std::pow(fit.v_max, fit.basis_exponents.front()) / row_scale;
        }
        rhs[i] = F / row_scale;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    fit.condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                            : std::numeric_limits<double>::infinity();
    if (!(fit.condition <= options.max_condition)) {
        std::ostringstream msg;
        msg << "series fit is ill-conditioned (condition number " << fit.condition << ")";
        throw DomainError(msg.str());
    }
    const Eigen::VectorXd scaled = svd.solve(rhs);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const double e = fit.basis_exponents[static_cast<std::size_t>(j)];
        fit.basis_coefficients.push_back(scaled[j] * std::pow(fit.v_max, fit.basis_exponents.front() - e));
    }
    for (std::size_t i = 0; i < fit.exponents.size(); ++i) fit.coefficients.push_back(fit.basis_coefficients[i]);
    return fit;
}

double series_nonlinearity_degree(const SeriesFit& fit, double v_in) {
    const double lead = fit.coefficients.front() * std::pow(v_in, fit.exponents.front());
    double rest = 0.0;
    for (std::size_t i = 1; i < fit.exponents.size(); ++i) {
        rest += fit.coefficients[i] * std::pow(v_in, fit.exponents[i]);
    }
    return rest / lead;
}

IntermediateValueCheck intermediate_value_check(const Circuit& c, const Characteristic& f,
                                                std::span<const double> v_grid) {
    if (f.size() != 2) throw DomainError("intermediate-value check needs a two-term characteristic");
    if (v_grid.empty()) throw DomainError("v grid is empty");

    IntermediateValueCheck out;
    out.m = f.terms()[0].exponent;
    out.n = f.terms()[1].exponent;
    const auto pm = alpha_solve(c, out.m);
    const auto pn = alpha_solve(c, out.n);

    std::vector<NodeIndex> internal;
    for (NodeIndex k = 0; k < c.node_count(); ++k) {
        if (k == c.input_a() || k == c.input_b()) continue;
        internal.push_back(k);
        out.nodes.push_back(c.node_name(k));
        out.d_m.push_back(pm.d[k]);
        out.d_n.push_back(pn.d[k]);
    }

    constexpr double kTol = 1e-12;
    std::size_t smallest = 0;
    for (std::size_t i = 0; i < v_grid.size(); ++i) {
        const double v = v_grid[i];
        if (!(v > 0.0)) throw DomainError("v grid values must be positive");
        if (v < v_grid[smallest]) smallest = i;
        const auto sol = solve_dc(c, f, v);
        out.v_grid.push_back(v);
        std::vector<double> row;
        std::vector<bool> in;
        for (std::size_t j = 0; j < internal.size(); ++j) {
            const double d = sol.potentials[internal[j]] / v;
            const double lo = std::min(out.d_m[j], out.d_n[j]);
            const double hi = std::max(out.d_m[j], out.d_n[j]);
            row.push_back(d);
            in.push_back(d >= lo - kTol && d <= hi + kTol);
            out.all_inside = out.all_inside && in.back();
        }
        out.d.push_back(std::move(row));
        out.inside.push_back(std::move(in));
    }

    std::vector<std::size_t> order(out.v_grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return out.v_grid[l] < out.v_grid[r]; });
    for (std::size_t j = 0; j < internal.size(); ++j) {
        bool up = false, down = false;
        for (std::size_t i = 1; i < order.size(); ++i) {
            const double diff = out.d[order[i]][j] - out.d[order[i - 1]][j];
            if (diff > kTol) up = true;
            if (diff < -kTol) down = true;
        }
        out.trend.push_back(up && down ? Monotonicity::violation
                            : up       ? Monotonicity::nondecreasing
                            : down     ? Monotonicity::nonincreasing
                                       : Monotonicity::constant);
        const double vmin = out.v_grid[smallest];
        out.growth.push_back((out.d[smallest][j] - out.d_m[j]) / std::pow(vmin, out.n - out.m));
    }
    return out;
}

}  // namespace alphaport
