// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "alphaport/alpha_analysis.hpp"
#include "alphaport/error.hpp"
#include "alphaport/ladder.hpp"
#include "alphaport/mesh.hpp"
#include "alphaport/nodal_solver.hpp"
#include "alphaport/superposition.hpp"
#include "random_circuits.hpp"

using namespace alphaport;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [out of tolerance]");
    }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

bool within(double value, double target, double tol) { return std::fabs(value - target) <= tol; }

Outcome exact_solve() {
    Outcome o;
    const auto c = build_canonical(CanonicalCircuit::fig_a1);
    const auto s = solve_dc(c, parse_characteristic("1:1,1:3"), 1.0);
    const double vo = s.potential(c, "o");
    o.require(within(vo, 0.4350635, 1e-6), "v_o=" + fmt("%.9f", vo));
    o.require(within(s.input_current, 2.7452378, 1e-6), "F=" + fmt("%.9f", s.input_current));
    return o;
}

Outcome bridge_superposition() {
    Outcome o;
    const auto c = build_canonical(CanonicalCircuit::fig_a1);
    const auto r = report(c, parse_characteristic("1:1,1:3"), 1.0);
    o.require(within(r.per_term[0].phi, 1.6, 1e-9), "phi(1)=" + fmt("%.12f", r.per_term[0].phi));
    o.require(within(r.per_term[1].phi, 1.13252, 5e-4), "phi(3)=" + fmt("%.9f", r.per_term[1].phi));
    o.require(within(r.G, 2.73252, 5e-4), "G=" + fmt("%.9f", r.G));
    o.require(within(r.eta, 0.0046, 0.0003), "eta=" + fmt("%.6f", r.eta));
    return o;
}

Outcome ladder_fixed_points() {
    Outcome o;
    const double l1 = lambda_root(1.0);
    const double p1 = ladder_phi(1.0);
    o.require(within(l1, 2.0 + std::sqrt(3.0), 1e-9), "lambda(1)=" + fmt("%.12f", l1));
    o.require(within(p1, 1.0 / (1.0 + std::sqrt(3.0)), 1e-9), "phi(1)=" + fmt("%.12f", p1));
    o.require(within(lambda_root(3.0), 3.024688, 1e-5), "lambda(3)=" + fmt("%.8f", lambda_root(3.0)));
    o.require(within(ladder_phi(3.0), 0.03749, 1e-4), "phi(3)=" + fmt("%.8f", ladder_phi(3.0)));
    o.require(within(ladder_phi(2.0), 0.115146, 1e-5), "phi(2)=" + fmt("%.8f", ladder_phi(2.0)));
    return o;
}

struct LadderFits {
    SeriesFit plain;
    SeriesFit central;
};

const LadderFits& ladder_fits() {
    static const LadderFits fits = [] {
        const auto f = parse_characteristic("1:1,1:2");
        const std::vector<double> exps{1.0, 2.0};
        return LadderFits{
            extract_series_coeffs(build_canonical(CanonicalCircuit::ladder, {100, false}), f, exps),
            extract_series_coeffs(build_canonical(CanonicalCircuit::ladder, {100, true}), f, exps)};
    }();
    return fits;
}

Outcome ladder_quadratic_coefficient() {
    Outcome o;
    const auto& fits = ladder_fits();
    const double b1 = fits.plain.coefficient(1.0);
    const double b2 = fits.plain.coefficient(2.0);
    const double phi2 = ladder_phi(2.0);
    const double err = (b2 - phi2) / b2;
    const double b2c = fits.central.coefficient(2.0);
    const double err_c = (b2c - (1.0 + phi2)) / b2c;
    o.require(within(b2, 0.1196, 0.002), "b2=" + fmt("%.8f", b2));
    o.require(within(b1, 0.36603, 1e-4), "b1=" + fmt("%.8f", b1));
    o.require(within(err, 0.037, 0.003), "coefficient error=" + fmt("%.5f", err));
    o.require(within(err_c, 0.004, 0.001), "central error=" + fmt("%.5f", err_c));
    return o;
}

Outcome ladder_nonlinearity_degree() {
    Outcome o;
    const auto& fits = ladder_fits();
    const double v = ladder_series_radius(parse_characteristic("1:1,1:2"));
    const double plain = series_nonlinearity_degree(fits.plain, v);
    const double central = series_nonlinearity_degree(fits.central, v);
    o.require(within(plain, 0.188, 0.002), "plain=" + fmt("%.5f", plain));
    o.require(within(central, 0.47, 0.01), "central=" + fmt("%.5f", central));
    return o;
}

Outcome ideal_superposition() {
    Outcome o;
    std::mt19937_64 rng(601);
    const auto fig4 = build_canonical(CanonicalCircuit::fig4);
    double worst_fig4 = 0.0;
    double worst_equal = 0.0;
    std::uniform_real_distribution<double> vdist(0.01, 10.0);
    std::uniform_real_distribution<double> edist(0.3, 5.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double v = vdist(rng);
        worst_fig4 = std::max(worst_fig4, report(fig4, testing::random_two_term(rng), v).eta);
        const double e = edist(rng);
        const Characteristic same({{std::uniform_real_distribution<double>(0.2, 3.0)(rng), e},
                                   {std::uniform_real_distribution<double>(0.2, 3.0)(rng), e}});
        worst_equal = std::max(worst_equal, report(testing::random_circuit(rng), same, v).eta);
    }
    o.require(worst_fig4 <= 1e-10, "max eta fig4=" + fmt("%.2e", worst_fig4));
    o.require(worst_equal <= 1e-10, "max eta equal exponents=" + fmt("%.2e", worst_equal));
    return o;
}

Outcome leading_order() {
    Outcome o;
    const std::vector<double> grid{1e-1, 1e-2, 1e-3};
    const auto f = parse_characteristic("1:1,1:3");
    std::mt19937_64 rng(702);
    int checked = 0, skipped = 0, bad = 0;
    double worst = 0.0;
    auto run = [&](const Circuit& c) {
        const auto s = statement1_check(c, f, grid);
        if (s.ideal) {
            ++skipped;
            return false;
        }
        ++checked;
        worst = std::max(worst, std::fabs(s.fitted_slope - s.expected_slope));
        if (!s.decreasing || !s.order_matches) ++bad;
        return true;
    };
    run(build_canonical(CanonicalCircuit::fig_a1));
    int random_done = 0;
    while (random_done < 20) {
        if (run(testing::random_circuit(rng, 8))) ++random_done;
    }
    o.require(bad == 0, std::to_string(checked) + " circuits, " + std::to_string(skipped) +
                            " ideal skipped, max |slope-2|=" + fmt("%.4f", worst));
    return o;
}

Outcome intermediate_values() {
    Outcome o;
    const auto c = build_canonical(CanonicalCircuit::fig_a1);
    std::vector<double> grid;
    for (int k = -12; k <= 4; ++k) grid.push_back(std::pow(10.0, k / 4.0));
    const auto iv = intermediate_value_check(c, parse_characteristic("1:1,1:3"), grid);
    std::size_t o_idx = 0;
    while (iv.nodes[o_idx] != "o") ++o_idx;
    bool inside = true;
    double lo = 1.0, hi = 0.0;
    for (const auto& row : iv.d) {
        inside = inside && row[o_idx] > 0.4 && row[o_idx] < 0.49020;
        lo = std::min(lo, row[o_idx]);
        hi = std::max(hi, row[o_idx]);
    }
    o.require(inside, "d_o in [" + fmt("%.9f", lo) + ", " + fmt("%.9f", hi) + "]");
    o.require(within(iv.growth[o_idx], 0.0576, 0.05 * 0.0576), "(d_o-0.4)/v^2=" + fmt("%.6f", iv.growth[o_idx]));
    o.require(iv.trend[o_idx] == Monotonicity::nondecreasing,
              "trend " + std::string(to_string(iv.trend[o_idx])));
    return o;
}

Outcome error_bound_holds() {
    Outcome o;
    const std::vector<Circuit> circuits{build_canonical(CanonicalCircuit::fig_a1),
                                        build_canonical(CanonicalCircuit::fig3),
                                        build_canonical(CanonicalCircuit::ladder, {20, false})};
    int points = 0, violations = 0;
    double tightest = INFINITY;
    for (const auto& c : circuits) {
        for (auto [m, n] : {std::pair{1.0, 2.0}, {1.0, 3.0}, {2.0, 3.0}}) {
            const Characteristic f({{1.0, m}, {1.0, n}});
            const auto pm = alpha_solve(c, m);
            const auto pn = alpha_solve(c, n);
            const auto terms = superpose(c, f);
            for (double v : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                const double gap = std::fabs(solve_dc(c, f, v).input_current - evaluate_g(terms, v));
                const double bound = error_bound(c, pm, pn, v);
                ++points;
                if (gap > bound) ++violations;
                if (gap > 0.0) tightest = std::min(tightest, bound / gap);
            }
        }
    }
    o.require(violations == 0, std::to_string(points) + " points, " + std::to_string(violations) +
                                   " violations, min bound/|F-G|=" + fmt("%.3f", tightest));
    return o;
}

Outcome mesh_duality() {
    Outcome o;
    const auto b1 = build_canonical(CanonicalCircuit::fig_b1);
    const auto a1 = build_canonical(CanonicalCircuit::fig_a1);
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        const double mesh = *mesh_solve(b1, Characteristic::power_law(alpha), 1.0).phi_meshes;
        const double closed = phi_b6_closed_form(alpha);
        const double dual = phi_meshes_from_nodes([&](double a) { return alpha_solve(a1, a).phi; }, alpha);
        worst = std::max({worst, std::fabs(mesh - closed), std::fabs(mesh - dual), std::fabs(closed - dual)});
    }
    const double at1 = *mesh_solve(b1, Characteristic::power_law(1.0), 1.0).phi_meshes;
    o.require(worst <= 1e-9, "max pairwise difference=" + fmt("%.2e", worst));
    o.require(within(at1, 0.625, 1e-12), "phi_meshes(1)=" + fmt("%.15f", at1));
    return o;
}

Outcome linearity_and_power() {
    Outcome o;
    std::mt19937_64 rng(1101);
    std::uniform_real_distribution<double> cdist(0.1, 10.0);
    std::uniform_real_distribution<double> vdist(0.05, 5.0);
    double worst_scale = 0.0, worst_power = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = testing::random_circuit(rng, 8);
        const auto f = testing::random_characteristic(rng, 3, 0.3, 5.0);
        const double k = cdist(rng);
        const double v = vdist(rng);
        const auto s = solve_dc(c, f, v);
        const auto sk = solve_dc(c, f.scaled(k), v);
        worst_scale = std::max(worst_scale, std::fabs(sk.input_current / (k * s.input_current) - 1.0));
        double branch_power = 0.0;
        for (std::size_t b = 0; b < s.branch_currents.size(); ++b) {
            branch_power += s.branch_voltages[b] * s.branch_currents[b];
        }
        worst_power = std::max(worst_power, std::fabs(branch_power / s.input_power() - 1.0));
    }
    o.require(worst_scale <= 1e-12, "max |F(cD)/(cF(D))-1|=" + fmt("%.2e", worst_scale));
    o.require(worst_power <= 1e-9, "max power imbalance=" + fmt("%.2e", worst_power));
    return o;
}

Outcome monotonicity() {
    Outcome o;
    const std::vector<double> grid{1, 1.5, 2, 3, 4, 6};
    const std::vector<std::pair<std::string, Circuit>> circuits{
        {"fig_a1", build_canonical(CanonicalCircuit::fig_a1)},
        {"fig3", build_canonical(CanonicalCircuit::fig3)},
        {"fig4", build_canonical(CanonicalCircuit::fig4)},
        {"ladder(8)", build_canonical(CanonicalCircuit::ladder, {8, false})},
        {"ladder(8,central)", build_canonical(CanonicalCircuit::ladder, {8, true})},
        {"fig_b1", build_canonical(CanonicalCircuit::fig_b1)}};
    std::string violations;
    for (const auto& [name, c] : circuits) {
        const auto s = d_sweep(c, grid);
        for (std::size_t k = 0; k < s.nodes.size(); ++k) {
            if (s.verdicts[k] == Monotonicity::violation) violations += " " + name + ":" + s.nodes[k];
        }
    }
    o.require(violations.empty(), std::to_string(circuits.size()) + " circuits, violations:" +
                                      (violations.empty() ? std::string(" none") : violations));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"exact solve of the bridge", exact_solve},
        {"bridge superposition", bridge_superposition},
        {"ladder fixed points", ladder_fixed_points},
        {"ladder quadratic coefficient", ladder_quadratic_coefficient},
        {"ladder nonlinearity degrees", ladder_nonlinearity_degree},
        {"ideal superposition", ideal_superposition},
        {"leading-order agreement of F and G", leading_order},
        {"intermediate values of d_o", intermediate_values},
        {"error bound", error_bound_holds},
        {"mesh duality", mesh_duality},
        {"D-linearity and power balance", linearity_and_power},
        {"monotonicity of d_k(alpha)", monotonicity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
