#include "alphaport/alpha_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "alphaport/error.hpp"

namespace alphaport {

double AlphaProfile::d_of(std::string_view node) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] == node) return d[i];
    }
    throw DomainError("unknown node '" + std::string(node) + "'");
}

AlphaProfile alpha_solve(const Circuit& c, double alpha, double v_in, const SolverOptions& options) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const auto sol = solve_dc(c, Characteristic::power_law(alpha), v_in, options);

    AlphaProfile p;
    p.alpha = alpha;
    p.nodes = c.node_names();
    p.d.reserve(c.node_count());
    for (double v : sol.potentials) p.d.push_back(std::clamp(v / v_in, 0.0, 1.0));

    // phi from the ratios themselves so that it is exactly v_in-free.
    for (const auto& br : c.branches()) {
        const double drop = std::fabs(p.d[br.from] - p.d[br.to]);
        const double term = br.multiplicity * std::pow(drop, alpha);
        if (br.from == c.input_b() || br.to == c.input_b()) p.phi += term;
        if (br.from == c.input_a() || br.to == c.input_a()) p.phi_a_side += term;
    }
    return p;
}

double phi_closed_form_fig_a1(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const double q = 1.0 + std::pow(2.0, -alpha);
    return 1.0 + q / std::pow(1.0 + std::pow(q, 1.0 / alpha), alpha);
}

std::string_view to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::constant: return "constant";
        case Monotonicity::nondecreasing: return "nondecreasing";
        case Monotonicity::nonincreasing: return "nonincreasing";
        case Monotonicity::violation: return "violation";
    }
    return "?";
}

bool DSweep::any_violation() const {
    return std::find(verdicts.begin(), verdicts.end(), Monotonicity::violation) != verdicts.end();
}

DSweep d_sweep(const Circuit& c, std::span<const double> alphas, double tolerance) {
    if (alphas.empty()) throw DomainError("alpha grid is empty");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0)) throw DomainError("alpha grid values must be positive");
        if (i > 0 && !(alphas[i] > alphas[i - 1])) throw DomainError("alpha grid must be ascending");
    }

    std::vector<std::future<AlphaProfile>> jobs;
    jobs.reserve(alphas.size());
    for (double a : alphas) {
        jobs.push_back(std::async(std::launch::async, [&c, a] { return alpha_solve(c, a); }));
    }

    DSweep sweep;
    sweep.alphas.assign(alphas.begin(), alphas.end());
    sweep.nodes = c.node_names();
    for (auto& j : jobs) sweep.profiles.push_back(j.get());

    sweep.d.assign(c.node_count(), {});
    for (std::size_t k = 0; k < c.node_count(); ++k) {
        bool up = false, down = false;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            sweep.d[k].push_back(sweep.profiles[i].d[k]);
            if (i == 0) continue;
            const double diff = sweep.d[k][i] - sweep.d[k][i - 1];
            if (diff > tolerance) up = true;
            if (diff < -tolerance) down = true;
        }
        sweep.verdicts.push_back(up && down ? Monotonicity::violation
                                 : up       ? Monotonicity::nondecreasing
                                 : down     ? Monotonicity::nonincreasing
                                            : Monotonicity::constant);
    }
    return sweep;
}

HardlimiterLimit hardlimiter_limit(const Circuit& c) {
    const auto p16 = alpha_solve(c, 16.0);
    const auto p32 = alpha_solve(c, 32.0);
    const auto p64 = alpha_solve(c, 64.0);

    HardlimiterLimit out;
    out.nodes = c.node_names();
    out.surrogate = p64.d;
    for (std::size_t k = 0; k < c.node_count(); ++k) {
        const double d1 = p32.d[k] - p16.d[k];
        const double d2 = p64.d[k] - p32.d[k];
        const double denom = d2 - d1;
        double value = p64.d[k];
        // Only a geometric tail (0 < d2/d1 < 1) is extrapolated.
        if (std::fabs(d2) > 1e-12 && std::fabs(denom) > 1e-14 && d1 * d2 > 0.0 &&
            std::fabs(d2) < std::fabs(d1)) {
            value = p64.d[k] - d2 * d2 / denom;
        }
        out.extrapolated.push_back(std::clamp(value, 0.0, 1.0));
    }
    return out;
}

}  // namespace alphaport
