#include "alphaport/nodal_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "alphaport/error.hpp"
#include "network_newton.hpp"

namespace alphaport {

namespace {

// Nodes outside the biconnected block that contains the (virtual) a-b edge
// carry no current; each sits at the potential of the block node it hangs
// from. Returns, per node, either itself (active) or its anchor.
std::vector<NodeIndex> current_carrying_anchor(const Circuit& c) {
    const std::size_t n = c.node_count();
    struct Edge { NodeIndex u, v; };
    std::vector<Edge> edges;
    for (const auto& br : c.branches()) {
        if (br.from != br.to) edges.push_back({br.from, br.to});
    }
    const std::size_t virtual_edge = edges.size();
    edges.push_back({c.input_a(), c.input_b()});

    std::vector<std::vector<std::pair<NodeIndex, std::size_t>>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].u].push_back({edges[e].v, e});
        adj[edges[e].v].push_back({edges[e].u, e});
    }

    // Tarjan's edge-biconnected components.
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::size_t> edge_stack;
    std::vector<bool> active(n, false);
    int timer = 0;
    std::function<void(NodeIndex, std::size_t)> dfs = [&](NodeIndex u, std::size_t parent_edge) {
        disc[u] = low[u] = timer++;
        for (const auto& [v, e] : adj[u]) {
            if (e == parent_edge) continue;
            if (disc[v] == -1) {
                edge_stack.push_back(e);
                dfs(v, e);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    std::vector<std::size_t> block;
                    while (true) {
                        const auto top = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(top);
                        if (top == e) break;
                    }
                    if (std::find(block.begin(), block.end(), virtual_edge) != block.end()) {
                        for (auto be : block) active[edges[be].u] = active[edges[be].v] = true;
                    }
                }
            } else if (disc[v] < disc[u]) {
                edge_stack.push_back(e);
                low[u] = std::min(low[u], disc[v]);
            }
        }
    };
    dfs(c.input_a(), edges.size());

    std::vector<NodeIndex> anchor(n);
    std::vector<bool> assigned(n, false);
    std::vector<NodeIndex> queue;
    for (NodeIndex k = 0; k < n; ++k) {
        if (active[k]) {
            anchor[k] = k;
            assigned[k] = true;
            queue.push_back(k);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeIndex u = queue[head];
        for (const auto& [v, e] : adj[u]) {
            if (!assigned[v]) {
                anchor[v] = anchor[u];
                assigned[v] = true;
                queue.push_back(v);
            }
        }
    }
    return anchor;
}

}  // namespace

DcSolution solve_dc(const Circuit& c, const Characteristic& f, double v_in,
                    const SolverOptions& options) {
    if (!(v_in > 0.0) || !std::isfinite(v_in)) throw DomainError("v_in must be positive");
    require_valid(c);

    const auto anchor = current_carrying_anchor(c);
    const NodeIndex a = c.input_a();
    const NodeIndex b = c.input_b();

    // Unknowns: active internal nodes.
    constexpr std::size_t kFixed = static_cast<std::size_t>(-1);
    std::vector<std::size_t> unknown(c.node_count(), kFixed);
    std::size_t count = 0;
    for (NodeIndex k = 0; k < c.node_count(); ++k) {
        if (k != a && k != b && anchor[k] == k) unknown[k] = count++;
    }

    detail::NetworkProblem problem;
    problem.unknowns = count;
    problem.drive_scale = v_in;
    for (const auto& br : c.branches()) {
        if (br.from == br.to || anchor[br.from] != br.from || anchor[br.to] != br.to) continue;
        detail::NetworkRow row;
        row.weight = br.multiplicity;
        auto attach = [&](NodeIndex node, double sign) {
            if (node == a) row.offset += sign * v_in;
            else if (unknown[node] != kFixed) row.coeffs.push_back({unknown[node], sign});
        };
        attach(br.from, +1.0);
        attach(br.to, -1.0);
        problem.rows.push_back(std::move(row));
    }

    detail::NewtonSettings settings;
    settings.max_iterations = options.max_iterations > 0 ? options.max_iterations
                                                         : detail::max_iterations_from_env();
    settings.tolerance = options.tolerance;

    // Exponent continuation from the linear circuit: stage s solves with
    // exponents alpha_p^{s/S}, so strongly super- or sub-linear elements start
    // from a nearby solution instead of the linear one.
    const double spread = std::max(f.max_exponent(), 1.0 / f.min_exponent());
    const int stages = spread > 3.0 ? static_cast<int>(std::ceil(std::log(spread) / std::log(1.6))) : 1;
    Eigen::VectorXd y = detail::linear_start(problem);
    int iterations = 0;
    detail::NewtonResult result;
    for (int s = 1; s <= stages; ++s) {
        const Characteristic* stage_f = &f;
        std::optional<Characteristic> scaled;
        if (s < stages) {
            std::vector<PowerTerm> t = f.terms();
            for (auto& term : t) term.exponent = std::pow(term.exponent, double(s) / stages);
            scaled.emplace(std::move(t));
            stage_f = &*scaled;
        }
        auto stage_settings = settings;
        if (s < stages) stage_settings.tolerance = std::max(settings.tolerance, 1e-8);
        result = detail::minimize_content(problem, *stage_f, y, stage_settings);
        iterations += result.iterations;
        if (!result.converged && s == stages) {
            throw SolverError("Newton did not converge after " + std::to_string(iterations) +
                              " iterations (relative residual " +
                              std::to_string(result.relative_residual) + ")");
        }
        y = result.y;
    }

    DcSolution sol;
    sol.v_in = v_in;
    sol.iterations = iterations;
    sol.relative_residual = result.relative_residual;
    sol.residual_norm = result.absolute_residual;
    sol.potentials.assign(c.node_count(), 0.0);
    for (NodeIndex k = 0; k < c.node_count(); ++k) {
        const NodeIndex host = anchor[k];
        if (host == a) sol.potentials[k] = v_in;
        else if (host == b) sol.potentials[k] = 0.0;
        else sol.potentials[k] = y[static_cast<Eigen::Index>(unknown[host])];
    }

    sol.branch_voltages.reserve(c.branch_count());
    sol.branch_currents.reserve(c.branch_count());
    sol.orientation.reserve(c.branch_count());
    for (const auto& br : c.branches()) {
        const double drop = sol.potentials[br.from] - sol.potentials[br.to];
        sol.orientation.push_back(drop < 0.0 ? -1 : 1);
        sol.branch_voltages.push_back(std::fabs(drop));
        sol.branch_currents.push_back(br.multiplicity * f.eval(std::fabs(drop)));
    }
    sol.input_current = input_current_from_potentials(c, f, sol.potentials, false);
    sol.input_current_a = input_current_from_potentials(c, f, sol.potentials, true);
    return sol;
}

std::vector<double> input_current_by_term(const Circuit& c, const Characteristic& f,
                                          std::span<const double> potentials, bool at_a) {
    if (potentials.size() != c.node_count()) throw DomainError("potential vector has wrong size");
    const NodeIndex port = at_a ? c.input_a() : c.input_b();
    std::vector<double> by_term(f.size(), 0.0);
    for (const auto& br : c.branches()) {
        if (br.from == br.to || (br.from != port && br.to != port)) continue;
        const NodeIndex other = br.from == port ? br.to : br.from;
        // Current flowing from a into the circuit, or from the circuit into b.
        const double drop = at_a ? potentials[port] - potentials[other]
                                 : potentials[other] - potentials[port];
        for (std::size_t p = 0; p < f.size(); ++p) {
            const auto& t = f.terms()[p];
            const double mag = t.coefficient * std::pow(std::fabs(drop), t.exponent);
            by_term[p] += br.multiplicity * (drop < 0.0 ? -mag : mag);
        }
    }
    return by_term;
}

double input_current_from_potentials(const Circuit& c, const Characteristic& f,
                                     std::span<const double> potentials, bool at_a) {
    if (potentials.size() != c.node_count()) throw DomainError("potential vector has wrong size");
    const NodeIndex port = at_a ? c.input_a() : c.input_b();
    double sum = 0.0;
    for (const auto& br : c.branches()) {
        if (br.from == br.to || (br.from != port && br.to != port)) continue;
        const NodeIndex other = br.from == port ? br.to : br.from;
        const double drop = at_a ? potentials[port] - potentials[other]
                                 : potentials[other] - potentials[port];
        sum += br.multiplicity * f.eval_signed(drop);
    }
    return sum;
}

double co_content(const Circuit& c, const Characteristic& f, std::span<const double> potentials) {
    if (potentials.size() != c.node_count()) throw DomainError("potential vector has wrong size");
    double sum = 0.0;
    for (const auto& br : c.branches()) {
        sum += br.multiplicity * f.co_content(std::fabs(potentials[br.from] - potentials[br.to]));
    }
    return sum;
}

}  // namespace alphaport
