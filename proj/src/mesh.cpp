#include "alphaport/mesh.hpp"

#include <cmath>
#include <map>
#include <string>

#include "alphaport/error.hpp"
#include "network_newton.hpp"

namespace alphaport {

void validate_mesh_basis(const Circuit& c, std::span<const MeshLoop> loops) {
    int inputs = 0;
    std::vector<int> uses(c.branch_count(), 0);
    std::map<std::string, int> ids;
    for (const auto& loop : loops) {
        if (++ids[loop.id] > 1) throw InvalidCircuit("duplicate mesh id '" + loop.id + "'");
        if (loop.path.empty()) throw InvalidCircuit("mesh '" + loop.id + "' is empty");
        // Net node incidence: closed loops balance everywhere, the source path
        // leaves a once and enters b once.
        std::vector<int> net(c.node_count(), 0);
        for (const auto& sb : loop.path) {
            if (sb.branch >= c.branch_count()) {
                throw InvalidCircuit("mesh '" + loop.id + "' references unknown branch " +
                                     std::to_string(sb.branch));
            }
            if (sb.sign != 1 && sb.sign != -1) throw InvalidCircuit("mesh sign must be +1 or -1");
            ++uses[sb.branch];
            const auto& br = c.branch(sb.branch);
            net[sb.sign > 0 ? br.from : br.to] -= 1;
            net[sb.sign > 0 ? br.to : br.from] += 1;
        }
        const bool is_input = loop.id == kInputMeshId;
        inputs += is_input;
        for (NodeIndex k = 0; k < c.node_count(); ++k) {
            int expected = 0;
            if (is_input && k == c.input_a()) expected = -1;
            if (is_input && k == c.input_b()) expected = +1;
            if (net[k] != expected) {
                throw InvalidCircuit(is_input ? "source path 'in' does not lead from a to b"
                                              : "mesh '" + loop.id + "' is not a closed loop");
            }
        }
    }
    if (inputs != 1) throw InvalidCircuit("mesh basis needs exactly one source path 'in'");
    for (std::size_t s = 0; s < uses.size(); ++s) {
        if (uses[s] > 2) {
            throw InvalidCircuit("branch " + std::to_string(s) + " appears in more than two meshes");
        }
    }
}

MeshSolution mesh_solve(const Circuit& c, const Characteristic& f_resistive, double i_in,
                        const SolverOptions& options) {
    return mesh_solve(c, c.meshes(), f_resistive, i_in, options);
}

MeshSolution mesh_solve(const Circuit& c, std::span<const MeshLoop> loops,
                        const Characteristic& f_resistive, double i_in, const SolverOptions& options) {
    if (!(i_in > 0.0) || !std::isfinite(i_in)) throw DomainError("i_in must be positive");
    validate_mesh_basis(c, loops);

    MeshSolution sol;
    sol.i_in = i_in;
    const MeshLoop* input = nullptr;
    std::vector<const MeshLoop*> unknown;
    for (const auto& loop : loops) {
        if (loop.id == kInputMeshId) {
            input = &loop;
        } else {
            unknown.push_back(&loop);
            sol.mesh_ids.push_back(loop.id);
        }
    }

    // w parallel elements share the branch current: each sees i / w and the
    // branch drop is f(i / w), i.e. x_s = i_s / w with content weight w.
    detail::NetworkProblem problem;
    problem.unknowns = unknown.size();
    problem.drive_scale = i_in;
    problem.rows.resize(c.branch_count());
    for (std::size_t s = 0; s < c.branch_count(); ++s) {
        problem.rows[s].weight = c.branch(s).multiplicity;
    }
    for (const auto& sb : input->path) {
        problem.rows[sb.branch].offset += sb.sign * i_in / c.branch(sb.branch).multiplicity;
    }
    for (std::size_t m = 0; m < unknown.size(); ++m) {
        for (const auto& sb : unknown[m]->path) {
            problem.rows[sb.branch].coeffs.push_back(
                {m, double(sb.sign) / c.branch(sb.branch).multiplicity});
        }
    }

    detail::NewtonSettings settings;
    settings.max_iterations = options.max_iterations > 0 ? options.max_iterations
                                                         : detail::max_iterations_from_env();
    settings.tolerance = options.tolerance;
    const auto result = detail::minimize_content(problem, f_resistive, detail::linear_start(problem),
                                                 settings);
    if (!result.converged) {
        throw SolverError("mesh Newton did not converge after " + std::to_string(result.iterations) +
                          " iterations");
    }

    sol.iterations = result.iterations;
    sol.residual_norm = result.absolute_residual;
    sol.relative_residual = result.relative_residual;
    sol.mesh_currents.assign(result.y.data(), result.y.data() + result.y.size());
    const Eigen::VectorXd x = detail::branch_values(problem, result.y);
    for (std::size_t s = 0; s < c.branch_count(); ++s) {
        sol.branch_currents.push_back(x[static_cast<Eigen::Index>(s)] * c.branch(s).multiplicity);
    }
    for (const auto& sb : input->path) {
        sol.input_voltage += sb.sign * f_resistive.eval_signed(x[static_cast<Eigen::Index>(sb.branch)]);
    }
    if (f_resistive.size() == 1) {
        const auto& t = f_resistive.terms().front();
        sol.phi_meshes = sol.input_voltage / (t.coefficient * std::pow(i_in, t.exponent));
    }
    return sol;
}

double phi_meshes_from_nodes(const std::function<double(double)>& phi_nodes, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    return 1.0 / std::pow(phi_nodes(1.0 / alpha), alpha);
}

double phi_b6_closed_form(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const double root2 = std::pow(2.0, 1.0 / alpha);
    const double q = 2.0 + std::pow(1.0 + root2, alpha);
    return q / std::pow(1.0 + root2 + std::pow(q, 1.0 / alpha), alpha);
}

PowerLawPort PowerLawPort::to_dual() const {
    PowerLawPort dual;
    dual.alpha = 1.0 / alpha;
    dual.coefficient = std::pow(coefficient, -dual.alpha);
    dual.phi = [inner = phi](double a) { return std::pow(inner(1.0 / a), -a); };
    return dual;
}

}  // namespace alphaport
