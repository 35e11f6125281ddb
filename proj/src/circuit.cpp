#include "alphaport/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "alphaport/error.hpp"

namespace alphaport {

std::optional<NodeIndex> Circuit::find_node(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeIndex Circuit::node(std::string_view name) const {
    if (auto n = find_node(name)) return *n;
    throw DomainError("unknown node '" + std::string(name) + "'");
}

Circuit Circuit::with_characteristic(Characteristic f) const {
    Circuit copy = *this;
    copy.f_ = std::move(f);
    return copy;
}

Circuit Circuit::with_meshes(std::vector<MeshLoop> meshes) const {
    Circuit copy = *this;
    copy.meshes_ = std::move(meshes);
    return copy;
}

bool Circuit::operator==(const Circuit& other) const {
    if (branches_.size() != other.branches_.size()) return false;
    if (std::set<std::string>(names_.begin(), names_.end()) !=
        std::set<std::string>(other.names_.begin(), other.names_.end())) {
        return false;
    }
    if (names_[a_] != other.names_[other.a_] || names_[b_] != other.names_[other.b_]) return false;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        const auto& l = branches_[i];
        const auto& r = other.branches_[i];
        if (names_[l.from] != other.names_[r.from] || names_[l.to] != other.names_[r.to] ||
            l.multiplicity != r.multiplicity) {
            return false;
        }
    }
    return f_ == other.f_ && meshes_ == other.meshes_;
}

NodeIndex Circuit::Builder::add_node(std::string_view name) {
    if (name.empty()) throw DomainError("node name must not be empty");
    if (auto n = c_.find_node(name)) return *n;
    const NodeIndex n = c_.names_.size();
    c_.names_.emplace_back(name);
    c_.index_.emplace(std::string(name), n);
    return n;
}

Circuit::Builder& Circuit::Builder::add_branch(std::string_view from, std::string_view to,
                                               int multiplicity) {
    if (multiplicity < 1) throw DomainError("branch multiplicity must be >= 1");
    const NodeIndex f = add_node(from);
    const NodeIndex t = add_node(to);
    c_.branches_.push_back({f, t, multiplicity});
    return *this;
}

Circuit::Builder& Circuit::Builder::set_input(std::string_view a, std::string_view b) {
    c_.a_ = add_node(a);
    c_.b_ = add_node(b);
    has_input_ = true;
    return *this;
}

Circuit::Builder& Circuit::Builder::set_characteristic(Characteristic f) {
    c_.f_ = std::move(f);
    return *this;
}

Circuit::Builder& Circuit::Builder::add_mesh(MeshLoop loop) {
    c_.meshes_.push_back(std::move(loop));
    return *this;
}

Circuit Circuit::Builder::build() const {
    if (!has_input_) throw DomainError("circuit has no input port");
    return c_;
}

namespace {

std::vector<std::vector<NodeIndex>> adjacency(const Circuit& c) {
    std::vector<std::vector<NodeIndex>> adj(c.node_count());
    for (const auto& br : c.branches()) {
        if (br.from == br.to) continue;
        adj[br.from].push_back(br.to);
        adj[br.to].push_back(br.from);
    }
    return adj;
}

std::vector<bool> reachable_from(const std::vector<std::vector<NodeIndex>>& adj, NodeIndex start) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<NodeIndex> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        const NodeIndex n = stack.back();
        stack.pop_back();
        for (NodeIndex m : adj[n]) {
            if (!seen[m]) {
                seen[m] = true;
                stack.push_back(m);
            }
        }
    }
    return seen;
}

}  // namespace

ValidationReport validate(const Circuit& c) {
    ValidationReport report;
    auto add = [&report](Severity s, std::string msg) {
        if (s == Severity::error) report.ok = false;
        report.issues.push_back({s, std::move(msg)});
    };

    if (c.node_count() == 0) {
        add(Severity::error, "empty circuit");
        return report;
    }
    if (c.input_a() == c.input_b()) {
        add(Severity::error, "degenerate port: a and b are the same node '" +
                                 c.node_name(c.input_a()) + "'");
    }
    if (c.branch_count() == 0) add(Severity::error, "circuit has no branches");

    for (std::size_t i = 0; i < c.branch_count(); ++i) {
        const auto& br = c.branch(i);
        if (br.from == br.to) {
            add(Severity::error, "branch " + std::to_string(i) + " is a self-loop on node '" +
                                     c.node_name(br.from) + "'");
        }
        if (br.multiplicity < 1) {
            add(Severity::error, "branch " + std::to_string(i) + " has multiplicity < 1");
        }
    }

    const auto adj = adjacency(c);
    const auto from_a = reachable_from(adj, c.input_a());
    if (c.input_a() != c.input_b() && !from_a[c.input_b()]) {
        add(Severity::error, "no path joins a and b");
    }
    for (NodeIndex n = 0; n < c.node_count(); ++n) {
        if (!from_a[n] && n != c.input_b()) {
            add(Severity::error, "disconnected node '" + c.node_name(n) + "'");
        }
    }
    for (NodeIndex n = 0; n < c.node_count(); ++n) {
        if (n == c.input_a() || n == c.input_b()) continue;
        std::set<NodeIndex> neighbours(adj[n].begin(), adj[n].end());
        if (neighbours.size() == 1) {
            add(Severity::warning, "dangling node '" + c.node_name(n) + "' carries no current");
        }
    }
    return report;
}

void require_valid(const Circuit& c) {
    const auto report = validate(c);
    if (report.ok) return;
    std::ostringstream msg;
    msg << "invalid circuit:";
    for (const auto& issue : report.issues) {
        if (issue.severity == Severity::error) msg << ' ' << issue.message << ';';
    }
    throw InvalidCircuit(msg.str());
}

}  // namespace alphaport
