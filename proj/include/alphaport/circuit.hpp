#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alphaport/characteristic.hpp"

namespace alphaport {

using NodeIndex = std::size_t;
using BranchIndex = std::size_t;

/// One conductor (or `multiplicity` identical conductors in parallel).
struct Branch {
    NodeIndex from = 0;
    NodeIndex to = 0;
    int multiplicity = 1;

    bool operator==(const Branch&) const = default;
};

/// Branch reference with traversal direction, used by mesh loops.
struct SignedBranch {
    BranchIndex branch = 0;
    int sign = 1;  ///< +1 along the branch orientation, -1 against it

    bool operator==(const SignedBranch&) const = default;
};

/// A closed KVL loop, or (for the reserved id "in") the path a -> b that the
/// input current source drives.
struct MeshLoop {
    std::string id;
    std::vector<SignedBranch> path;

    bool operator==(const MeshLoop&) const = default;
};

inline constexpr std::string_view kInputMeshId = "in";

/// A one-port built from identical conductors.
///
/// Node names are case-sensitive; node indices follow the order in which
/// names were first introduced. The input port is (a, b) with b as ground.
/// Circuits are immutable once built; structural problems (disconnected
/// nodes, a == b, ...) are allowed here and reported by `validate`.
class Circuit {
public:
    class Builder;

    std::size_t node_count() const noexcept { return names_.size(); }
    std::size_t branch_count() const noexcept { return branches_.size(); }

    const std::vector<std::string>& node_names() const noexcept { return names_; }
    const std::string& node_name(NodeIndex n) const { return names_.at(n); }
    std::optional<NodeIndex> find_node(std::string_view name) const;
    /// Throws DomainError for an unknown name.
    NodeIndex node(std::string_view name) const;

    const std::vector<Branch>& branches() const noexcept { return branches_; }
    const Branch& branch(BranchIndex i) const { return branches_.at(i); }

    NodeIndex input_a() const noexcept { return a_; }
    NodeIndex input_b() const noexcept { return b_; }

    /// Optional `.f` metadata carried by a netlist.
    const std::optional<Characteristic>& characteristic() const noexcept { return f_; }
    /// Optional `.mesh` loops carried by a netlist.
    const std::vector<MeshLoop>& meshes() const noexcept { return meshes_; }

    /// Copy with extra metadata attached.
    Circuit with_characteristic(Characteristic f) const;
    Circuit with_meshes(std::vector<MeshLoop> meshes) const;

    /// Structural equality by node *names*: node numbering may differ.
    bool operator==(const Circuit& other) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, NodeIndex, std::less<>> index_;
    std::vector<Branch> branches_;
    NodeIndex a_ = 0;
    NodeIndex b_ = 0;
    std::optional<Characteristic> f_;
    std::vector<MeshLoop> meshes_;
};

class Circuit::Builder {
public:
    /// Returns the index of `name`, creating the node on first use.
    NodeIndex add_node(std::string_view name);
    Builder& add_branch(std::string_view from, std::string_view to, int multiplicity = 1);
    Builder& set_input(std::string_view a, std::string_view b);
    Builder& set_characteristic(Characteristic f);
    Builder& add_mesh(MeshLoop loop);

    bool has_input() const noexcept { return has_input_; }

    /// DomainError when no input port was set or a multiplicity is < 1.
    Circuit build() const;

private:
    Circuit c_;
    bool has_input_ = false;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { warning, error };

struct ValidationIssue {
    Severity severity = Severity::error;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

/// Connectivity, port reachability and branch sanity. Never throws.
ValidationReport validate(const Circuit& c);

/// Throws InvalidCircuit listing every error-severity issue.
void require_valid(const Circuit& c);

// ---------------------------------------------------------------------------
// Netlist text

/// Line-oriented netlist:
///
///     # comment
///     .input <a> <b>
///     .branch <n1> <n2> [w=<K>]
///     .f <D>:<alpha>[,<D>:<alpha>...]
///     .mesh <id> <[+|-]branch-index>...
///
/// Branch indices are 0-based in order of appearance. A mesh with id "in" is
/// the source path from a to b.
Circuit parse_netlist(std::string_view text);

/// Renders a netlist that `parse_netlist` maps back to an equal Circuit.
std::string render_netlist(const Circuit& c);

// ---------------------------------------------------------------------------
// Canonical topologies

enum class CanonicalCircuit { fig_a1, fig3, fig4, ladder, fig_b1 };

struct CanonicalParams {
    int sections = 1;      ///< ladder only, >= 1
    bool central = false;  ///< ladder only: direct a-b conductor
};

std::optional<CanonicalCircuit> canonical_from_name(std::string_view name);
std::string_view canonical_name(CanonicalCircuit which);

/// fig_a1: a-b, a-o, o-b, o-x, x-b.
/// fig3: a direct a-b conductor, a two-element series branch a-s-b and the
///       fig_a1 bridge (a-o, o-b, o-x, x-b) in parallel.
/// fig4: a-b plus two three-element dividers a-c-d-b and a-e-f-b joined by
///       c-e and d-f.
/// ladder: `sections` cells of {top series, bottom series, shunt}; the last
///       shunt terminates the line. `central` prepends a direct a-b branch.
/// fig_b1: the fig_a1 graph with its two-mesh basis attached.
Circuit build_canonical(CanonicalCircuit which, const CanonicalParams& params = {});
/// DomainError for an unknown name.
Circuit build_canonical(std::string_view name, const CanonicalParams& params = {});

}  // namespace alphaport
