#include <string>

#include "alphaport/circuit.hpp"
#include "alphaport/error.hpp"

namespace alphaport {

namespace {

Circuit::Builder fig_a1_builder() {
    Circuit::Builder b;
    b.set_input("a", "b");
    b.add_branch("a", "b").add_branch("a", "o").add_branch("o", "b");
    b.add_branch("o", "x").add_branch("x", "b");
    return b;
}

}  // namespace

std::optional<CanonicalCircuit> canonical_from_name(std::string_view name) {
    if (name == "fig_a1") return CanonicalCircuit::fig_a1;
    if (name == "fig3") return CanonicalCircuit::fig3;
    if (name == "fig4") return CanonicalCircuit::fig4;
    if (name == "ladder") return CanonicalCircuit::ladder;
    if (name == "fig_b1") return CanonicalCircuit::fig_b1;
    return std::nullopt;
}

std::string_view canonical_name(CanonicalCircuit which) {
    switch (which) {
        case CanonicalCircuit::fig_a1: return "fig_a1";
        case CanonicalCircuit::fig3: return "fig3";
        case CanonicalCircuit::fig4: return "fig4";
        case CanonicalCircuit::ladder: return "ladder";
        case CanonicalCircuit::fig_b1: return "fig_b1";
    }
    return "?";
}

Circuit build_canonical(CanonicalCircuit which, const CanonicalParams& params) {
    switch (which) {
        case CanonicalCircuit::fig_a1:
            return fig_a1_builder().build();

        case CanonicalCircuit::fig_b1: {
            // Branch order as in fig_a1: 0 a-b, 1 a-o, 2 o-b, 3 o-x, 4 x-b.
            auto b = fig_a1_builder();
            b.add_mesh({std::string(kInputMeshId), {{0, +1}}});
            b.add_mesh({"m1", {{1, +1}, {2, +1}, {0, -1}}});
            b.add_mesh({"m2", {{3, +1}, {4, +1}, {2, -1}}});
            return b.build();
        }

        case CanonicalCircuit::fig3: {
            Circuit::Builder b;
            b.set_input("a", "b");
            b.add_branch("a", "b");
            b.add_branch("a", "s").add_branch("s", "b");
            b.add_branch("a", "o").add_branch("o", "b");
            b.add_branch("o", "x").add_branch("x", "b");
            return b.build();
        }

        case CanonicalCircuit::fig4: {
            Circuit::Builder b;
            b.set_input("a", "b");
            b.add_branch("a", "b");
            b.add_branch("a", "c").add_branch("c", "d").add_branch("d", "b");
            b.add_branch("a", "e").add_branch("e", "f").add_branch("f", "b");
            b.add_branch("c", "e").add_branch("d", "f");
            return b.build();
        }

        case CanonicalCircuit::ladder: {
            if (params.sections < 1) throw DomainError("ladder needs at least one section");
            Circuit::Builder b;
            b.set_input("a", "b");
            if (params.central) b.add_branch("a", "b");
            std::string top = "a";
            std::string bottom = "b";
            for (int k = 1; k <= params.sections; ++k) {
                const std::string t = "t" + std::to_string(k);
                const std::string u = "u" + std::to_string(k);
                b.add_branch(top, t);
                b.add_branch(u, bottom);
                b.add_branch(t, u);
                top = t;
                bottom = u;
            }
            return b.build();
        }
    }
    throw DomainError("unknown canonical circuit");
}

Circuit build_canonical(std::string_view name, const CanonicalParams& params) {
    auto which = canonical_from_name(name);
    if (!which) throw DomainError("unknown canonical circuit '" + std::string(name) + "'");
    return build_canonical(*which, params);
}

}  // namespace alphaport
