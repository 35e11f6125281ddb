#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "alphaport/circuit.hpp"
#include "alphaport/error.hpp"

namespace alphaport {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

SignedBranch parse_signed_branch(std::string_view token, std::size_t line) {
    int sign = 1;
    if (!token.empty() && (token.front() == '+' || token.front() == '-')) {
        sign = token.front() == '-' ? -1 : 1;
        token.remove_prefix(1);
    }
    std::size_t index = 0;
    if (!parse_int(token, index)) {
        throw ParseError(line, "invalid branch reference '" + std::string(token) + "'");
    }
    return {index, sign};
}

}  // namespace

Circuit parse_netlist(std::string_view text) {
    Circuit::Builder builder;
    std::size_t line_no = 0;
    std::size_t input_line = 0;
    std::size_t branches = 0;
    std::vector<std::pair<std::size_t, MeshLoop>> meshes;

    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        const auto directive = tok[0];

        if (directive == ".input") {
            if (tok.size() != 3) throw ParseError(line_no, ".input expects two node names");
            if (input_line != 0) {
                throw ParseError(line_no, "duplicate .input (first given on line " +
                                              std::to_string(input_line) + ")");
            }
            builder.set_input(tok[1], tok[2]);
            input_line = line_no;
        } else if (directive == ".branch") {
            if (tok.size() != 3 && tok.size() != 4) {
                throw ParseError(line_no, ".branch expects two node names and an optional w=<K>");
            }
            int w = 1;
            if (tok.size() == 4) {
                if (tok[3].substr(0, 2) != "w=" || !parse_int(tok[3].substr(2), w) || w < 1) {
                    throw ParseError(line_no, "multiplicity must be w=<positive integer>, got '" +
                                                  std::string(tok[3]) + "'");
                }
            }
            builder.add_branch(tok[1], tok[2], w);
            ++branches;
        } else if (directive == ".f") {
            if (tok.size() < 2) throw ParseError(line_no, ".f expects a characteristic");
            std::string joined;
            for (std::size_t i = 1; i < tok.size(); ++i) joined += tok[i];
            try {
                builder.set_characteristic(parse_characteristic(joined));
            } catch (const Error& e) {
                throw ParseError(line_no, e.what());
            }
        } else if (directive == ".mesh") {
            if (tok.size() < 3) throw ParseError(line_no, ".mesh expects an id and branch references");
            MeshLoop loop{std::string(tok[1]), {}};
            for (std::size_t i = 2; i < tok.size(); ++i) {
                loop.path.push_back(parse_signed_branch(tok[i], line_no));
            }
            meshes.emplace_back(line_no, std::move(loop));
        } else if (!directive.empty() && directive.front() == '.') {
            throw ParseError(line_no, "unknown directive '" + std::string(directive) + "'");
        } else {
            throw ParseError(line_no, "syntax error near '" + std::string(directive) + "'");
        }
    }

    if (input_line == 0) throw ParseError(0, "missing .input directive");
    for (auto& [line, loop] : meshes) {
        for (const auto& sb : loop.path) {
            if (sb.branch >= branches) {
                throw ParseError(line, "mesh '" + loop.id + "' references branch " +
                                           std::to_string(sb.branch) + " which does not exist");
            }
        }
        builder.add_mesh(std::move(loop));
    }
    return builder.build();
}

std::string render_netlist(const Circuit& c) {
    std::ostringstream out;
    out << ".input " << c.node_name(c.input_a()) << ' ' << c.node_name(c.input_b()) << '\n';
    if (c.characteristic()) out << ".f " << to_string(*c.characteristic()) << '\n';
    for (const auto& br : c.branches()) {
        out << ".branch " << c.node_name(br.from) << ' ' << c.node_name(br.to);
        if (br.multiplicity != 1) out << " w=" << br.multiplicity;
        out << '\n';
    }
    for (const auto& m : c.meshes()) {
        out << ".mesh " << m.id;
        for (const auto& sb : m.path) out << ' ' << (sb.sign < 0 ? '-' : '+') << sb.branch;
        out << '\n';
    }
    return out.str();
}

}  // namespace alphaport
