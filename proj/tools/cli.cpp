#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "alphaport/alpha_analysis.hpp"
#include "alphaport/error.hpp"
#include "alphaport/ladder.hpp"
#include "alphaport/mesh.hpp"
#include "alphaport/nodal_solver.hpp"
#include "alphaport/superposition.hpp"

namespace alphaport::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "1.0.0";

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

Json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(fmt(x).c_str(), nullptr);
}

Json num(const std::optional<double>& x) { return x ? num(*x) : Json(nullptr); }

// ---------------------------------------------------------------------------
// Tabular output shared by csv and text.

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            if (cells[i].find_first_of(",\"") == std::string::npos) {
                out << cells[i];
                continue;
            }
            out << '"';
            for (char ch : cells[i]) out << (ch == '"' ? "\"\"" : std::string(1, ch));
            out << '"';
        }
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

void write_text_table(std::ostream& out, const Table& t) {
    std::vector<std::size_t> width(t.header.size(), 0);
    auto widen = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], cells[i].size());
    };
    widen(t.header);
    for (const auto& r : t.rows) widen(r);
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += "  ";
            s += cells[i];
            if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
        }
        out << s << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

// Key/value report for text output; insertion ordered.
using Pairs = std::vector<std::pair<std::string, std::string>>;

void write_pairs(std::ostream& out, const Pairs& p) {
    for (const auto& [k, v] : p) out << k << " = " << v << '\n';
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------

struct Output {
    Json json;    // payload for --format json
    Table table;  // csv and text tables
    Pairs pairs;  // text scalars (printed before the table in text mode)
    bool tabular = false;
};

Circuit load_circuit(const RunConfig& cfg) {
    if (cfg.netlist_path && cfg.canonical)
        throw ParseError(0, "give either --netlist or --canonical, not both");
    if (cfg.netlist_path) {
        std::ifstream in(*cfg.netlist_path);
        if (!in) throw ParseError(0, "cannot read netlist '" + *cfg.netlist_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_netlist(ss.str());
    }
    if (cfg.canonical) {
        if (cfg.sections < 1) throw ParseError(0, "--sections must be at least 1");
        return build_canonical(*cfg.canonical, {cfg.sections, cfg.central});
    }
    throw ParseError(0, "a circuit is required (--netlist or --canonical)");
}

std::string circuit_label(const RunConfig& cfg) {
    if (cfg.netlist_path) return *cfg.netlist_path;
    std::string s = *cfg.canonical;
    if (*cfg.canonical == "ladder") {
        s += "(" + std::to_string(cfg.sections) + (cfg.central ? ",central" : "") + ")";
    }
    return s;
}

Characteristic require_characteristic(const RunConfig& cfg, const Circuit& c) {
    if (cfg.characteristic) return parse_characteristic(*cfg.characteristic);
    if (c.characteristic()) return *c.characteristic();
    throw ParseError(0, "a characteristic is required (--f or a .f directive)");
}

double require_positive(const std::optional<double>& v, const char* flag) {
    if (!v) throw ParseError(0, std::string(flag) + " is required");
    if (!(*v > 0.0) || !std::isfinite(*v)) throw ParseError(0, std::string(flag) + " must be positive");
    return *v;
}

std::vector<double> require_grid(const std::optional<std::string>& text, const char* flag) {
    auto g = parse_grid(*text);
    if (g.empty()) throw ParseError(0, std::string(flag) + " is empty");
    for (double x : g) {
        if (!(x > 0.0)) throw ParseError(0, std::string(flag) + " values must be positive");
    }
    return g;
}

Json circuit_json(const RunConfig& cfg, const Circuit& c) {
    Json j;
    j["source"] = circuit_label(cfg);
    j["nodes"] = c.node_names();
    j["branches"] = c.branch_count();
    return j;
}

Json term_json(const PerTerm& t) {
    return Json{{"alpha", num(t.alpha)},
                {"coefficient", num(t.coefficient)},
                {"phi", num(t.phi)},
                {"g_term", num(t.g_term)},
                {"connected", num(t.connected)}};
}

Json report_json(const SuperpositionReport& r) {
    Json j;
    j["v_in"] = num(r.v_in);
    j["F"] = num(r.F);
    j["G"] = num(r.G);
    j["eta"] = num(r.eta);
    j["eta_power"] = num(r.eta_power);
    j["eta_nonlinear"] = num(r.eta_nonlinear);
    j["nonlinearity_degree"] = num(r.nonlinearity_degree);
    j["bound"] = num(r.bound);
    j["bound_normalized"] = r.bound_normalized;
    j["per_term"] = Json::array();
    for (const auto& t : r.per_term) j["per_term"].push_back(term_json(t));
    return j;
}

std::vector<std::string> report_header(const SuperpositionReport& r) {
    std::vector<std::string> h{"v_in", "F", "G", "eta", "eta_nonlinear", "nonlinearity_degree", "bound"};
    for (std::size_t p = 1; p <= r.per_term.size(); ++p) {
        const auto i = std::to_string(p);
        h.push_back("alpha_" + i);
        h.push_back("phi_" + i);
        h.push_back("g_term_" + i);
        h.push_back("connected_" + i);
    }
    return h;
}

std::vector<std::string> report_row(const SuperpositionReport& r) {
    std::vector<std::string> row{fmt(r.v_in), fmt(r.F), fmt(r.G), fmt(r.eta), fmt(r.eta_nonlinear),
                                 fmt(r.nonlinearity_degree), r.bound ? fmt(*r.bound) : ""};
    for (const auto& t : r.per_term) {
        row.push_back(fmt(t.alpha));
        row.push_back(fmt(t.phi));
        row.push_back(fmt(t.g_term));
        row.push_back(fmt(t.connected));
    }
    return row;
}

// ---------------------------------------------------------------------------
// Commands

Output do_analyze(const RunConfig& cfg) {
    const auto c = load_circuit(cfg);
    const auto f = require_characteristic(cfg, c);
    const double v_in = require_positive(cfg.v_in, "--vin");
    const auto sol = solve_dc(c, f, v_in);

    Output o;
    Json r;
    r["v_in"] = num(sol.v_in);
    r["F"] = num(sol.input_current);
    r["F_a"] = num(sol.input_current_a);
    r["iterations"] = sol.iterations;
    r["relative_residual"] = num(sol.relative_residual);
    Json pots = Json::object();
    Json d = Json::object();
    for (std::size_t k = 0; k < c.node_count(); ++k) {
        pots[c.node_name(k)] = num(sol.potentials[k]);
        d[c.node_name(k)] = num(sol.potentials[k] / v_in);
    }
    r["potentials"] = pots;
    r["d"] = d;
    r["branches"] = Json::array();
    o.table.header = {"branch", "from", "to", "multiplicity", "voltage", "current"};
    for (std::size_t s = 0; s < c.branch_count(); ++s) {
        const auto& br = c.branch(s);
        auto from = c.node_name(br.from);
        auto to = c.node_name(br.to);
        if (sol.orientation[s] < 0) std::swap(from, to);
        r["branches"].push_back(Json{{"from", from},
                                     {"to", to},
                                     {"multiplicity", br.multiplicity},
                                     {"voltage", num(sol.branch_voltages[s])},
                                     {"current", num(sol.branch_currents[s])}});
        o.table.rows.push_back({std::to_string(s), from, to, std::to_string(br.multiplicity),
                                fmt(sol.branch_voltages[s]), fmt(sol.branch_currents[s])});
    }
    o.json["circuit"] = circuit_json(cfg, c);
    o.json["characteristic"] = to_string(f);
    o.json["result"] = r;

    o.pairs = {{"circuit", circuit_label(cfg)},
               {"characteristic", to_string(f)},
               {"v_in", fmt(sol.v_in)},
               {"F", fmt(sol.input_current)},
               {"iterations", std::to_string(sol.iterations)}};
    for (std::size_t k = 0; k < c.node_count(); ++k) {
        o.pairs.emplace_back("potential[" + c.node_name(k) + "]", fmt(sol.potentials[k]));
    }
    o.tabular = cfg.format == Format::csv;
    return o;
}

Output do_alpha_test(const RunConfig& cfg) {
    const auto c = load_circuit(cfg);
    const double alpha = require_positive(cfg.alpha, "--alpha");
    const auto p = alpha_solve(c, alpha);

    Output o;
    Json r;
    r["alpha"] = num(p.alpha);
    r["phi"] = num(p.phi);
    r["phi_a_side"] = num(p.phi_a_side);
    Json d = Json::object();
    for (std::size_t k = 0; k < p.nodes.size(); ++k) d[p.nodes[k]] = num(p.d[k]);
    r["d"] = d;
    o.json["circuit"] = circuit_json(cfg, c);
    o.json["result"] = r;

    o.table.header = {"alpha", "phi"};
    o.table.rows.push_back({fmt(p.alpha), fmt(p.phi)});
    for (std::size_t k = 0; k < p.nodes.size(); ++k) {
        o.table.header.push_back("d_" + p.nodes[k]);
        o.table.rows.back().push_back(fmt(p.d[k]));
    }
    o.pairs = {{"circuit", circuit_label(cfg)}, {"alpha", fmt(p.alpha)}, {"phi", fmt(p.phi)}};
    for (std::size_t k = 0; k < p.nodes.size(); ++k) o.pairs.emplace_back("d[" + p.nodes[k] + "]", fmt(p.d[k]));
    o.tabular = cfg.format == Format::csv;
    return o;
}

Output do_superpose(const RunConfig& cfg) {
    const auto c = load_circuit(cfg);
    const auto f = require_characteristic(cfg, c);
    const double v_in = require_positive(cfg.v_in, "--vin");
    const auto r = report(c, f, v_in);

    Output o;
    o.json["circuit"] = circuit_json(cfg, c);
    o.json["characteristic"] = to_string(f);
    o.json["result"] = report_json(r);
    o.table.header = report_header(r);
    o.table.rows.push_back(report_row(r));
    o.pairs = {{"circuit", circuit_label(cfg)},
               {"characteristic", to_string(f)},
               {"v_in", fmt(r.v_in)},
               {"F", fmt(r.F)},
               {"G", fmt(r.G)},
               {"eta", fmt(r.eta)},
               {"eta_power", fmt(r.eta_power)},
               {"eta_nonlinear", fmt(r.eta_nonlinear)},
               {"nonlinearity_degree", fmt(r.nonlinearity_degree)},
               {"bound", r.bound ? fmt(*r.bound) + (r.bound_normalized ? " (normalized)" : "") : "n/a"}};
    for (std::size_t p = 0; p < r.per_term.size(); ++p) {
        const auto& t = r.per_term[p];
        o.pairs.emplace_back("phi(" + fmt(t.alpha) + ")", fmt(t.phi));
    }
    o.tabular = cfg.format == Format::csv;
    return o;
}

Output do_ladder(const RunConfig& cfg) {
    std::vector<double> alphas;
    if (cfg.alpha_grid) alphas = require_grid(cfg.alpha_grid, "--alpha-grid");
    if (cfg.alpha) alphas.insert(alphas.begin(), require_positive(cfg.alpha, "--alpha"));
    if (alphas.empty()) throw ParseError(0, "--alpha or --alpha-grid is required");

    Output o;
    o.tabular = true;
    o.table.header = {"alpha", "lambda", "phi"};
    Json rows = Json::array();
    for (double a : alphas) {
        const auto r = ladder_result(a, cfg.central);
        rows.push_back(Json{{"alpha", num(r.alpha)}, {"lambda", num(r.lambda)}, {"phi", num(r.phi)}});
        o.table.rows.push_back({fmt(r.alpha), fmt(r.lambda), fmt(r.phi)});
    }
    o.json["result"] = Json{{"central", cfg.central}, {"rows", rows}};
    return o;
}

Output do_mesh(const RunConfig& cfg) {
    const auto c = load_circuit(cfg);
    if (c.meshes().empty()) throw ParseError(0, "circuit has no mesh basis (.mesh directives)");
    if (cfg.characteristic && cfg.alpha) throw ParseError(0, "give either --f or --alpha, not both");
    const auto f = cfg.alpha ? Characteristic::power_law(require_positive(cfg.alpha, "--alpha"))
                             : require_characteristic(cfg, c);
    const double i_in = require_positive(cfg.i_in, "--iin");
    const auto m = mesh_solve(c, f, i_in);

    Output o;
    Json r;
    r["i_in"] = num(m.i_in);
    r["input_voltage"] = num(m.input_voltage);
    r["phi_meshes"] = num(m.phi_meshes);
    r["iterations"] = m.iterations;
    Json meshes = Json::object();
    for (std::size_t k = 0; k < m.mesh_ids.size(); ++k) meshes[m.mesh_ids[k]] = num(m.mesh_currents[k]);
    r["mesh_currents"] = meshes;
    r["branch_currents"] = Json::array();
    for (double i : m.branch_currents) r["branch_currents"].push_back(num(i));
    o.json["circuit"] = circuit_json(cfg, c);
    o.json["characteristic"] = to_string(f);
    o.json["result"] = r;

    o.table.header = {"i_in", "input_voltage", "phi_meshes"};
    o.table.rows.push_back({fmt(m.i_in), fmt(m.input_voltage), m.phi_meshes ? fmt(*m.phi_meshes) : ""});
    for (std::size_t k = 0; k < m.mesh_ids.size(); ++k) {
        o.table.header.push_back("j_" + m.mesh_ids[k]);
        o.table.rows.back().push_back(fmt(m.mesh_currents[k]));
    }
    o.pairs = {{"circuit", circuit_label(cfg)},
               {"characteristic", to_string(f)},
               {"i_in", fmt(m.i_in)},
               {"input_voltage", fmt(m.input_voltage)},
               {"phi_meshes", m.phi_meshes ? fmt(*m.phi_meshes) : "n/a"}};
    for (std::size_t k = 0; k < m.mesh_ids.size(); ++k) {
        o.pairs.emplace_back("mesh[" + m.mesh_ids[k] + "]", fmt(m.mesh_currents[k]));
    }
    o.tabular = cfg.format == Format::csv;
    return o;
}

Output sweep_vin(const RunConfig& cfg) {
    const auto grid = require_grid(cfg.vin_grid, "--vin-grid");
    const auto c = load_circuit(cfg);
    const auto f = require_characteristic(cfg, c);

    struct Point {
        SuperpositionReport report;
        DcSolution exact;
    };
    std::vector<std::future<Point>> jobs;
    for (double v : grid) {
        jobs.push_back(std::async(std::launch::async, [&c, &f, v] {
            return Point{report(c, f, v), solve_dc(c, f, v)};
        }));
    }
    std::vector<Point> points;
    for (auto& j : jobs) points.push_back(j.get());

    std::vector<std::size_t> internal;
    for (std::size_t k = 0; k < c.node_count(); ++k) {
        if (k != c.input_a() && k != c.input_b()) internal.push_back(k);
    }

    Output o;
    o.tabular = true;
    o.table.header = report_header(points.front().report);
    for (auto k : internal) o.table.header.push_back("d_" + c.node_name(k));
    Json rows = Json::array();
    for (const auto& p : points) {
        auto row = report_row(p.report);
        Json j = report_json(p.report);
        Json d = Json::object();
        for (auto k : internal) {
            const double dk = p.exact.potentials[k] / p.exact.v_in;
            row.push_back(fmt(dk));
            d[c.node_name(k)] = num(dk);
        }
        j["d"] = d;
        rows.push_back(j);
        o.table.rows.push_back(std::move(row));
    }
    o.json["circuit"] = circuit_json(cfg, c);
    o.json["characteristic"] = to_string(f);
    o.json["result"] = Json{{"kind", "vin"}, {"rows", rows}};
    return o;
}

Output sweep_alpha(const RunConfig& cfg) {
    const auto grid = require_grid(cfg.alpha_grid, "--alpha-grid");
    const auto c = load_circuit(cfg);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw ParseError(0, "--alpha-grid must be ascending");
    }
    const auto s = d_sweep(c, grid);

    Output o;
    o.tabular = true;
    o.table.header = {"alpha", "phi"};
    for (const auto& n : s.nodes) o.table.header.push_back("d_" + n);
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.alphas.size(); ++i) {
        std::vector<std::string> row{fmt(s.alphas[i]), fmt(s.profiles[i].phi)};
        Json d = Json::object();
        for (std::size_t k = 0; k < s.nodes.size(); ++k) {
            row.push_back(fmt(s.d[k][i]));
            d[s.nodes[k]] = num(s.d[k][i]);
        }
        rows.push_back(Json{{"alpha", num(s.alphas[i])}, {"phi", num(s.profiles[i].phi)}, {"d", d}});
        o.table.rows.push_back(std::move(row));
    }
    Json verdicts = Json::object();
    for (std::size_t k = 0; k < s.nodes.size(); ++k) {
        verdicts[s.nodes[k]] = std::string(to_string(s.verdicts[k]));
        o.pairs.emplace_back("monotonicity[" + s.nodes[k] + "]", std::string(to_string(s.verdicts[k])));
    }
    o.pairs.emplace_back("violation", s.any_violation() ? "yes" : "no");
    o.json["circuit"] = circuit_json(cfg, c);
    o.json["result"] = Json{{"kind", "alpha"}, {"rows", rows}, {"verdicts", verdicts},
                            {"violation", s.any_violation()}};
    return o;
}

// Typical superposition errors: the bridge of fig_a1, and the plain and
// central infinite ladders with f = v + v^2.
Output sweep_error_table(const RunConfig&) {
    auto bridge = std::async(std::launch::async, [] {
        return report(build_canonical(CanonicalCircuit::fig_a1), parse_characteristic("1:1,1:3"), 1.0).eta;
    });
    const auto f = parse_characteristic("1:1,1:2");
    const std::vector<double> exps{1.0, 2.0};
    auto fit = [&](bool central) {
        return std::async(std::launch::async, [&, central] {
            return extract_series_coeffs(build_canonical(CanonicalCircuit::ladder, {100, central}), f, exps)
                .coefficient(2.0);
        });
    };
    auto plain_fit = fit(false);
    auto central_fit = fit(true);
    const double phi2 = ladder_phi(2.0);
    const double b2 = plain_fit.get();
    const double b2c = central_fit.get();

    struct Row {
        const char* circuit;
        const char* quantity;
        double value;
    };
    const std::vector<Row> table{
        {"fig_a1", "eta at v_in=1, f=1:1,1:3", bridge.get()},
        {"ladder", "quadratic coefficient error, f=1:1,1:2", std::fabs(b2 - phi2) / b2},
        {"ladder(central)", "quadratic coefficient error, f=1:1,1:2", std::fabs(b2c - (1.0 + phi2)) / b2c},
    };

    Output o;
    o.tabular = true;
    o.table.header = {"row", "circuit", "quantity", "error"};
    Json rows = Json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
        o.table.rows.push_back({std::to_string(i + 1), table[i].circuit, table[i].quantity,
                                fmt(table[i].value)});
        rows.push_back(Json{{"row", i + 1},
                            {"circuit", table[i].circuit},
                            {"quantity", table[i].quantity},
                            {"error", num(table[i].value)}});
    }
    o.json["result"] = Json{{"kind", "error_table"}, {"rows", rows}};
    return o;
}

Output do_sweep(const RunConfig& cfg) {
    const int modes = (cfg.vin_grid ? 1 : 0) + (cfg.alpha_grid ? 1 : 0) + (cfg.error_table ? 1 : 0);
    if (modes != 1) throw ParseError(0, "sweep needs exactly one of --vin-grid, --alpha-grid, --error-table");
    if (cfg.vin_grid) return sweep_vin(cfg);
    if (cfg.alpha_grid) return sweep_alpha(cfg);
    return sweep_error_table(cfg);
}

Output dispatch(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::analyze: return do_analyze(cfg);
        case Command::alpha_test: return do_alpha_test(cfg);
        case Command::superpose: return do_superpose(cfg);
        case Command::ladder: return do_ladder(cfg);
        case Command::mesh: return do_mesh(cfg);
        case Command::sweep: return do_sweep(cfg);
    }
    throw ParseError(0, "unknown command");
}

void emit(const RunConfig& cfg, Output& o, std::ostream& out) {
    const std::string stamp = cfg.meta ? utc_timestamp() : std::string();
    switch (cfg.format) {
        case Format::json: {
            Json doc;
            doc["command"] = std::string(command_name(cfg.command));
            for (auto& [k, v] : o.json.items()) doc[k] = v;
            if (cfg.meta) doc["meta"] = Json{{"generated_at", stamp}, {"version", kToolVersion}};
            out << doc.dump(2) << '\n';
            break;
        }
        case Format::csv:
            if (cfg.meta) out << "# generated_at " << stamp << " version " << kToolVersion << '\n';
            write_csv(out, o.table);
            break;
        case Format::text:
            if (cfg.meta) out << "# generated_at " << stamp << " version " << kToolVersion << '\n';
            write_pairs(out, o.pairs);
            if (o.tabular) {
                if (!o.pairs.empty()) out << '\n';
                write_text_table(out, o.table);
            }
            break;
    }
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::analyze: return "analyze";
        case Command::alpha_test: return "alpha-test";
        case Command::superpose: return "superpose";
        case Command::ladder: return "ladder";
        case Command::mesh: return "mesh";
        case Command::sweep: return "sweep";
    }
    return "?";
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
        if (item.empty()) {
            if (comma == std::string_view::npos && out.empty() && pos == 0) break;
            throw ParseError(0, "empty grid entry in '" + std::string(text) + "'");
        }
        const std::string s(item);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
            throw ParseError(0, "bad number '" + s + "' in grid");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        auto o = dispatch(config);
        std::ostringstream buffer;
        emit(config, o, buffer);
        out << buffer.str();
        return kExitOk;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analysis of one-ports built from identical power-law conductors", "alphaport"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "text";

    auto common = [&](CLI::App* sub, bool circuit) {
        if (circuit) {
            sub->add_option("--netlist", cfg.netlist_path, "Netlist file");
            sub->add_option("--canonical", cfg.canonical, "fig_a1, fig3, fig4, ladder or fig_b1");
            sub->add_option("--sections", cfg.sections, "Ladder sections")->capture_default_str();
        }
        sub->add_flag("--central", cfg.central, "Ladder with a direct a-b conductor");
        sub->add_option("--format", format, "json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        sub->add_flag("--meta", cfg.meta, "Add a timestamp and version record");
    };

    auto* analyze = app.add_subcommand("analyze", "Exact DC solution at v_in");
    common(analyze, true);
    analyze->add_option("--f", cfg.characteristic, "Characteristic D:alpha[,D:alpha...]");
    analyze->add_option("--vin", cfg.v_in, "Input voltage");

    auto* alpha = app.add_subcommand("alpha-test", "phi(alpha) and voltage ratios d_k");
    common(alpha, true);
    alpha->add_option("--alpha", cfg.alpha, "Exponent");

    auto* superpose = app.add_subcommand("superpose", "Exact F against the superposition G");
    common(superpose, true);
    superpose->add_option("--f", cfg.characteristic, "Characteristic D:alpha[,D:alpha...]");
    superpose->add_option("--vin", cfg.v_in, "Input voltage");

    auto* ladder = app.add_subcommand("ladder", "Infinite-ladder fixed point (alpha, lambda, phi)");
    common(ladder, false);
    ladder->add_option("--alpha", cfg.alpha, "Exponent");
    ladder->add_option("--alpha-grid", cfg.alpha_grid, "Comma separated exponents");

    auto* mesh = app.add_subcommand("mesh", "Current-driven resistive (mesh) solution");
    common(mesh, true);
    mesh->add_option("--f", cfg.characteristic, "Resistive characteristic v = f(i)");
    mesh->add_option("--alpha", cfg.alpha, "Power law v = i^alpha");
    mesh->add_option("--iin", cfg.i_in, "Input current");

    auto* sweep = app.add_subcommand("sweep", "Tables over v_in or alpha");
    common(sweep, true);
    sweep->add_option("--f", cfg.characteristic, "Characteristic D:alpha[,D:alpha...]");
    sweep->add_option("--vin-grid", cfg.vin_grid, "Comma separated input voltages");
    sweep->add_option("--alpha-grid", cfg.alpha_grid, "Comma separated ascending exponents");
    sweep->add_flag("--error-table", cfg.error_table, "Typical-error table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::vector<std::pair<CLI::App*, Command>> subs{
        {analyze, Command::analyze}, {alpha, Command::alpha_test}, {superpose, Command::superpose},
        {ladder, Command::ladder},   {mesh, Command::mesh},        {sweep, Command::sweep}};
    for (const auto& [sub, cmd] : subs) {
        if (sub->parsed()) cfg.command = cmd;
    }
    cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
    return run(cfg, out, err);
}

}  // namespace alphaport::cli
