#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace alphaport::cli {

enum class Command { analyze, alpha_test, superpose, ladder, mesh, sweep };
enum class Format { json, csv, text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;

struct RunConfig {
    Command command = Command::analyze;

    // Circuit source: exactly one of the two.
    std::optional<std::string> netlist_path;
    std::optional<std::string> canonical;
    int sections = 1;
    bool central = false;

    std::optional<std::string> characteristic;  ///< "D:alpha[,D:alpha...]"
    std::optional<double> v_in;
    std::optional<double> i_in;
    std::optional<double> alpha;

    /// Raw grid texts ("x1,x2,..."); kept as text so that an empty grid can be
    /// told apart from an absent one.
    std::optional<std::string> alpha_grid;
    std::optional<std::string> vin_grid;
    bool error_table = false;

    Format format = Format::text;
    bool meta = false;
};

std::string_view command_name(Command c);

/// Executes one command. Reports go to `out`, diagnostics to `err`. Returns
/// 0 on success, 1 for parse or validation errors, 2 for solver failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including the program name) and runs the command.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Comma separated list of numbers. Throws ParseError on junk.
std::vector<double> parse_grid(std::string_view text);

}  // namespace alphaport::cli
