#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace easme::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by main() and the tests. `args` excludes the program
// name, e.g. {"translate", "--fasta", "genes.fa"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct HistoryTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;  // NaN where the file says "nan"
};

HistoryTable parse_history_csv(const std::string& text);

// Scatter of objectives (x, y) over the front plus one best-vs-generation
// line chart per objective, as a standalone SVG document.
std::string render_pareto_svg(const nlohmann::json& front, const HistoryTable& history, std::size_t x,
                              std::size_t y);

} // namespace easme::cli
