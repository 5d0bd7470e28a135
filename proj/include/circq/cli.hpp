#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "circq/circulant.hpp"

namespace circq::cli {

enum ExitCode : int {
    kAllPassed = 0,
    kCheckFailed = 1,
    kUsageError = 2,
    kInadmissible = 3,
};

struct RunConfig {
    std::string command;  // validate | metric | christoffel | curvature | basis | verify | scan
    std::filesystem::path spec_path;
    std::vector<Point> points;
    std::optional<int> grid;
    std::vector<std::string> checks;
    std::uint64_t seed = 0;
    int samples = 50;
    std::map<std::string, double> tolerances;
    std::optional<std::filesystem::path> json_path;
};

struct RunResult {
    int exit_code = kAllPassed;
    nlohmann::ordered_json report;
    std::string text;  // human-readable rendering of `report`
};

/// "0.5,-1,2,3" -> Point. Throws InvalidArgument.
Point parse_point(std::string_view text);

/// "name=value" -> (name, value). Throws InvalidArgument.
std::pair<std::string, double> parse_tolerance(std::string_view text);

/// Cartesian product of n equispaced samples per axis, endpoints included
/// (n = 1 takes the box centre). Last coordinate varies fastest.
std::vector<Point> grid_points(const Box& box, int n);

/// Executes one command. Library errors are mapped to exit codes and an
/// {"error": ...} report instead of propagating.
RunResult run(const RunConfig& config);

/// Renders a report as indented "key: value" lines.
std::string render_text(const nlohmann::ordered_json& report);

/// Full command-line entry point: parses argv, runs, prints the text
/// report to `out`, writes JSON when --json is given.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circq::cli
