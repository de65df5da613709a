#pragma once

#include "pecoh/cohomology.hpp"
#include "pecoh/repvariety.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace pecoh {

/// Result of one CLI command. Everything except `timings` is a deterministic
/// function of the inputs.
struct RunReport {
    std::string command;
    std::vector<std::string> lines;
    nlohmann::json data = nlohmann::json::object();
    std::vector<std::string> caveats;
    std::vector<std::pair<std::string, double>> timings;

    /// Report lines, then caveats, then one "time ..." line per timing.
    std::string text() const;
    std::string json_text() const;
};

RunReport cmd_info(const std::string& rule_file);

struct CohomologyOptions {
    std::size_t collar = 1;
    Coefficients coefficients;
    std::string route = "gahler"; ///< "gahler" or "substitution"
    std::size_t max_collar = 3;
    std::size_t window = 2;
};

RunReport cmd_cohomology(const std::string& rule_file, const CohomologyOptions& options);

struct RepvarOptions {
    std::size_t collar = 1;
    std::string group = "cyclic:2";
    /// Walk the tower collar..max_collar and report the limit.
    bool limit = false;
    std::size_t max_collar = 3;
    std::size_t window = 2;
    std::uint64_t budget = kDefaultHomBudget;
};

RunReport cmd_repvar(const std::string& rule_file, const RepvarOptions& options);

struct RenderOptions {
    std::size_t iterations = 3;
    /// Output path; empty keeps the document in data["svg"].
    std::string out;
};

RunReport cmd_render(const std::string& rule_file, const RenderOptions& options);

RunReport cmd_cw(const std::string& complex_file, const Coefficients& coefficients);

} // namespace pecoh
