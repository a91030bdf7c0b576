#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcpl/qcp.hpp"

namespace qcpl::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kPass = 0,
    kCheckFailure = 1,
    kUsage = 2,
    kDegeneracy = 3,
    kIo = 4,
};

/// Parsed invocation. Grids are the cross product q_grid x c_grid; a single
/// pair emits a flat report object, anything else a document with a "runs"
/// list (possibly empty).
struct RunConfig {
    std::string subcommand;
    std::vector<double> q_grid{2.0};
    std::vector<double> c_grid{1.0};
    double t1_angle = 0.0;
    int n = 256;
    int k = 40;
    double tol = 1e-10;
    int margin = 64;
    std::string format = "json";  // json | csv
    std::string out;              // empty: stdout
    std::vector<double> gauge_angles{0.0, 1.0471975511965976};  // 0, pi/3
    int max_freq = 3;
    int grid_size = 256;
};

struct RunOutcome {
    int exit_code = kPass;
    std::string first_failure;  // first failing check class, empty on pass
    nlohmann::ordered_json document;
};

/// Executes the configured subcommand over the parameter grid and assembles
/// the report document. Does not write anything.
RunOutcome run_report(const RunConfig& config);

/// Deterministic serialization: fixed field order, floats as %#.17g.
std::string to_json_text(const nlohmann::ordered_json& doc);

/// Flat CSV tables (eigenvalues and weights) of a report document.
std::string to_csv_text(const nlohmann::ordered_json& doc);

/// Serializes per config.format and writes to config.out or stdout.
/// Returns kIo on write failure, else outcome.exit_code.
int emit(const RunOutcome& outcome, const RunConfig& config);

/// Full command-line entry point (parse + run + emit).
int main_impl(int argc, char** argv);

}  // namespace qcpl::cli
