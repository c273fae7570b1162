#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sharpquad::cli {

/// Validated run description; serializes to canonical JSON so configurations
/// round-trip through files.
struct RunConfig {
    std::string command; // kernel | bound | holder | cube | ball-bv | verify

    std::string p_spec;                 // const:c | poly:... | json | file
    bool has_interval = false;
    double interval_a = 0.0, interval_b = 1.0;
    int n = 0;
    std::string q;                      // "inf" or a number, as written
    std::string weights_spec;           // empty = trivial weights

    // Node policy: exactly one of fixed | optimize | sweep | balance.
    std::string node_policy;
    double node_x = 0.0;
    int sweep_grid = 0;

    std::string omega_spec;             // holder

    int cube_d = 0;
    std::string cube_q;

    double ball_v = 0.0;

    std::string suite;                  // verify
    int trials = 1000;
    std::uint64_t seed = 0;
    std::string verify_spec;            // optional problem JSON

    std::string format = "json";       // json | csv
    std::string output_path;            // empty = standard output
    std::string csv_path;               // kernel: sample dump

    /// Enforces the per-command invariants; error messages name the offending
    /// key and the violated constraint.
    void validate() const;

    std::string to_json(int indent = 2) const;
    static RunConfig from_json(const std::string& text);

    bool operator==(const RunConfig&) const = default;
};

/// Builds a validated RunConfig from command-line arguments (excluding
/// argv[0]) or, with `--config <file>`, from a canonical JSON file. Throws
/// std::invalid_argument with a usage-level message on bad input.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the run; writes the report to `out` (or the configured file) and
/// diagnostics to `err`. Returns the process exit code: 0 on success and,
/// for verify, only when every contract passed.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point used by the binary: parse, validate, run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sharpquad::cli
