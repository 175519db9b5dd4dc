#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cft/presets.hpp"
#include "cft/report_json.hpp"

namespace cft {

// Raised for malformed or out-of-range configuration input; the CLI maps
// it to its validation exit status.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CheckSpec {
    std::string name;
    ordered_json params;  // check-specific key/values, already validated
};

struct OutputSpec {
    std::string format = "json";  // json | csv
    std::string path;             // empty = stdout
};

struct ExperimentConfig {
    SequencePair sequences;
    long upto = 6;
    std::optional<unsigned long long> seed;
    std::vector<CheckSpec> checks;
    OutputSpec output;
    ordered_json echo;  // original document (or synthesized preset config)

    static ExperimentConfig from_json(const ordered_json& doc);
    static ExperimentConfig from_file(const std::string& path);

    // preset:<name> with the preset's default check list.
    static ExperimentConfig from_preset(const std::string& preset_name, long upto);
};

// Exit status contract:
//   0 every verdict in {AllHold, Holds}
//   1 some check FailsAt / some certificate Violated
//   2 some result Indeterminate (and nothing failed)
//   4 a digit/precision budget was exhausted mid-check
enum class RunStatus : int { Ok = 0, Failed = 1, Indeterminate = 2, Resource = 4 };

struct RunResult {
    int exit_code = 0;
    ordered_json report;
};

RunResult run(const ExperimentConfig& config);

// Serialize according to config.output (format only; writing to
// config.output.path is the caller's job).
std::string render_output(const ExperimentConfig& config, const ordered_json& report);

}  // namespace cft
