// io.hpp - scenario configuration, dispatch, and result serialization
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/types.hpp"

namespace dicke::io {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutputDirEnvVar = "DICKESIM_OUT_DIR";

// Configuration problem: maps to exit code 2.
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { json, csv };

struct SweepSpec {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
};

struct ScenarioConfig {
    std::string scenario;
    int n_atoms = 2;
    double theta = 0.0;
    double phi = 0.0;
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};
    std::optional<double> phi0t;  // direct coupling phase; otherwise rabi/delta/time
    std::optional<double> rabi;
    std::optional<double> delta;
    std::optional<double> time;
    int n_max = 1;
    double basis_angle = pi / 4.0;        // field-cat measurement basis
    double ratio1 = 100.0;                // validate-effective detuning/coupling points
    double ratio2 = 1000.0;
    std::optional<SweepSpec> sweep;
    std::string output;                   // empty -> stdout
    OutputFormat format = OutputFormat::json;
    bool dump_state = false;
    bool timing = false;                  // wall-clock in the record (breaks byte-identity)
    std::uint64_t seed = 12345;
    bool pi_units = false;

    double resolved_phi0() const;
    double resolved_time() const;
};

struct RunRecord {
    nlohmann::json doc;
};

// "re", "im i", "re+im i" (also "i", "-i"); throws config_error on anything else
cplx parse_complex(const std::string& text);

// Parses a full command line (without argv[0]); validates the
// scenario-specific required set.
ScenarioConfig parse_config(const std::vector<std::string>& args);

// Runs the scenario (or its sweep); deterministic for a fixed config + seed.
std::vector<RunRecord> run_scenario(const ScenarioConfig& config);

std::string serialize(const std::vector<RunRecord>& records, OutputFormat format);

// Full pipeline with exit-code mapping:
//   0 success, 2 configuration error, 3 numerical guard violation
int run_cli(int argc, char** argv);

}  // namespace dicke::io
