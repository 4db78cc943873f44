#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tricycle/protocol.hpp"
#include "tricycle/quadrature.hpp"

namespace tricycle::harness {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kIo = 3, kNumerical = 4 };

enum class OutputFormat { csv, jsonl };

/// Bad flags, bad config values, empty grids.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a command needs. Defaults reproduce the caption parameter set.
struct RunConfig {
    double Tc = 2.0;
    double Tp = 2.4;
    double Th = 6.0;
    double zeta_c = 2.0;
    double zeta_h = 2.0;
    std::optional<double> delta_c;  ///< defaults to kB * Tc
    double hbar = 1.0;
    double kB = 1.0;
    double gamma0 = 1.0;
    DriveMode drive = DriveMode::cosine;

    std::vector<double> alphas{0.8};
    std::vector<double> tau_c{20.0};
    std::vector<double> tau_p{20.0};
    std::optional<double> cop_target;

    QuadratureSpec quadrature{};

    std::vector<double> tau_ladder{40.0, 80.0, 160.0};
    int min_steps = 4000;

    std::string out;  ///< empty means stdout
    OutputFormat format = OutputFormat::csv;
};

/// Parses "a:b:step" (inclusive), "x,y,z" or a single number.
/// Throws UsageError on malformed input; an empty string yields an empty list.
std::vector<double> parse_range(std::string_view text);

/// Reads a JSON document whose keys override the defaults in base.
/// Unknown keys are rejected. Throws UsageError, or std::ios_base::failure if unreadable.
RunConfig load_config(const std::string& path, RunConfig base = {});

OutputFormat parse_format(std::string_view text);
DriveMode parse_drive(std::string_view text);

/// Closed cycle for one alpha with all durations set to 1.
CycleConfig base_cycle(const RunConfig& cfg, double alpha);

/// Checks grids are non-empty and positive and the quadrature spec is valid.
void require_valid(const RunConfig& cfg);

/// Worker count: TRICYCLE_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

}  // namespace tricycle::harness
