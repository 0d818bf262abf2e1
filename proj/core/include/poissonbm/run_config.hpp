#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poissonbm/reduction.hpp"
#include "poissonbm/theta_config.hpp"

namespace poissonbm {

/// Malformed or inadmissible run configuration.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Check
{
    kCovariance,
    kQuadraticVariation,
    kCrossMoment,
    kFourthMoment,
    kNormality,
    kMartingale,
    kStroock,
    kDegeneracy,
};

char const* to_string(Check check);
Check parse_check(std::string_view name);

struct RunConfig
{
    ThetaConfig theta;
    double horizon_T = 1.0;
    std::vector<double> epsilons;
    std::size_t replications = 1000;
    std::size_t grid_points = 64;
    std::uint64_t master_seed = 0;
    // Empty selects the default bundle
    std::vector<Check> checks;
    std::string output_dir = "poissonbm_out";
    bool allow_invalid_theta = false;
    ReductionMode reduction = ReductionMode::kFixedTree;

    // Throws ConfigError on a broken invariant
    void validate() const;

    // Requested checks, or the default bundle for this θ
    std::vector<Check> effective_checks() const;
};

/*!
 * Parse the flat `key = value` format.
 *
 * Lines are UTF-8; `#` starts a comment; list values are comma separated.
 * Angles accept decimal radians or "p/q pi". Unknown keys are errors.
 */
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(std::filesystem::path const& path);

/// Canonical text form; parse_run_config(to_config_text(c)) reproduces c.
std::string to_config_text(RunConfig const& config);

}  // namespace poissonbm
