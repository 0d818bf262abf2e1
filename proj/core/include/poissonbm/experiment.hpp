#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "poissonbm/random.hpp"
#include "poissonbm/run_config.hpp"
#include "poissonbm/statistics.hpp"
#include "poissonbm/theta_config.hpp"

namespace poissonbm {

char const* tool_version();

/// θ failed validation outside counterexample mode.
class HypothesisError : public std::runtime_error
{
  public:
    explicit HypothesisError(HypothesisReport report);
    HypothesisReport const& report() const noexcept { return report_; }

  private:
    HypothesisReport report_;
};

enum class Relation
{
    // |value - target| <= band
    kWithinBand,
    // value >= target
    kAtLeast,
    // value <= target
    kAtMost,
    // value < target
    kBelow,
};

char const* to_string(Relation relation);

struct CheckResult
{
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
    double target = 0.0;
    double band = 0.0;
    Relation relation = Relation::kWithinBand;
    bool pass = false;
};

CheckResult make_check(std::string name,
                       double value,
                       double std_error,
                       double target,
                       double band,
                       Relation relation = Relation::kWithinBand);

/// Band used for every "≈ target" Monte Carlo comparison.
inline constexpr double kStandardErrorBand = 4.0;

struct CrossMomentRecord
{
    std::size_t i = 0;  // 0-based components
    std::size_t j = 0;
    PairKind kind = PairKind::kCosCos;
    Estimate estimate;
    // Absent for pairs whose structural bound degenerates
    std::optional<double> bound_total;
};

struct FourthMomentRecord
{
    std::size_t component = 0;
    double s = 0.0;
    double t = 0.0;
    Estimate ratio;
};

struct HistogramRecord
{
    std::size_t component = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint64_t> counts;
};

inline constexpr std::size_t kHistogramBins = 50;
inline constexpr double kHistogramHalfWidthSd = 5.0;

/// 50 bins over mean ± 5 sd; outliers are clamped into the end bins.
HistogramRecord make_histogram(std::size_t component,
                               std::span<double const> values);

struct EpsilonResult
{
    double epsilon = 0.0;
    std::vector<CheckResult> checks;
    std::optional<EstimateMatrix> covariance;
    std::vector<CrossMomentRecord> cross_moments;
    std::vector<FourthMomentRecord> fourth_moments;
    std::vector<HistogramRecord> marginals;
};

struct RunReport
{
    std::string tool_version;
    RunConfig config;
    HypothesisReport hypothesis;
    std::vector<EpsilonResult> per_epsilon;
    std::vector<CheckResult> sweep_checks;
    std::size_t checks_total = 0;
    std::size_t checks_failed = 0;
    bool all_pass = false;
};

struct RunTimings
{
    double total_seconds = 0.0;
    std::vector<double> per_epsilon_seconds;
};

struct RunOptions
{
    std::size_t workers = 1;
};

/*!
 * Run every requested check for every ε.
 *
 * Replication r at ε index e draws from derive_stream(seed, e, r) and lands
 * in slot r, so results do not depend on the worker count. Throws
 * HypothesisError for invalid θ unless allow_invalid_theta is set, and
 * ConfigError when a resource cap is exceeded.
 */
RunReport run_experiment(RunConfig const& config,
                         RunOptions const& options = {},
                         RunTimings* timings = nullptr);

/// Simulate M samples at one ε (exposed for the acceptance suite).
std::vector<ProcessSample> simulate_samples(ThetaConfig const& theta,
                                            double horizon_T,
                                            std::size_t grid_steps,
                                            double epsilon,
                                            std::size_t replications,
                                            std::uint64_t master_seed,
                                            std::uint32_t epsilon_index,
                                            std::size_t workers);

/// Dyadic sub-intervals of [0, T] that fall on a grid with `steps` steps.
std::vector<std::pair<double, double>> dyadic_pairs(double horizon,
                                                    std::size_t steps,
                                                    unsigned max_level = 2);

//---------------------------------------------------------------------------//
// Serialization

std::string report_to_json(RunReport const& report);
RunReport report_from_json(std::string const& text);
std::string report_checks_csv(RunReport const& report);
std::string timings_to_json(RunTimings const& timings, std::size_t workers);

/// Write report.json, checks.csv and timings.json into the directory.
void write_report(RunReport const& report,
                  RunTimings const& timings,
                  std::size_t workers,
                  std::filesystem::path const& dir);

RunReport load_report(std::filesystem::path const& file);

}  // namespace poissonbm
