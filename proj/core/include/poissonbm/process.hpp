#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "poissonbm/poisson.hpp"
#include "poissonbm/theta_config.hpp"

namespace poissonbm {

/// Largest admissible Poisson horizon 2T/ε².
inline constexpr double kMaxPathHorizon = 1e9;

/// 1/√2, applied to θ = π cosine components when rescaling is enabled.
inline constexpr double kPiRescaleFactor = 0.70710678118654752440;

/// Map process time t to Poisson time 2t/ε², computed in extended precision.
double path_time(double t, double epsilon);

//---------------------------------------------------------------------------//
/*!
 * Strictly increasing evaluation times in [0, T] starting at 0.
 */
class EvaluationGrid
{
  public:
    EvaluationGrid(std::vector<double> times, double horizon);

    // 0, T/steps, ..., T
    static EvaluationGrid uniform(double horizon, std::size_t steps);

    std::span<double const> times() const noexcept { return times_; }
    double horizon() const noexcept { return horizon_; }
    std::size_t size() const noexcept { return times_.size(); }
    double operator[](std::size_t i) const { return times_[i]; }

    // Index of the grid time equal to t (relative tolerance 1e-12 of T);
    // throws std::invalid_argument if t is not a grid time
    std::size_t index_of(double t) const;

  private:
    std::vector<double> times_;
    double horizon_;
};

//---------------------------------------------------------------------------//
/*!
 * One evaluated path of the (n+m)-dimensional approximant on a grid.
 */
class ProcessSample
{
  public:
    ProcessSample(double epsilon,
                  std::shared_ptr<ThetaConfig const> config,
                  std::shared_ptr<EvaluationGrid const> grid,
                  std::vector<double> values);

    double epsilon() const noexcept { return epsilon_; }
    ThetaConfig const& config() const noexcept { return *config_; }
    EvaluationGrid const& grid() const noexcept { return *grid_; }
    std::size_t dimension() const noexcept { return config_->dimension(); }

    // Values of one component over the grid
    std::span<double const> component(std::size_t c) const;
    double value(std::size_t c, std::size_t grid_index) const
    {
        return values_[c * grid_->size() + grid_index];
    }
    double value_at(std::size_t c, double t) const
    {
        return value(c, grid_->index_of(t));
    }

  private:
    double epsilon_;
    std::shared_ptr<ThetaConfig const> config_;
    std::shared_ptr<EvaluationGrid const> grid_;
    std::vector<double> values_;  // component-major
};

/// Increments x(t) - x(s) for a list of grid pairs s < t.
struct IncrementTable
{
    std::size_t dimension = 0;
    std::vector<std::pair<double, double>> pairs;
    std::vector<double> deltas;  // component-major: deltas[c * pairs + k]

    double delta(std::size_t c, std::size_t k) const
    {
        return deltas[c * pairs.size() + k];
    }
};

//---------------------------------------------------------------------------//
/*!
 * Reusable builder for samples sharing (θ, grid, ε).
 *
 * Caches trig(θ_c·k) per component up to a table size; values beyond the
 * table fall back to trig_value, so output is identical either way. The
 * builder is immutable after construction and safe to share across threads.
 */
class SampleBuilder
{
  public:
    SampleBuilder(std::shared_ptr<ThetaConfig const> config,
                  std::shared_ptr<EvaluationGrid const> grid,
                  double epsilon,
                  std::size_t table_size);

    // 2T/ε²: the horizon every input path must cover
    double required_horizon() const noexcept { return required_horizon_; }
    double epsilon() const noexcept { return epsilon_; }
    ThetaConfig const& config() const noexcept { return *config_; }
    EvaluationGrid const& grid() const noexcept { return *grid_; }

    ProcessSample build(PoissonPath const& path) const;

  private:
    double trig(std::size_t c, std::uint64_t k) const;

    std::shared_ptr<ThetaConfig const> config_;
    std::shared_ptr<EvaluationGrid const> grid_;
    double epsilon_;
    double required_horizon_;
    std::vector<double> path_times_;
    std::size_t table_size_;
    std::vector<double> tables_;  // component-major trig(θ_c·k)
};

/// Table size that covers a Poisson(horizon) count with overwhelming odds.
std::size_t default_table_size(double horizon);

ProcessSample build_sample(PoissonPath const& path,
                           double epsilon,
                           ThetaConfig const& config,
                           EvaluationGrid const& grid);

IncrementTable increments(ProcessSample const& sample,
                          std::span<std::pair<double, double> const> pairs);

/// CSV with header t,comp_1,...,comp_d and 17 significant digits.
void write_sample_csv(std::ostream& os, ProcessSample const& sample);

}  // namespace poissonbm
