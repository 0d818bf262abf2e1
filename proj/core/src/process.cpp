#include "poissonbm/process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "poissonbm/reduction.hpp"

namespace poissonbm {
namespace {

std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double path_time(double t, double epsilon)
{
    long double const e = epsilon;
    return static_cast<double>(2.0L * static_cast<long double>(t) / (e * e));
}

//---------------------------------------------------------------------------//
EvaluationGrid::EvaluationGrid(std::vector<double> times, double horizon)
    : times_(std::move(times)), horizon_(horizon)
{
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
        throw std::invalid_argument("grid horizon T must be positive");
    if (times_.empty() || times_.front() != 0.0)
        throw std::invalid_argument("evaluation grid must start at t = 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
    {
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("grid times must strictly increase");
    }
    if (times_.back() > horizon_)
        throw std::invalid_argument("grid extends past the horizon T");
}

EvaluationGrid EvaluationGrid::uniform(double horizon, std::size_t steps)
{
    if (steps == 0)
        throw std::invalid_argument("uniform grid needs at least one step");
    std::vector<double> times(steps + 1);
    for (std::size_t i = 0; i < steps; ++i)
        times[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
    times[steps] = horizon;
    return EvaluationGrid(std::move(times), horizon);
}

std::size_t EvaluationGrid::index_of(double t) const
{
    double const tol = 1e-12 * std::max(1.0, horizon_);
    auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
    if (it == times_.end() || std::fabs(*it - t) > tol)
    {
        throw std::invalid_argument("time " + format_g17(t)
                                    + " is not on the evaluation grid");
    }
    return static_cast<std::size_t>(it - times_.begin());
}

//---------------------------------------------------------------------------//
ProcessSample::ProcessSample(double epsilon,
                             std::shared_ptr<ThetaConfig const> config,
                             std::shared_ptr<EvaluationGrid const> grid,
                             std::vector<double> values)
    : epsilon_(epsilon)
    , config_(std::move(config))
    , grid_(std::move(grid))
    , values_(std::move(values))
{
    if (!config_ || !grid_)
        throw std::invalid_argument("sample requires a config and a grid");
    if (values_.size() != config_->dimension() * grid_->size())
        throw std::invalid_argument("sample value array has the wrong size");
}

std::span<double const> ProcessSample::component(std::size_t c) const
{
    if (c >= dimension())
        throw std::out_of_range("component index out of range");
    return std::span<double const>(values_).subspan(c * grid_->size(),
                                                    grid_->size());
}

//---------------------------------------------------------------------------//
std::size_t default_table_size(double horizon)
{
    return static_cast<std::size_t>(horizon + 10.0 * std::sqrt(horizon) + 32.0);
}

SampleBuilder::SampleBuilder(std::shared_ptr<ThetaConfig const> config,
                             std::shared_ptr<EvaluationGrid const> grid,
                             double epsilon,
                             std::size_t table_size)
    : config_(std::move(config))
    , grid_(std::move(grid))
    , epsilon_(epsilon)
    , table_size_(table_size)
{
    if (!config_ || !grid_)
        throw std::invalid_argument("sample builder requires config and grid");
    if (config_->dimension() == 0)
        throw std::invalid_argument("no process components requested");
    if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_))
        throw std::invalid_argument("epsilon must be positive");
    required_horizon_ = path_time(grid_->horizon(), epsilon_);
    if (!(required_horizon_ <= kMaxPathHorizon))
    {
        throw std::invalid_argument(
            "path horizon 2T/eps^2 = " + format_g17(required_horizon_)
            + " exceeds the cap " + format_g17(kMaxPathHorizon));
    }
    path_times_.reserve(grid_->size());
    for (double t : grid_->times())
        path_times_.push_back(path_time(t, epsilon_));

    std::size_t const d = config_->dimension();
    tables_.resize(d * table_size_);
    for (std::size_t c = 0; c < d; ++c)
    {
        Angle const& theta = config_->angle(c);
        TrigKind const kind = config_->kind(c);
        for (std::size_t k = 0; k < table_size_; ++k)
            tables_[c * table_size_ + k] = trig_value(theta, k, kind);
    }
}

double SampleBuilder::trig(std::size_t c, std::uint64_t k) const
{
    if (k < table_size_)
        return tables_[c * table_size_ + k];
    return trig_value(config_->angle(c), k, config_->kind(c));
}

ProcessSample SampleBuilder::build(PoissonPath const& path) const
{
    if (path.horizon < required_horizon_)
    {
        throw std::invalid_argument(
            "Poisson path horizon " + format_g17(path.horizon)
            + " is shorter than the required 2T/eps^2 = "
            + format_g17(required_horizon_));
    }
    std::size_t const d = config_->dimension();
    std::size_t const g_count = grid_->size();
    auto const& jumps = path.jump_times;
    std::vector<double> values(d * g_count);

    for (std::size_t c = 0; c < d; ++c)
    {
        double const scale = config_->is_pi_rescaled(c) ? kPiRescaleFactor
                                                        : 1.0;
        CompensatedSum acc;
        double pos = 0.0;
        std::uint64_t k = 0;
        std::size_t j = 0;
        for (std::size_t g = 0; g < g_count; ++g)
        {
            double const tau = path_times_[g];
            for (; j < jumps.size() && jumps[j] < tau; ++j, ++k)
            {
                acc.add(trig(c, k) * (jumps[j] - pos));
                pos = jumps[j];
            }
            CompensatedSum partial = acc;
            partial.add(trig(c, k) * (tau - pos));
            double v = epsilon_ * partial.result();
            if (scale != 1.0)
                v *= scale;
            values[c * g_count + g] = v;
        }
    }
    return ProcessSample(epsilon_, config_, grid_, std::move(values));
}

ProcessSample build_sample(PoissonPath const& path,
                           double epsilon,
                           ThetaConfig const& config,
                           EvaluationGrid const& grid)
{
    SampleBuilder builder(std::make_shared<ThetaConfig const>(config),
                          std::make_shared<EvaluationGrid const>(grid),
                          epsilon,
                          path.jump_times.size() + 1);
    return builder.build(path);
}

IncrementTable increments(ProcessSample const& sample,
                          std::span<std::pair<double, double> const> pairs)
{
    IncrementTable table;
    table.dimension = sample.dimension();
    table.pairs.assign(pairs.begin(), pairs.end());
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(pairs.size());
    for (auto const& [s, t] : pairs)
    {
        if (!(s < t))
            throw std::invalid_argument("increment pair requires s < t");
        idx.emplace_back(sample.grid().index_of(s), sample.grid().index_of(t));
    }
    table.deltas.resize(table.dimension * pairs.size());
    for (std::size_t c = 0; c < table.dimension; ++c)
    {
        for (std::size_t k = 0; k < idx.size(); ++k)
        {
            table.deltas[c * pairs.size() + k] = sample.value(c, idx[k].second)
                                                 - sample.value(c, idx[k].first);
        }
    }
    return table;
}

void write_sample_csv(std::ostream& os, ProcessSample const& sample)
{
    os << 't';
    for (std::size_t c = 0; c < sample.dimension(); ++c)
        os << ",comp_" << (c + 1);
    os << '\n';
    for (std::size_t g = 0; g < sample.grid().size(); ++g)
    {
        os << format_g17(sample.grid()[g]);
        for (std::size_t c = 0; c < sample.dimension(); ++c)
            os << ',' << format_g17(sample.value(c, g));
        os << '\n';
    }
}

}  // namespace poissonbm
