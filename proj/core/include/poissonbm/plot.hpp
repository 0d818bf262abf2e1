#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "poissonbm/experiment.hpp"

namespace poissonbm {

enum class PlotKind
{
    // log_epsilon,log_abs_estimate,log_bound_total for one cross-moment pair
    kRateLogLog,
    // i,j,value,std_error for every entry of the increment covariance
    kCovHeatmap,
    // bin_lo,bin_hi,count for one component's marginal histogram
    kMarginalHist,
};

char const* to_string(PlotKind kind);
// Accepts rate_loglog / cov_heatmap / marginal_hist in either case
PlotKind parse_plot_kind(std::string_view name);

struct PlotOptions
{
    // ε index for heatmaps and histograms; defaults to the smallest ε
    std::optional<std::size_t> epsilon_index;
    // 0-based component for histograms
    std::size_t component = 0;
    // 0-based pair for rate plots; defaults to the first pair with a bound
    std::optional<std::pair<std::size_t, std::size_t>> pair;
};

/*!
 * Plot-ready CSV with a header line.
 *
 * Estimates in the rate plot are floored at their standard error before the
 * log is taken, matching rate_fit. Throws std::invalid_argument when the
 * report lacks the data for the requested kind.
 */
std::string emit_plot_data(RunReport const& report,
                           PlotKind kind,
                           PlotOptions const& options = {});

}  // namespace poissonbm
