#include "poissonbm/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace poissonbm {
namespace {

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t pick_epsilon(RunReport const& report, PlotOptions const& options)
{
    if (report.per_epsilon.empty())
        throw std::invalid_argument("report has no epsilon results");
    std::size_t const idx
        = options.epsilon_index.value_or(report.per_epsilon.size() - 1);
    if (idx >= report.per_epsilon.size())
    {
        throw std::invalid_argument("epsilon index "
                                    + std::to_string(idx) + " out of range");
    }
    return idx;
}

std::string rate_loglog(RunReport const& report, PlotOptions const& options)
{
    if (report.per_epsilon.empty()
        || report.per_epsilon.front().cross_moments.empty())
    {
        throw std::invalid_argument("report has no cross_moment check");
    }
    auto const& first = report.per_epsilon.front().cross_moments;
    auto const matches = [&](CrossMomentRecord const& r) {
        if (options.pair)
            return r.i == options.pair->first && r.j == options.pair->second;
        return r.bound_total.has_value();
    };
    auto const it = std::find_if(first.begin(), first.end(), matches);
    if (it == first.end())
        throw std::invalid_argument("no cross_moment pair with a bound matches");
    if (!it->bound_total)
        throw std::invalid_argument("cross_moment pair has no structural bound");
    std::size_t const p = static_cast<std::size_t>(it - first.begin());

    std::string out = "log_epsilon,log_abs_estimate,log_bound_total\n";
    for (auto const& r : report.per_epsilon)
    {
        auto const& rec = r.cross_moments.at(p);
        double const level
            = std::max(std::fabs(rec.estimate.value), rec.estimate.std_error);
        out += g17(std::log(r.epsilon)) + "," + g17(std::log(level)) + ","
               + g17(std::log(*rec.bound_total)) + "\n";
    }
    return out;
}

std::string cov_heatmap(RunReport const& report, PlotOptions const& options)
{
    auto const& r = report.per_epsilon.at(pick_epsilon(report, options));
    if (!r.covariance)
        throw std::invalid_argument("report has no covariance check");
    std::string out = "i,j,value,std_error\n";
    std::size_t const d = r.covariance->dimension();
    for (std::size_t i = 0; i < d; ++i)
    {
        for (std::size_t j = 0; j < d; ++j)
        {
            auto const& e = r.covariance->at(i, j);
            out += std::to_string(i + 1) + "," + std::to_string(j + 1) + ","
                   + g17(e.value) + "," + g17(e.std_error) + "\n";
        }
    }
    return out;
}

std::string marginal_hist(RunReport const& report, PlotOptions const& options)
{
    auto const& r = report.per_epsilon.at(pick_epsilon(report, options));
    auto const it = std::find_if(
        r.marginals.begin(), r.marginals.end(), [&](HistogramRecord const& h) {
            return h.component == options.component;
        });
    if (it == r.marginals.end())
    {
        throw std::invalid_argument("report has no normality histogram for "
                                    "component "
                                    + std::to_string(options.component + 1));
    }
    std::string out = "bin_lo,bin_hi,count\n";
    double const width
        = (it->hi - it->lo) / static_cast<double>(it->counts.size());
    for (std::size_t b = 0; b < it->counts.size(); ++b)
    {
        double const lo = it->lo + width * static_cast<double>(b);
        double const hi
            = b + 1 == it->counts.size() ? it->hi : lo + width;
        out += g17(lo) + "," + g17(hi) + "," + std::to_string(it->counts[b])
               + "\n";
    }
    return out;
}

}  // namespace

char const* to_string(PlotKind kind)
{
    switch (kind)
    {
        case PlotKind::kRateLogLog:
            return "rate_loglog";
        case PlotKind::kCovHeatmap:
            return "cov_heatmap";
        case PlotKind::kMarginalHist:
            return "marginal_hist";
    }
    return "unknown";
}

PlotKind parse_plot_kind(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](char c) {
        return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    });
    for (PlotKind k :
         {PlotKind::kRateLogLog, PlotKind::kCovHeatmap, PlotKind::kMarginalHist})
    {
        if (lower == to_string(k))
            return k;
    }
    throw std::invalid_argument("unknown plot kind '" + std::string(name)
                                + "'");
}

std::string emit_plot_data(RunReport const& report,
                           PlotKind kind,
                           PlotOptions const& options)
{
    switch (kind)
    {
        case PlotKind::kRateLogLog:
            return rate_loglog(report, options);
        case PlotKind::kCovHeatmap:
            return cov_heatmap(report, options);
        case PlotKind::kMarginalHist:
            return marginal_hist(report, options);
    }
    throw std::invalid_argument("unknown plot kind");
}

}  // namespace poissonbm
