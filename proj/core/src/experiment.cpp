#include "poissonbm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "poissonbm/poisson.hpp"
#include "poissonbm/process.hpp"

#ifndef POISSONBM_VERSION
#    define POISSONBM_VERSION "0.0.0"
#endif

namespace poissonbm {

char const* tool_version()
{
    return POISSONBM_VERSION;
}

HypothesisError::HypothesisError(HypothesisReport report)
    : std::runtime_error("theta violates hypothesis (H): " + report.describe())
    , report_(std::move(report))
{
}

char const* to_string(Relation relation)
{
    switch (relation)
    {
        case Relation::kWithinBand:
            return "within_band";
        case Relation::kAtLeast:
            return "at_least";
        case Relation::kAtMost:
            return "at_most";
        case Relation::kBelow:
            return "below";
    }
    return "unknown";
}

CheckResult make_check(std::string name,
                       double value,
                       double std_error,
                       double target,
                       double band,
                       Relation relation)
{
    CheckResult c{std::move(name), value, std_error, target, band, relation};
    switch (relation)
    {
        case Relation::kWithinBand:
            c.pass = std::fabs(value - target) <= band;
            break;
        case Relation::kAtLeast:
            c.pass = value >= target;
            break;
        case Relation::kAtMost:
            c.pass = value <= target;
            break;
        case Relation::kBelow:
            c.pass = value < target;
            break;
    }
    return c;
}

HistogramRecord make_histogram(std::size_t component,
                               std::span<double const> values)
{
    Estimate const e = mean_estimate(values);
    double const sd = e.std_error * std::sqrt(static_cast<double>(values.size()));
    HistogramRecord h;
    h.component = component;
    h.lo = e.value - kHistogramHalfWidthSd * sd;
    h.hi = e.value + kHistogramHalfWidthSd * sd;
    h.counts.assign(kHistogramBins, 0);
    double const width = (h.hi - h.lo) / static_cast<double>(kHistogramBins);
    for (double v : values)
    {
        std::size_t bin = 0;
        if (width > 0.0)
        {
            double const pos = std::floor((v - h.lo) / width);
            if (pos >= static_cast<double>(kHistogramBins))
                bin = kHistogramBins - 1;
            else if (pos > 0.0)
                bin = static_cast<std::size_t>(pos);
        }
        ++h.counts[bin];
    }
    return h;
}

std::vector<std::pair<double, double>> dyadic_pairs(double horizon,
                                                    std::size_t steps,
                                                    unsigned max_level)
{
    auto const grid = EvaluationGrid::uniform(horizon, steps);
    std::vector<std::pair<double, double>> out;
    for (unsigned level = 0; level <= max_level; ++level)
    {
        std::size_t const parts = std::size_t{1} << level;
        if (steps % parts != 0)
            break;
        std::size_t const stride = steps / parts;
        for (std::size_t p = 0; p < parts; ++p)
            out.emplace_back(grid[p * stride], grid[(p + 1) * stride]);
    }
    return out;
}

namespace {

template<class F>
void parallel_for(std::size_t count, std::size_t workers, F&& body)
{
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::string component_name(std::size_t c)
{
    return std::to_string(c + 1);
}

std::string pair_name(std::size_t i, std::size_t j)
{
    return "[" + component_name(i) + "," + component_name(j) + "]";
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct EpsilonContext
{
    RunConfig const& config;
    HypothesisReport const& hypothesis;
    std::vector<Check> const& checks;
    std::vector<ProcessSample> const& samples;
    double epsilon;
};

bool wants(std::vector<Check> const& checks, Check c)
{
    return std::find(checks.begin(), checks.end(), c) != checks.end();
}

EpsilonResult evaluate_epsilon(EpsilonContext const& ctx)
{
    auto const& config = ctx.config;
    auto const& theta = config.theta;
    auto const mode = config.reduction;
    std::span<ProcessSample const> samples(ctx.samples);
    double const T = config.horizon_T;
    std::size_t const d = theta.dimension();
    auto const& grid = samples.front().grid();
    auto const band = [](Estimate const& e) {
        return kStandardErrorBand * e.std_error;
    };

    EpsilonResult out;
    out.epsilon = ctx.epsilon;

    for (Check check : ctx.checks)
    {
        switch (check)
        {
            case Check::kCovariance: {
                auto cov = empirical_increment_covariance(samples, 0.0, T, mode);
                for (std::size_t i = 0; i < d; ++i)
                {
                    for (std::size_t j = i; j < d; ++j)
                    {
                        auto const& e = cov.at(i, j);
                        out.checks.push_back(make_check("covariance"
                                                            + pair_name(i, j),
                                                        e.value,
                                                        e.std_error,
                                                        i == j ? T : 0.0,
                                                        band(e)));
                    }
                }
                out.covariance = std::move(cov);
                break;
            }
            case Check::kQuadraticVariation: {
                auto const partition = grid.times();
                for (std::size_t c = 0; c < d; ++c)
                {
                    auto e = mean_quadratic_variation(samples, c, partition, mode);
                    out.checks.push_back(make_check("qv[" + component_name(c)
                                                        + "]",
                                                    e.value,
                                                    e.std_error,
                                                    T,
                                                    band(e)));
                }
                break;
            }
            case Check::kCrossMoment: {
                auto const one = TestFunctionSpec::constant_one();
                for (std::size_t i = 0; i < d; ++i)
                {
                    for (std::size_t j = i + 1; j < d; ++j)
                    {
                        CrossMomentRecord rec;
                        rec.i = i;
                        rec.j = j;
                        rec.kind = pair_kind(theta.kind(i), theta.kind(j));
                        rec.estimate
                            = cross_moment(samples, i, j, 0.0, T, one, mode);
                        try
                        {
                            rec.bound_total
                                = structural_bound_eval(theta.angle(i),
                                                        theta.angle(j),
                                                        ctx.epsilon,
                                                        rec.kind)
                                      .total;
                        }
                        catch (std::domain_error const&)
                        {
                        }
                        out.checks.push_back(
                            make_check("cross_moment" + pair_name(i, j),
                                       rec.estimate.value,
                                       rec.estimate.std_error,
                                       0.0,
                                       band(rec.estimate)));
                        out.cross_moments.push_back(rec);
                    }
                }
                break;
            }
            case Check::kFourthMoment: {
                auto const pairs = dyadic_pairs(T, config.grid_points);
                for (std::size_t c = 0; c < d; ++c)
                {
                    for (auto const& [s, t] : pairs)
                    {
                        out.fourth_moments.push_back(
                            {c, s, t, fourth_moment_ratio(samples, c, s, t, mode)});
                    }
                    auto const& anchor = out.fourth_moments[c * pairs.size()];
                    out.checks.push_back(make_check("fourth_moment_anchor["
                                                        + component_name(c) + "]",
                                                    anchor.ratio.value,
                                                    anchor.ratio.std_error,
                                                    3.0,
                                                    0.5));
                }
                break;
            }
            case Check::kNormality: {
                for (std::size_t c = 0; c < d; ++c)
                {
                    auto const deltas = component_increments(samples, c, 0.0, T);
                    std::string const tag = "[" + component_name(c) + "]";
                    auto const n = static_cast<double>(deltas.size());
                    NormalityResult nr{kNaN, kNaN, kNaN, deltas.size()};
                    try
                    {
                        nr = normality_check(deltas);
                        out.marginals.push_back(make_histogram(c, deltas));
                    }
                    catch (std::exception const&)
                    {
                    }
                    out.checks.push_back(make_check("skewness" + tag,
                                                    nr.skewness,
                                                    std::sqrt(6.0 / n),
                                                    0.0,
                                                    0.1));
                    out.checks.push_back(make_check("excess_kurtosis" + tag,
                                                    nr.excess_kurtosis,
                                                    std::sqrt(24.0 / n),
                                                    0.0,
                                                    0.15));
                    out.checks.push_back(
                        make_check("ks" + tag,
                                   nr.ks_statistic,
                                   0.0,
                                   0.0,
                                   ks_critical_value_1pct(deltas.size())));
                }
                break;
            }
            case Check::kMartingale: {
                std::size_t const steps = config.grid_points;
                double const s = grid[steps / 2];
                TestFunctionSpec const phis[] = {
                    TestFunctionSpec::constant_one(),
                    TestFunctionSpec::bounded_product({grid[steps / 4], s}),
                };
                for (std::size_t c = 0; c < d; ++c)
                {
                    for (auto const& phi : phis)
                    {
                        auto e = martingale_residual(samples, c, phi, s, T, mode);
                        out.checks.push_back(make_check(
                            "martingale[" + component_name(c) + "]("
                                + phi.describe() + ")",
                            e.value,
                            e.std_error,
                            0.0,
                            band(e)));
                    }
                }
                break;
            }
            case Check::kStroock: {
                for (std::size_t c = 0; c < theta.cos_block.size(); ++c)
                {
                    if (!theta.cos_block[c].is_pi())
                        continue;
                    auto r = stroock_variance_check(samples, c, T, mode);
                    out.checks.push_back(make_check("stroock_variance["
                                                        + component_name(c) + "]",
                                                    r.variance.value,
                                                    r.variance.std_error,
                                                    r.target,
                                                    band(r.variance)));
                }
                break;
            }
            case Check::kDegeneracy: {
                std::size_t const n = theta.cos_block.size();
                std::set<std::pair<std::size_t, std::size_t>> done;
                for (auto const& v : ctx.hypothesis.violations)
                {
                    if (v.rule == HypothesisRule::kRange || v.first == v.second)
                        continue;
                    std::size_t const i = v.first - 1;
                    std::size_t const j = v.second - 1;
                    if ((i < n) != (j < n) || !done.emplace(i, j).second)
                        continue;
                    double const target
                        = (v.rule == HypothesisRule::kSum2Pi && i >= n) ? -1.0
                                                                        : 1.0;
                    double corr = kNaN;
                    try
                    {
                        corr = increment_correlation(samples, i, j, 0.0, T);
                    }
                    catch (std::domain_error const&)
                    {
                    }
                    out.checks.push_back(make_check("degeneracy_correlation"
                                                        + pair_name(i, j),
                                                    corr,
                                                    0.0,
                                                    target,
                                                    1e-12));
                }
                break;
            }
        }
    }
    return out;
}

void sweep_checks(RunReport& report, std::vector<Check> const& checks)
{
    auto const& eps = report.config.epsilons;
    if (wants(checks, Check::kCrossMoment) && eps.size() >= 3)
    {
        auto const& first = report.per_epsilon.front().cross_moments;
        for (std::size_t p = 0; p < first.size(); ++p)
        {
            std::vector<Estimate> series;
            for (auto const& r : report.per_epsilon)
                series.push_back(r.cross_moments[p].estimate);
            std::string const tag = pair_name(first[p].i, first[p].j);
            double slope = kNaN;
            try
            {
                slope = rate_fit(eps, series);
            }
            catch (std::invalid_argument const&)
            {
            }
            report.sweep_checks.push_back(make_check(
                "cross_moment_rate" + tag, slope, 0.0, 1.0, 0.0, Relation::kAtLeast));

            if (!first[p].bound_total)
                continue;
            auto level = [](Estimate const& e) {
                return std::max(std::fabs(e.value), e.std_error);
            };
            double const base_est = level(series.front());
            double const base_bound = *first[p].bound_total;
            double worst = 0.0;
            for (std::size_t k = 1; k < series.size(); ++k)
            {
                double const est_norm = level(series[k]) / base_est;
                double const bound_norm
                    = *report.per_epsilon[k].cross_moments[p].bound_total
                      / base_bound;
                worst = std::max(worst, est_norm / bound_norm);
            }
            report.sweep_checks.push_back(make_check("cross_moment_envelope"
                                                         + tag,
                                                     worst,
                                                     0.0,
                                                     1.0,
                                                     0.0,
                                                     Relation::kBelow));
        }
    }
    if (wants(checks, Check::kFourthMoment))
    {
        std::size_t const d = report.config.theta.dimension();
        for (std::size_t c = 0; c < d; ++c)
        {
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            for (auto const& r : report.per_epsilon)
            {
                for (auto const& f : r.fourth_moments)
                {
                    if (f.component != c)
                        continue;
                    lo = std::min(lo, f.ratio.value);
                    hi = std::max(hi, f.ratio.value);
                }
            }
            report.sweep_checks.push_back(make_check("fourth_moment_max_min["
                                                         + component_name(c) + "]",
                                                     hi / lo,
                                                     0.0,
                                                     10.0,
                                                     0.0,
                                                     Relation::kAtMost));
        }
    }
}

}  // namespace

std::vector<ProcessSample> simulate_samples(ThetaConfig const& theta,
                                            double horizon_T,
                                            std::size_t grid_steps,
                                            double epsilon,
                                            std::size_t replications,
                                            std::uint64_t master_seed,
                                            std::uint32_t epsilon_index,
                                            std::size_t workers)
{
    auto config = std::make_shared<ThetaConfig const>(theta);
    auto grid = std::make_shared<EvaluationGrid const>(
        EvaluationGrid::uniform(horizon_T, grid_steps));
    double const horizon = path_time(horizon_T, epsilon);
    SampleBuilder const builder(config, grid, epsilon, default_table_size(horizon));

    std::vector<std::optional<ProcessSample>> slots(replications);
    parallel_for(replications, workers, [&](std::size_t r) {
        auto stream = derive_stream(master_seed,
                                    epsilon_index,
                                    static_cast<std::uint32_t>(r));
        auto const path = sample_poisson_path(builder.required_horizon(), stream);
        slots[r].emplace(builder.build(path));
    });
    std::vector<ProcessSample> samples;
    samples.reserve(replications);
    for (auto& s : slots)
        samples.push_back(std::move(*s));
    return samples;
}

RunReport run_experiment(RunConfig const& config,
                         RunOptions const& options,
                         RunTimings* timings)
{
    using clock = std::chrono::steady_clock;
    auto const start = clock::now();

    config.validate();
    HypothesisReport hypothesis = validate_hypothesis_h(config.theta);
    if (!hypothesis.valid && !config.allow_invalid_theta)
        throw HypothesisError(hypothesis);

    RunReport report;
    report.tool_version = tool_version();
    report.config = config;
    report.config.checks = config.effective_checks();
    report.hypothesis = hypothesis;
    auto const& checks = report.config.checks;

    RunTimings local_timings;
    for (std::size_t e = 0; e < config.epsilons.size(); ++e)
    {
        auto const eps_start = clock::now();
        double const eps = config.epsilons[e];
        auto const samples = simulate_samples(config.theta,
                                              config.horizon_T,
                                              config.grid_points,
                                              eps,
                                              config.replications,
                                              config.master_seed,
                                              static_cast<std::uint32_t>(e),
                                              options.workers);
        report.per_epsilon.push_back(evaluate_epsilon(
            {config, hypothesis, checks, samples, eps}));
        local_timings.per_epsilon_seconds.push_back(
            std::chrono::duration<double>(clock::now() - eps_start).count());
    }
    sweep_checks(report, checks);

    auto tally = [&](std::vector<CheckResult> const& list) {
        for (auto const& c : list)
        {
            ++report.checks_total;
            if (!c.pass)
                ++report.checks_failed;
        }
    };
    for (auto const& r : report.per_epsilon)
        tally(r.checks);
    tally(report.sweep_checks);
    report.all_pass = report.checks_failed == 0;

    local_timings.total_seconds
        = std::chrono::duration<double>(clock::now() - start).count();
    if (timings)
        *timings = std::move(local_timings);
    return report;
}

}  // namespace poissonbm
