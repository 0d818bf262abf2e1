#include "poissonbm/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace poissonbm {
namespace {

void require_samples(std::span<ProcessSample const> samples, char const* op)
{
    if (samples.size() < 2)
    {
        throw std::invalid_argument(std::string(op)
                                    + " needs at least 2 samples");
    }
}

void require_component(std::span<ProcessSample const> samples, std::size_t c)
{
    if (c >= samples.front().dimension())
        throw std::out_of_range("component index out of range");
}

// Per-replication φ values; conditioning times must not exceed s
std::vector<double> phi_values(std::span<ProcessSample const> samples,
                               TestFunctionSpec const& phi,
                               double s)
{
    for (double r : phi.conditioning_times)
    {
        if (r > s)
        {
            throw std::invalid_argument(
                "conditioning times must precede the increment interval");
        }
    }
    std::vector<double> out;
    out.reserve(samples.size());
    for (auto const& sample : samples)
        out.push_back(phi.evaluate(sample));
    return out;
}

Estimate centered_product(std::span<double const> a,
                          std::span<double const> b,
                          ReductionMode mode)
{
    auto const n = static_cast<double>(a.size());
    double const mean_a = reduce_sum(a, mode) / n;
    double const mean_b = reduce_sum(b, mode) / n;
    std::vector<double> products(a.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        products[r] = (a[r] - mean_a) * (b[r] - mean_b);
    Estimate e = mean_estimate(products, mode);
    // unbiased covariance
    e.value *= n / (n - 1.0);
    return e;
}

double decay_of(Angle const& a)
{
    return 1.0 - trig_value(a, 1, TrigKind::kCos);
}

}  // namespace

Estimate mean_estimate(std::span<double const> values, ReductionMode mode)
{
    if (values.size() < 2)
        throw std::invalid_argument("an estimate needs at least 2 values");
    auto const n = static_cast<double>(values.size());
    double const mean = reduce_sum(values, mode) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        double const d = values[i] - mean;
        sq[i] = d * d;
    }
    double const var = reduce_sum(sq, mode) / (n - 1.0);
    return {mean, std::sqrt(var / n), values.size()};
}

//---------------------------------------------------------------------------//
double TestFunctionSpec::evaluate(ProcessSample const& sample) const
{
    if (kind == TestFunctionKind::kConstantOne)
        return 1.0;
    double phi = 1.0;
    for (double r : conditioning_times)
    {
        std::size_t const g = sample.grid().index_of(r);
        double coord_sum = 0.0;
        for (std::size_t c = 0; c < sample.dimension(); ++c)
            coord_sum += sample.value(c, g);
        phi *= std::tanh(coord_sum);
    }
    return phi;
}

std::string TestFunctionSpec::describe() const
{
    if (kind == TestFunctionKind::kConstantOne)
        return "one";
    std::ostringstream os;
    os << "tanh_product(";
    for (std::size_t i = 0; i < conditioning_times.size(); ++i)
        os << (i ? "," : "") << conditioning_times[i];
    os << ')';
    return os.str();
}

char const* to_string(PairKind kind)
{
    switch (kind)
    {
        case PairKind::kCosCos:
            return "cos/cos";
        case PairKind::kSinSin:
            return "sin/sin";
        case PairKind::kCosSin:
            return "cos/sin";
    }
    return "unknown";
}

PairKind pair_kind(TrigKind a, TrigKind b)
{
    if (a != b)
        return PairKind::kCosSin;
    return a == TrigKind::kCos ? PairKind::kCosCos : PairKind::kSinSin;
}

//---------------------------------------------------------------------------//
StructuralBound structural_bound_eval(Angle const& theta_i,
                                      Angle const& theta_j,
                                      double epsilon,
                                      PairKind kind)
{
    struct Factor
    {
        char const* name;
        Angle angle;
    };
    Factor const factors[] = {
        {"d(theta_i)", theta_i},
        {"d(theta_j)", theta_j},
        {"d(theta_i - theta_j)", theta_i - theta_j},
        {"d(theta_i + theta_j)", theta_i + theta_j},
    };
    for (auto const& f : factors)
    {
        if (f.angle.is_zero_mod_two_pi())
        {
            throw std::domain_error(std::string("degenerate pair: ") + f.name
                                    + " = 1 - cos(" + f.angle.to_string()
                                    + ") vanishes");
        }
    }
    double const di = decay_of(theta_i);
    double const dj = decay_of(theta_j);
    double const d_diff = decay_of(theta_i - theta_j);
    double const d_rdiff = decay_of(theta_j - theta_i);
    double const d_sum = decay_of(theta_i + theta_j);

    StructuralBound bound;
    bound.theta_i = theta_i.value();
    bound.theta_j = theta_j.value();
    bound.kind = kind;
    bound.epsilon = epsilon;
    bound.terms = {
        {BoundLabel::kDiff, 1.0 / (dj * d_diff)},
        {BoundLabel::kSum, 1.0 / (dj * d_sum)},
        {BoundLabel::kDiff, 1.0 / (di * d_rdiff)},
        {BoundLabel::kSum, 1.0 / (di * d_sum)},
    };
    double const first = bound.terms[0].factor + bound.terms[1].factor;
    double const second = bound.terms[2].factor + bound.terms[3].factor;
    bound.total = epsilon * epsilon * (first + second);
    return bound;
}

//---------------------------------------------------------------------------//
std::vector<double> component_increments(std::span<ProcessSample const> samples,
                                         std::size_t component,
                                         double s,
                                         double t)
{
    if (samples.empty())
        return {};
    require_component(samples, component);
    if (!(s < t))
        throw std::invalid_argument("increment requires s < t");
    auto const& grid = samples.front().grid();
    std::size_t const gs = grid.index_of(s);
    std::size_t const gt = grid.index_of(t);
    std::vector<double> out;
    out.reserve(samples.size());
    for (auto const& sample : samples)
        out.push_back(sample.value(component, gt) - sample.value(component, gs));
    return out;
}

EstimateMatrix
empirical_increment_covariance(std::span<ProcessSample const> samples,
                               double s,
                               double t,
                               ReductionMode mode)
{
    require_samples(samples, "empirical_increment_covariance");
    std::size_t const d = samples.front().dimension();
    std::vector<std::vector<double>> deltas;
    deltas.reserve(d);
    for (std::size_t c = 0; c < d; ++c)
        deltas.push_back(component_increments(samples, c, s, t));

    EstimateMatrix cov(d);
    for (std::size_t i = 0; i < d; ++i)
    {
        for (std::size_t j = i; j < d; ++j)
        {
            cov.at(i, j) = centered_product(deltas[i], deltas[j], mode);
            cov.at(j, i) = cov.at(i, j);
        }
    }
    return cov;
}

double increment_correlation(std::span<ProcessSample const> samples,
                             std::size_t i,
                             std::size_t j,
                             double s,
                             double t)
{
    require_samples(samples, "increment_correlation");
    auto const a = component_increments(samples, i, s, t);
    auto const b = component_increments(samples, j, s, t);
    auto const mode = ReductionMode::kFixedTree;
    double const cab = centered_product(a, b, mode).value;
    double const caa = centered_product(a, a, mode).value;
    double const cbb = centered_product(b, b, mode).value;
    if (!(caa > 0.0) || !(cbb > 0.0))
        throw std::domain_error("correlation of a zero-variance increment");
    return cab / (std::sqrt(caa) * std::sqrt(cbb));
}

Estimate cross_moment(std::span<ProcessSample const> samples,
                      std::size_t i,
                      std::size_t j,
                      double s,
                      double t,
                      TestFunctionSpec const& phi,
                      ReductionMode mode)
{
    if (i == j && phi.kind == TestFunctionKind::kConstantOne)
    {
        throw std::invalid_argument(
            "cross_moment with i == j and constant phi is the quadratic "
            "variation; use quadratic_variation");
    }
    require_samples(samples, "cross_moment");
    auto const di = component_increments(samples, i, s, t);
    auto const dj = component_increments(samples, j, s, t);
    auto values = phi_values(samples, phi, s);
    for (std::size_t r = 0; r < values.size(); ++r)
        values[r] *= di[r] * dj[r];
    return mean_estimate(values, mode);
}

double rate_fit(std::span<double const> epsilons,
                std::span<Estimate const> estimates)
{
    if (epsilons.size() != estimates.size())
        throw std::invalid_argument("rate_fit: mismatched input lengths");
    if (epsilons.size() < 3)
        throw std::invalid_argument("rate_fit needs at least 3 epsilon values");
    std::vector<double> x, y;
    for (std::size_t k = 0; k < epsilons.size(); ++k)
    {
        if (!(epsilons[k] > 0.0))
            throw std::invalid_argument("rate_fit: epsilons must be positive");
        if (k > 0 && !(epsilons[k] < epsilons[k - 1]))
        {
            throw std::invalid_argument(
                "rate_fit: epsilons must be strictly decreasing");
        }
        double const level = std::max(std::fabs(estimates[k].value),
                                      estimates[k].std_error);
        if (!(level > 0.0) || !std::isfinite(level))
        {
            throw std::invalid_argument(
                "rate_fit: estimate and standard error both vanish");
        }
        x.push_back(std::log(epsilons[k]));
        y.push_back(std::log(level));
    }
    auto const n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
    {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
    {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    return sxy / sxx;
}

//---------------------------------------------------------------------------//
double quadratic_variation(ProcessSample const& sample,
                           std::size_t component,
                           std::span<double const> partition)
{
    if (partition.size() < 2)
        throw std::invalid_argument("partition needs at least 2 points");
    if (partition.front() != 0.0)
        throw std::invalid_argument("partition must start at 0");
    if (component >= sample.dimension())
        throw std::out_of_range("component index out of range");
    CompensatedSum acc;
    std::size_t prev = sample.grid().index_of(partition.front());
    for (std::size_t k = 1; k < partition.size(); ++k)
    {
        if (!(partition[k] > partition[k - 1]))
            throw std::invalid_argument("partition must be increasing");
        std::size_t const next = sample.grid().index_of(partition[k]);
        double const d = sample.value(component, next)
                         - sample.value(component, prev);
        acc.add(d * d);
        prev = next;
    }
    return acc.result();
}

Estimate mean_quadratic_variation(std::span<ProcessSample const> samples,
                                  std::size_t component,
                                  std::span<double const> partition,
                                  ReductionMode mode)
{
    require_samples(samples, "mean_quadratic_variation");
    std::vector<double> values;
    values.reserve(samples.size());
    for (auto const& sample : samples)
        values.push_back(quadratic_variation(sample, component, partition));
    return mean_estimate(values, mode);
}

Estimate fourth_moment_ratio(std::span<ProcessSample const> samples,
                             std::size_t component,
                             double s,
                             double t,
                             ReductionMode mode)
{
    require_samples(samples, "fourth_moment_ratio");
    double const scale = (t - s) * (t - s);
    auto values = component_increments(samples, component, s, t);
    for (double& v : values)
    {
        double const sq = v * v;
        v = sq * sq / scale;
    }
    return mean_estimate(values, mode);
}

//---------------------------------------------------------------------------//
double standard_normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_critical_value_1pct(std::size_t n)
{
    return 1.63 / std::sqrt(static_cast<double>(n));
}

NormalityResult normality_check(std::span<double const> values)
{
    if (values.size() < 100)
        throw std::invalid_argument("normality_check needs at least 100 values");
    auto const n = static_cast<double>(values.size());
    auto const mode = ReductionMode::kFixedTree;
    double const mean = reduce_sum(values, mode) / n;

    std::vector<double> p2(values.size()), p3(values.size()), p4(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        double const d = values[i] - mean;
        p2[i] = d * d;
        p3[i] = p2[i] * d;
        p4[i] = p2[i] * p2[i];
    }
    double const m2 = reduce_sum(p2, mode) / n;
    if (!(m2 > 0.0))
        throw std::domain_error("normality_check: input has zero variance");
    double const m3 = reduce_sum(p3, mode) / n;
    double const m4 = reduce_sum(p4, mode) / n;

    NormalityResult result;
    result.count = values.size();
    result.skewness = m3 / std::pow(m2, 1.5);
    result.excess_kurtosis = m4 / (m2 * m2) - 3.0;

    double const sd = std::sqrt(m2 * n / (n - 1.0));
    std::vector<double> z(values.begin(), values.end());
    for (double& v : z)
        v = (v - mean) / sd;
    std::sort(z.begin(), z.end());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
    {
        double const f = standard_normal_cdf(z[i]);
        double const lo = static_cast<double>(i) / n;
        double const hi = static_cast<double>(i + 1) / n;
        d = std::max({d, hi - f, f - lo});
    }
    result.ks_statistic = d;
    return result;
}

//---------------------------------------------------------------------------//
Estimate martingale_residual(std::span<ProcessSample const> samples,
                             std::size_t component,
                             TestFunctionSpec const& phi,
                             double s,
                             double t,
                             ReductionMode mode)
{
    require_samples(samples, "martingale_residual");
    auto const deltas = component_increments(samples, component, s, t);
    auto values = phi_values(samples, phi, s);
    for (std::size_t r = 0; r < values.size(); ++r)
        values[r] *= deltas[r];
    return mean_estimate(values, mode);
}

StroockResult stroock_variance_check(std::span<ProcessSample const> samples,
                                     std::size_t component,
                                     double t,
                                     ReductionMode mode)
{
    require_samples(samples, "stroock_variance_check");
    require_component(samples, component);
    auto const& config = samples.front().config();
    if (config.kind(component) != TrigKind::kCos
        || !config.angle(component).is_pi())
    {
        throw std::invalid_argument(
            "stroock_variance_check requires a cosine component with theta = "
            "pi");
    }
    StroockResult result;
    result.rescaled = config.is_pi_rescaled(component);
    result.target = result.rescaled ? t : 2.0 * t;

    std::size_t const g = samples.front().grid().index_of(t);
    std::vector<double> x;
    x.reserve(samples.size());
    for (auto const& sample : samples)
        x.push_back(sample.value(component, g));
    result.variance = centered_product(x, x, mode);
    return result;
}

}  // namespace poissonbm
