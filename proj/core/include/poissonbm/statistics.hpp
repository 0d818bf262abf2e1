#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "poissonbm/angle.hpp"
#include "poissonbm/process.hpp"
#include "poissonbm/reduction.hpp"

namespace poissonbm {

/// Monte Carlo point estimate; std_error = sample sd / √replications.
struct Estimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::size_t replications = 0;
};

/// Mean and standard error of per-replication values (at least 2).
Estimate mean_estimate(std::span<double const> values,
                       ReductionMode mode = ReductionMode::kFixedTree);

/// Square matrix of estimates, row-major.
class EstimateMatrix
{
  public:
    explicit EstimateMatrix(std::size_t dimension = 0)
        : dimension_(dimension), entries_(dimension * dimension)
    {
    }

    std::size_t dimension() const noexcept { return dimension_; }
    Estimate& at(std::size_t i, std::size_t j)
    {
        return entries_[i * dimension_ + j];
    }
    Estimate const& at(std::size_t i, std::size_t j) const
    {
        return entries_[i * dimension_ + j];
    }

  private:
    std::size_t dimension_;
    std::vector<Estimate> entries_;
};

enum class TestFunctionKind
{
    kConstantOne,
    // φ = Π_r tanh(Σ_c x_c(s_r))
    kBoundedProduct,
};

/// Bounded continuous functional φ(x(s_1), …, x(s_k)) of the past.
struct TestFunctionSpec
{
    TestFunctionKind kind = TestFunctionKind::kConstantOne;
    std::vector<double> conditioning_times;

    static TestFunctionSpec constant_one() { return {}; }
    static TestFunctionSpec bounded_product(std::vector<double> times)
    {
        return {TestFunctionKind::kBoundedProduct, std::move(times)};
    }

    double evaluate(ProcessSample const& sample) const;
    std::string describe() const;
};

enum class PairKind
{
    kCosCos,
    kSinSin,
    kCosSin,
};

char const* to_string(PairKind kind);
PairKind pair_kind(TrigKind a, TrigKind b);

enum class BoundLabel
{
    kDiff,
    kSum,
};

struct BoundTerm
{
    BoundLabel label;
    double factor;
};

/*!
 * ε²-envelope of a cross moment without the unknown constant.
 *
 * total = ε² Σ terms, where with d(α) = 1 - cos α the four terms are
 * 1/(d(θ_j) d(θ_i-θ_j)), 1/(d(θ_j) d(θ_i+θ_j)), 1/(d(θ_i) d(θ_j-θ_i)) and
 * 1/(d(θ_i) d(θ_i+θ_j)). Sine and mixed pairs share the cosine moduli.
 */
struct StructuralBound
{
    double theta_i = 0.0;
    double theta_j = 0.0;
    PairKind kind = PairKind::kCosCos;
    double epsilon = 0.0;
    std::vector<BoundTerm> terms;
    double total = 0.0;
};

// Throws std::domain_error naming the vanishing factor for a degenerate pair
StructuralBound structural_bound_eval(Angle const& theta_i,
                                      Angle const& theta_j,
                                      double epsilon,
                                      PairKind kind);

/// x_c(t) - x_c(s) for every sample.
std::vector<double> component_increments(std::span<ProcessSample const> samples,
                                         std::size_t component,
                                         double s,
                                         double t);

/// Covariance of increments over (s, t); target δ_ij (t - s).
EstimateMatrix
empirical_increment_covariance(std::span<ProcessSample const> samples,
                               double s,
                               double t,
                               ReductionMode mode = ReductionMode::kFixedTree);

/// Pearson correlation of increments of two components over (s, t).
double increment_correlation(std::span<ProcessSample const> samples,
                             std::size_t i,
                             std::size_t j,
                             double s,
                             double t);

/// E[φ · Δ_i · Δ_j] over (s, t). i == j with constant φ is rejected.
Estimate cross_moment(std::span<ProcessSample const> samples,
                      std::size_t i,
                      std::size_t j,
                      double s,
                      double t,
                      TestFunctionSpec const& phi,
                      ReductionMode mode = ReductionMode::kFixedTree);

/*!
 * Least-squares slope of log max(|value|, std_error) against log ε.
 *
 * Needs at least three strictly decreasing positive ε values.
 */
double rate_fit(std::span<double const> epsilons,
                std::span<Estimate const> estimates);

/// Σ (x(t_{k+1}) - x(t_k))² over a partition of grid times starting at 0.
double quadratic_variation(ProcessSample const& sample,
                           std::size_t component,
                           std::span<double const> partition);

Estimate mean_quadratic_variation(std::span<ProcessSample const> samples,
                                  std::size_t component,
                                  std::span<double const> partition,
                                  ReductionMode mode = ReductionMode::kFixedTree);

/// E[Δ⁴] / (t - s)² for one component's increment over (s, t).
Estimate fourth_moment_ratio(std::span<ProcessSample const> samples,
                             std::size_t component,
                             double s,
                             double t,
                             ReductionMode mode = ReductionMode::kFixedTree);

struct NormalityResult
{
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    // Kolmogorov–Smirnov distance to N(0,1) after standardizing by the
    // sample mean and standard deviation
    double ks_statistic = 0.0;
    std::size_t count = 0;
};

NormalityResult normality_check(std::span<double const> values);

/// 1% two-sided Kolmogorov–Smirnov critical value, 1.63/√n.
double ks_critical_value_1pct(std::size_t n);

double standard_normal_cdf(double x);

/// E[φ · (x_c(t) - x_c(s))], which vanishes for a martingale limit.
Estimate martingale_residual(std::span<ProcessSample const> samples,
                             std::size_t component,
                             TestFunctionSpec const& phi,
                             double s,
                             double t,
                             ReductionMode mode = ReductionMode::kFixedTree);

struct StroockResult
{
    Estimate variance;
    // 2t unscaled, t with the 1/√2 rescaling
    double target = 0.0;
    bool rescaled = false;
};

/// Var[x_c(t)] for a θ = π cosine component.
StroockResult stroock_variance_check(std::span<ProcessSample const> samples,
                                     std::size_t component,
                                     double t,
                                     ReductionMode mode
                                     = ReductionMode::kFixedTree);

}  // namespace poissonbm
