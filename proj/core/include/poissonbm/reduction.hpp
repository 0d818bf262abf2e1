#pragma once

#include <cstddef>
#include <span>

namespace poissonbm {

/// Neumaier-compensated running sum.
class CompensatedSum
{
  public:
    void add(double x) noexcept;
    double result() const noexcept { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

enum class ReductionMode
{
    // Pairwise tree whose shape depends only on the element count
    kFixedTree,
    // Single compensated pass in index order (reference)
    kSequential,
};

// Leaves of the fixed tree hold at most this many elements
inline constexpr std::size_t kReductionLeafSize = 64;

double reduce_sum(std::span<double const> values, ReductionMode mode);

}  // namespace poissonbm
