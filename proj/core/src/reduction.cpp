#include "poissonbm/reduction.hpp"

#include <cmath>

namespace poissonbm {

void CompensatedSum::add(double x) noexcept
{
    double const t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
        compensation_ += (sum_ - t) + x;
    else
        compensation_ += (x - t) + sum_;
    sum_ = t;
}

namespace {

double sequential(std::span<double const> values)
{
    CompensatedSum acc;
    for (double v : values)
        acc.add(v);
    return acc.result();
}

double tree(std::span<double const> values)
{
    if (values.size() <= kReductionLeafSize)
        return sequential(values);
    std::size_t const half = values.size() / 2;
    return tree(values.first(half)) + tree(values.subspan(half));
}

}  // namespace

double reduce_sum(std::span<double const> values, ReductionMode mode)
{
    return mode == ReductionMode::kFixedTree ? tree(values)
                                             : sequential(values);
}

}  // namespace poissonbm
