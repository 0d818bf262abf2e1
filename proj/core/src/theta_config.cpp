#include "poissonbm/theta_config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace poissonbm {
namespace {

bool in_open_range(Angle const& a)
{
    if (a.fraction())
    {
        auto const& f = *a.fraction();
        // 0 < num/den < 2, den > 0
        return f.num > 0 && f.num < 2 * f.den;
    }
    return a.value() > kAngleTolerance
           && a.value() < static_cast<double>(kTwoPiL) - kAngleTolerance;
}

bool sums_to_two_pi(Angle const& a, Angle const& b)
{
    Angle const sum = a + b;
    if (sum.fraction())
        return *sum.fraction() == PiFraction{2, 1};
    return std::fabs(sum.value() - static_cast<double>(kTwoPiL))
           <= kAngleTolerance;
}

}  // namespace

Angle const& ThetaConfig::angle(std::size_t component) const
{
    if (component < cos_block.size())
        return cos_block[component];
    component -= cos_block.size();
    if (component < sin_block.size())
        return sin_block[component];
    throw std::out_of_range("component index out of range");
}

TrigKind ThetaConfig::kind(std::size_t component) const
{
    if (component >= dimension())
        throw std::out_of_range("component index out of range");
    return component < cos_block.size() ? TrigKind::kCos : TrigKind::kSin;
}

bool ThetaConfig::is_pi_rescaled(std::size_t component) const
{
    return allow_pi_in_cos && component < cos_block.size()
           && cos_block[component].is_pi();
}

std::string ThetaConfig::label(std::size_t component) const
{
    return std::string(kind(component) == TrigKind::kCos ? "cos(" : "sin(")
           + angle(component).to_string() + ")";
}

char const* to_string(HypothesisRule rule)
{
    switch (rule)
    {
        case HypothesisRule::kRange:
            return "RANGE";
        case HypothesisRule::kSum2Pi:
            return "SUM_2PI";
        case HypothesisRule::kSameBlockEqual:
            return "SAME_BLOCK_EQUAL";
    }
    return "UNKNOWN";
}

std::string HypothesisReport::describe() const
{
    std::ostringstream os;
    os << (valid ? "valid" : "invalid");
    for (auto const& v : violations)
    {
        char buf[160];
        std::snprintf(buf,
                      sizeof buf,
                      "\n  %s on pair (%zu,%zu): %.17g, %.17g",
                      to_string(v.rule),
                      v.first,
                      v.second,
                      v.first_value,
                      v.second_value);
        os << buf;
    }
    if (!pi_rescaled_indices.empty())
    {
        os << "\n  pi-rescaled cosine entries:";
        for (auto i : pi_rescaled_indices)
            os << ' ' << i;
    }
    return os.str();
}

HypothesisReport validate_hypothesis_h(ThetaConfig const& config)
{
    std::size_t const n = config.cos_block.size();
    std::size_t const d = config.dimension();
    if (d == 0)
        throw std::invalid_argument("no process components requested");

    HypothesisReport report;
    auto pi_exempt = [&](std::size_t c) {
        return config.allow_pi_in_cos && c < n && config.angle(c).is_pi();
    };

    for (std::size_t i = 0; i < d; ++i)
    {
        Angle const& a = config.angle(i);
        if (pi_exempt(i))
        {
            report.pi_rescaled_indices.push_back(i + 1);
            continue;
        }
        if (!in_open_range(a) || a.is_pi())
        {
            report.violations.push_back(
                {HypothesisRule::kRange, i + 1, i + 1, a.value(), a.value()});
        }
    }

    for (std::size_t i = 0; i < d; ++i)
    {
        for (std::size_t j = i; j < d; ++j)
        {
            Angle const& a = config.angle(i);
            Angle const& b = config.angle(j);
            bool const exempt_diagonal = (i == j) && pi_exempt(i);
            if (!exempt_diagonal && sums_to_two_pi(a, b))
            {
                report.violations.push_back({HypothesisRule::kSum2Pi,
                                             i + 1,
                                             j + 1,
                                             a.value(),
                                             b.value()});
            }
            bool const same_block = (i < n) == (j < n);
            if (i != j && same_block && a.same_as(b))
            {
                report.violations.push_back({HypothesisRule::kSameBlockEqual,
                                             i + 1,
                                             j + 1,
                                             a.value(),
                                             b.value()});
            }
        }
    }
    report.valid = report.violations.empty();
    return report;
}

}  // namespace poissonbm
