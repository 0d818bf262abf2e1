#include "poissonbm/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "poissonbm/reduction.hpp"

namespace poissonbm {

std::size_t PoissonPath::count_at(double x) const
{
    return static_cast<std::size_t>(
        std::upper_bound(jump_times.begin(), jump_times.end(), x)
        - jump_times.begin());
}

PoissonPath sample_poisson_path(double horizon, RandomStream& stream)
{
    if (!(horizon >= 0.0) || !std::isfinite(horizon))
    {
        throw std::invalid_argument("Poisson path horizon must be finite and "
                                    "nonnegative, got "
                                    + std::to_string(horizon));
    }
    PoissonPath path;
    path.horizon = horizon;
    if (horizon > 0.0)
    {
        path.jump_times.reserve(
            static_cast<std::size_t>(horizon + 6.0 * std::sqrt(horizon) + 8.0));
    }
    double t = 0.0;
    for (;;)
    {
        double next = t + stream.exponential();
        if (next <= t)
        {
            // interarrival below one ulp of t
            next = std::nextafter(t, std::numeric_limits<double>::infinity());
        }
        if (next > horizon)
            break;
        path.jump_times.push_back(next);
        t = next;
    }
    return path;
}

double trig_integral(PoissonPath const& path,
                     Angle const& theta,
                     double a,
                     double b,
                     TrigKind kind)
{
    if (!(a >= 0.0) || !(a <= b) || !(b <= path.horizon))
    {
        throw std::invalid_argument(
            "trig_integral requires 0 <= a <= b <= horizon (a="
            + std::to_string(a) + ", b=" + std::to_string(b)
            + ", horizon=" + std::to_string(path.horizon) + ")");
    }
    auto const& jumps = path.jump_times;
    auto it = std::upper_bound(jumps.begin(), jumps.end(), a);
    auto k = static_cast<std::uint64_t>(it - jumps.begin());

    CompensatedSum acc;
    double pos = a;
    for (; it != jumps.end() && *it < b; ++it, ++k)
    {
        acc.add(trig_value(theta, k, kind) * (*it - pos));
        pos = *it;
    }
    acc.add(trig_value(theta, k, kind) * (b - pos));
    return acc.result();
}

std::complex<double> char_fn(Angle const& theta, double s)
{
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("char_fn requires finite s >= 0");
    double const c = trig_value(theta, 1, TrigKind::kCos);
    double const sn = trig_value(theta, 1, TrigKind::kSin);
    double const modulus = std::exp(-s * (1.0 - c));
    double const phase = s * sn;
    return {modulus * std::cos(phase), modulus * std::sin(phase)};
}

double decay_factor(double theta)
{
    return 1.0 - std::cos(theta);
}

}  // namespace poissonbm
