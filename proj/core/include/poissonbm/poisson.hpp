#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "poissonbm/angle.hpp"
#include "poissonbm/random.hpp"

namespace poissonbm {

//---------------------------------------------------------------------------//
/*!
 * One realization of a unit-rate Poisson process on [0, horizon].
 *
 * jump_times is strictly increasing and contained in (0, horizon]; N_x is the
 * number of jump times ≤ x.
 */
struct PoissonPath
{
    double horizon = 0.0;
    std::vector<double> jump_times;

    std::size_t count_at(double x) const;
};

/// Sample jump times as cumulative unit-mean exponential interarrivals.
PoissonPath sample_poisson_path(double horizon, RandomStream& stream);

/*!
 * Exact ∫_a^b trig(θ·N_x) dx for a piecewise-constant N.
 *
 * Sums trig(θ·k)·|[a,b] ∩ {N = k}| over the jumps inside [a, b] with
 * compensated summation; no quadrature error.
 */
double trig_integral(PoissonPath const& path,
                     Angle const& theta,
                     double a,
                     double b,
                     TrigKind kind);

/// E[e^{iθ N_s}] = exp(-s (1 - e^{iθ})).
std::complex<double> char_fn(Angle const& theta, double s);

/// 1 - cos θ: the decay rate |E e^{iθ N_s}| = e^{-s (1 - cos θ)}.
double decay_factor(double theta);

}  // namespace poissonbm
