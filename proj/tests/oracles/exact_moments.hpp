#pragma once

// Exact first and second moments of ∫ f(N_u) du for a unit-rate Poisson
// process N, where f(n) is cos(θn) or sin(θn). Test-only; shares no code
// with the library.
//
// Writing f(n) = Σ_σ c_σ e^{iσθn} (σ = ±1), every moment reduces to
// E[e^{iαN_u}] = e^{-u w(α)} with w(α) = 1 - e^{iα}, plus independent
// increments for the two-time case. All integrals are then elementary.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>

namespace oracle {

using cplx = std::complex<double>;

struct Component
{
    double theta = 0.0;
    bool is_sin = false;
    // extra multiplier, e.g. 1/√2 for a rescaled θ = π component
    double scale = 1.0;
};

namespace detail {

inline cplx w_of(double alpha)
{
    return cplx(1.0 - std::cos(alpha), -std::sin(alpha));
}

// (e^{zL} - 1) / z, with a series near z = 0
inline cplx expm1_ratio(cplx z, double L)
{
    cplx const x = z * L;
    if (std::abs(x) < 1e-3)
        return L * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
    return (std::exp(x) - 1.0) / z;
}

// ∫_a^b e^{-w u} du
inline cplx I(cplx w, double a, double b)
{
    return std::exp(-w * a) * expm1_ratio(-w, b - a);
}

// ∫_a^b du ∫_u^b dv e^{-wA u} e^{-wB (v - u)}
inline cplx J(cplx wA, cplx wB, double a, double b)
{
    double const L = b - a;
    if (std::abs(wB) < 1e-14)
    {
        // ∫ (b - u) e^{-wA u} du
        if (std::abs(wA) < 1e-14)
            return L * L / 2.0;
        return (L * std::exp(-wA * a) - I(wA, a, b)) / wA;
    }
    // ∫_a^b e^{-wA u - wB (b - u)} du, written with bounded exponentials
    cplx const D = wA - wB;
    cplx const tail = D.real() <= 0.0
                          ? std::exp(-wA * b) * expm1_ratio(D, L)
                          : std::exp(-wA * a - wB * L) * expm1_ratio(-D, L);
    return (I(wA, a, b) - tail) / wB;
}

inline std::array<std::pair<double, cplx>, 2> coefficients(Component const& c)
{
    if (c.is_sin)
    {
        return {{{1.0, cplx(0.0, -0.5)}, {-1.0, cplx(0.0, 0.5)}}};
    }
    return {{{1.0, cplx(0.5, 0.0)}, {-1.0, cplx(0.5, 0.0)}}};
}

// Σ E[f_i(N_u) f_j(N_v)] integrated over a ≤ u < v ≤ b
inline cplx ordered_part(Component const& ci, Component const& cj, double a, double b)
{
    cplx total = 0.0;
    for (auto const& [si, ki] : coefficients(ci))
    {
        for (auto const& [sj, kj] : coefficients(cj))
        {
            double const alpha = si * ci.theta;
            double const beta = sj * cj.theta;
            total += ki * kj * J(w_of(alpha + beta), w_of(beta), a, b);
        }
    }
    return total;
}

}  // namespace detail

/// E ∫_a^b f(N_u) du (unscaled path time)
inline double integral_mean(Component const& c, double a, double b)
{
    cplx total = 0.0;
    for (auto const& [s, k] : detail::coefficients(c))
        total += k * detail::I(detail::w_of(s * c.theta), a, b);
    return total.real();
}

/// E[∫_a^b f_i(N_u) du · ∫_a^b f_j(N_v) dv] (unscaled path time)
inline double integral_second_moment(Component const& ci,
                                     Component const& cj,
                                     double a,
                                     double b)
{
    return (detail::ordered_part(ci, cj, a, b)
            + detail::ordered_part(cj, ci, a, b))
        .real();
}

inline double path_time(double t, double eps)
{
    return 2.0 * t / (eps * eps);
}

/// E[x_c(t) - x_c(s)] for the ε-scaled process
inline double increment_mean(Component const& c, double eps, double s, double t)
{
    return eps * c.scale
           * integral_mean(c, path_time(s, eps), path_time(t, eps));
}

/// E[Δ_i Δ_j] over (s, t) for the ε-scaled process (uncentered)
inline double increment_second_moment(Component const& ci,
                                      Component const& cj,
                                      double eps,
                                      double s,
                                      double t)
{
    return eps * eps * ci.scale * cj.scale
           * integral_second_moment(
               ci, cj, path_time(s, eps), path_time(t, eps));
}

/// Cov(Δ_i, Δ_j) over (s, t)
inline double increment_covariance(Component const& ci,
                                   Component const& cj,
                                   double eps,
                                   double s,
                                   double t)
{
    return increment_second_moment(ci, cj, eps, s, t)
           - increment_mean(ci, eps, s, t) * increment_mean(cj, eps, s, t);
}

/// E Σ_k (x(t_{k+1}) - x(t_k))² over a partition
inline double expected_quadratic_variation(Component const& c,
                                           double eps,
                                           std::span<double const> partition)
{
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < partition.size(); ++k)
        total += increment_second_moment(c, c, eps, partition[k], partition[k + 1]);
    return total;
}

}  // namespace oracle
