#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace poissonbm {

/// Absolute tolerance (radians) for angle equality and 2π-sum tests on
/// decimal inputs. Rational multiples of π are compared exactly.
inline constexpr double kAngleTolerance = 1e-12;

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr long double kTwoPiL = 2.0L * kPiL;

/// Reduced fraction num/den with den > 0, read as a multiple of π.
struct PiFraction
{
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(PiFraction const&, PiFraction const&) = default;
};

enum class TrigKind
{
    kCos,
    kSin,
};

//---------------------------------------------------------------------------//
/*!
 * An angle in radians.
 *
 * Angles parsed from the "p/q pi" syntax keep their exact rational
 * representation, so sums, differences and the trigonometric values
 * trig(θ·k) are resolved symbolically. Decimal angles carry only the double.
 */
class Angle
{
  public:
    Angle() = default;

    static Angle radians(double value);
    static Angle pi_multiple(std::int64_t num, std::int64_t den = 1);

    double value() const noexcept { return radians_; }
    std::optional<PiFraction> const& fraction() const noexcept
    {
        return fraction_;
    }
    bool is_exact() const noexcept { return fraction_.has_value(); }

    // θ == π (exactly for rationals, within tolerance otherwise)
    bool is_pi() const;
    // θ ≡ 0 (mod 2π)
    bool is_zero_mod_two_pi() const;
    // θ == other (exactly when both rational)
    bool same_as(Angle const& other) const;

    // Canonical text: "p/q pi" for rationals, 17 significant digits otherwise
    std::string to_string() const;

    friend Angle operator+(Angle const& a, Angle const& b);
    friend Angle operator-(Angle const& a, Angle const& b);

  private:
    double radians_ = 0.0;
    std::optional<PiFraction> fraction_;
};

// Parse "1.25", "pi", "3 pi", "1/2 pi", "-1/3pi"; throws std::invalid_argument
Angle parse_angle(std::string_view text);

//---------------------------------------------------------------------------//
/*!
 * Evaluate cos(θ·k) or sin(θ·k).
 *
 * The argument θ·k is reduced modulo 2π before the trig call: exactly in
 * integer arithmetic for rational angles, in extended precision otherwise.
 * Reduction folds onto [0, π] so that θ and 2π − θ give identical cosines and
 * exactly negated sines for rational inputs.
 */
double trig_value(Angle const& theta, std::uint64_t k, TrigKind kind);

}  // namespace poissonbm
