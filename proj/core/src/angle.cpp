#include "poissonbm/angle.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace poissonbm {
namespace {

constexpr std::int64_t kMaxFractionTerm = 1'000'000;

PiFraction reduce(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::invalid_argument("angle fraction has zero denominator");
    if (den < 0)
    {
        num = -num;
        den = -den;
    }
    std::int64_t const g = std::gcd(num, den);
    return {num / g, den / g};
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::int64_t parse_integer(std::string_view s, std::string_view whole)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    {
        throw std::invalid_argument("malformed angle '" + std::string(whole)
                                    + "'");
    }
    if (value > kMaxFractionTerm || value < -kMaxFractionTerm)
    {
        throw std::invalid_argument("angle fraction term out of range in '"
                                    + std::string(whole) + "'");
    }
    return value;
}

double parse_decimal(std::string_view s, std::string_view whole)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    {
        throw std::invalid_argument("malformed angle '" + std::string(whole)
                                    + "'");
    }
    if (!std::isfinite(value))
        throw std::invalid_argument("non-finite angle '" + std::string(whole)
                                    + "'");
    return value;
}

// Exact trig of π·r/q for an integer residue r ∈ [0, 2q).
double exact_pi_trig(std::int64_t r, std::int64_t q, TrigKind kind)
{
    double sign = 1.0;
    if (r > q)
    {
        // fold (π, 2π) onto (0, π): cos even, sin odd
        r = 2 * q - r;
        if (kind == TrigKind::kSin)
            sign = -1.0;
    }
    // r ∈ [0, q]; fold around π/2
    std::int64_t const mirror = q - r;
    if (kind == TrigKind::kCos)
    {
        if (2 * r == q)
            return 0.0;
        if (r > mirror)
        {
            sign = -sign;
            r = mirror;
        }
        if (r == 0)
            return sign;
        return sign
               * static_cast<double>(
                   std::cos(kPiL * static_cast<long double>(r)
                            / static_cast<long double>(q)));
    }
    r = std::min(r, mirror);
    if (r == 0)
        return 0.0;
    if (2 * r == q)
        return sign;
    return sign
           * static_cast<double>(std::sin(kPiL * static_cast<long double>(r)
                                          / static_cast<long double>(q)));
}

}  // namespace

Angle Angle::radians(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("angle must be finite");
    Angle a;
    a.radians_ = value;
    return a;
}

Angle Angle::pi_multiple(std::int64_t num, std::int64_t den)
{
    Angle a;
    a.fraction_ = reduce(num, den);
    a.radians_ = static_cast<double>(kPiL * static_cast<long double>(num)
                                     / static_cast<long double>(den));
    return a;
}

bool Angle::is_pi() const
{
    if (fraction_)
        return fraction_->num == 1 && fraction_->den == 1;
    return std::fabs(radians_ - static_cast<double>(kPiL)) <= kAngleTolerance;
}

bool Angle::is_zero_mod_two_pi() const
{
    if (fraction_)
        return fraction_->den == 1 && fraction_->num % 2 == 0;
    long double r = std::fmod(std::fabs(static_cast<long double>(radians_)),
                              kTwoPiL);
    return r <= kAngleTolerance || kTwoPiL - r <= kAngleTolerance;
}

bool Angle::same_as(Angle const& other) const
{
    if (fraction_ && other.fraction_)
        return *fraction_ == *other.fraction_;
    return std::fabs(radians_ - other.radians_) <= kAngleTolerance;
}

std::string Angle::to_string() const
{
    if (fraction_)
    {
        if (fraction_->den == 1)
        {
            return fraction_->num == 1 ? std::string("pi")
                                       : std::to_string(fraction_->num) + " pi";
        }
        return std::to_string(fraction_->num) + "/"
               + std::to_string(fraction_->den) + " pi";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", radians_);
    return buf;
}

Angle operator+(Angle const& a, Angle const& b)
{
    if (a.fraction_ && b.fraction_)
    {
        auto const& x = *a.fraction_;
        auto const& y = *b.fraction_;
        Angle r;
        r.fraction_ = reduce(x.num * y.den + y.num * x.den, x.den * y.den);
        r.radians_ = static_cast<double>(
            kPiL * static_cast<long double>(r.fraction_->num)
            / static_cast<long double>(r.fraction_->den));
        return r;
    }
    return Angle::radians(a.radians_ + b.radians_);
}

Angle operator-(Angle const& a, Angle const& b)
{
    if (a.fraction_ && b.fraction_)
    {
        auto neg = b;
        neg.fraction_->num = -neg.fraction_->num;
        neg.radians_ = -neg.radians_;
        return a + neg;
    }
    return Angle::radians(a.radians_ - b.radians_);
}

Angle parse_angle(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.empty())
        throw std::invalid_argument("empty angle");

    if (s.size() >= 2)
    {
        auto tail = s.substr(s.size() - 2);
        if (std::tolower(static_cast<unsigned char>(tail[0])) == 'p'
            && std::tolower(static_cast<unsigned char>(tail[1])) == 'i')
        {
            std::string_view coef = trim(s.substr(0, s.size() - 2));
            if (!coef.empty() && coef.back() == '*')
                coef = trim(coef.substr(0, coef.size() - 1));
            if (coef.empty() || coef == "+")
                return Angle::pi_multiple(1);
            if (coef == "-")
                return Angle::pi_multiple(-1);
            if (auto slash = coef.find('/'); slash != std::string_view::npos)
            {
                return Angle::pi_multiple(
                    parse_integer(coef.substr(0, slash), text),
                    parse_integer(coef.substr(slash + 1), text));
            }
            if (coef.find_first_of(".eE") != std::string_view::npos)
            {
                return Angle::radians(static_cast<double>(
                    kPiL * static_cast<long double>(parse_decimal(coef, text))));
            }
            return Angle::pi_multiple(parse_integer(coef, text));
        }
    }
    return Angle::radians(parse_decimal(s, text));
}

__extension__ using Int128 = __int128;

double trig_value(Angle const& theta, std::uint64_t k, TrigKind kind)
{
    if (auto const& f = theta.fraction())
    {
        auto const period = static_cast<Int128>(2 * f->den);
        Int128 num = static_cast<Int128>(f->num) % period;
        if (num < 0)
            num += period;
        auto const r = static_cast<std::int64_t>(
            (num * static_cast<Int128>(k % static_cast<std::uint64_t>(period)))
            % period);
        return exact_pi_trig(r, f->den, kind);
    }

    long double a = std::fmod(static_cast<long double>(theta.value())
                                  * static_cast<long double>(k),
                              kTwoPiL);
    if (a < 0)
        a += kTwoPiL;
    double sign = 1.0;
    if (a > kPiL)
    {
        a = kTwoPiL - a;
        if (kind == TrigKind::kSin)
            sign = -1.0;
    }
    return kind == TrigKind::kCos ? static_cast<double>(std::cos(a))
                                  : sign * static_cast<double>(std::sin(a));
}

}  // namespace poissonbm
