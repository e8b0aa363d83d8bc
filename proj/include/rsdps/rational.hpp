#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rsdps {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational number kept in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline
/// and all arithmetic on them runs through 128-bit intermediates. Results
/// that overflow are promoted to an arbitrary-precision representation and
/// demoted again as soon as they fit.
class Rational {
public:
    Rational() noexcept = default;
    Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT: implicit by design of numeric types
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const BigRational& value);

    static Rational parse(std::string_view text);

    [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_small() const noexcept { return !big_; }
    [[nodiscard]] int sign() const noexcept;

    [[nodiscard]] BigInt numerator() const;
    [[nodiscard]] BigInt denominator() const;
    [[nodiscard]] BigRational to_big() const;
    [[nodiscard]] double to_double() const;

    /// `p/q`, or just `p` when the denominator is 1.
    [[nodiscard]] std::string str() const;
    /// Fixed-point rendering with `digits` fractional digits, rounded half away from zero.
    [[nodiscard]] std::string to_decimal(int digits) const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) noexcept;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    void assign_big(BigRational value);
    void assign_reduced(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const BigRational> big_;
};

}  // namespace rsdps
