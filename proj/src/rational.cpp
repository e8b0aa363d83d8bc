#include "rsdps/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rsdps {

namespace {

using u128 = unsigned __int128;

constexpr __int128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr __int128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 abs128(__int128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
        return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

BigInt to_bigint(__int128 v) {
    u128 mag = abs128(v);
    BigInt out = static_cast<std::uint64_t>(mag >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return v < 0 ? BigInt(-out) : out;
}

bool fits64(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    return v >= lo && v <= hi;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    __int128 n = num;
    __int128 d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    assign_reduced(n, d);
}

Rational::Rational(const BigRational& value) { assign_big(value); }

void Rational::assign_reduced(__int128 num, __int128 den) {
    // den > 0
    u128 g = gcd128(abs128(num), u128(den));
    if (g > 1) {
        num /= static_cast<__int128>(g);
        den /= static_cast<__int128>(g);
    }
    if (num >= kMin64 && num <= kMax64 && den <= kMax64) {
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
        big_.reset();
        return;
    }
    big_ = std::make_shared<const BigRational>(to_bigint(num), to_bigint(den));
    num_ = 0;
    den_ = 1;
}

void Rational::assign_big(BigRational value) {
    const BigInt& n = boost::multiprecision::numerator(value);
    const BigInt& d = boost::multiprecision::denominator(value);
    if (fits64(n) && fits64(d)) {
        num_ = n.convert_to<std::int64_t>();
        den_ = d.convert_to<std::int64_t>();
        big_.reset();
        return;
    }
    big_ = std::make_shared<const BigRational>(std::move(value));
    num_ = 0;
    den_ = 1;
}

int Rational::sign() const noexcept {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
}

BigInt Rational::numerator() const {
    return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(num_);
}

BigInt Rational::denominator() const {
    return big_ ? BigInt(boost::multiprecision::denominator(*big_)) : BigInt(den_);
}

BigRational Rational::to_big() const { return big_ ? *big_ : BigRational(num_, den_); }

double Rational::to_double() const {
    if (big_) return big_->convert_to<double>();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (den_ == rhs.den_) {
            assign_reduced(__int128(num_) + rhs.num_, den_);
        } else {
            assign_reduced(__int128(num_) * rhs.den_ + __int128(rhs.num_) * den_, __int128(den_) * rhs.den_);
        }
        return *this;
    }
    assign_big(to_big() + rhs.to_big());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (den_ == rhs.den_) {
            assign_reduced(__int128(num_) - rhs.num_, den_);
        } else {
            assign_reduced(__int128(num_) * rhs.den_ - __int128(rhs.num_) * den_, __int128(den_) * rhs.den_);
        }
        return *this;
    }
    assign_big(to_big() - rhs.to_big());
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        assign_reduced(__int128(num_) * rhs.num_, __int128(den_) * rhs.den_);
        return *this;
    }
    assign_big(to_big() * rhs.to_big());
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("rational division by zero");
    if (!big_ && !rhs.big_) {
        __int128 n = __int128(num_) * rhs.den_;
        __int128 d = __int128(den_) * rhs.num_;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        assign_reduced(n, d);
        return *this;
    }
    assign_big(to_big() / rhs.to_big());
    return *this;
}

Rational Rational::operator-() const {
    Rational out;
    if (big_) {
        out.assign_big(-*big_);
    } else {
        out.assign_reduced(-__int128(num_), den_);
    }
    return out;
}

bool operator==(const Rational& a, const Rational& b) noexcept {
    // Both sides are canonical, so a small value never equals a big one.
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        __int128 lhs = __int128(a.num_) * b.den_;
        __int128 rhs = __int128(b.num_) * a.den_;
        return lhs < rhs ? std::strong_ordering::less
                         : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    auto c = a.to_big().compare(b.to_big());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::str() const {
    if (!big_) {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    const BigInt& d = boost::multiprecision::denominator(*big_);
    std::string out = boost::multiprecision::numerator(*big_).str();
    if (d != 1) out += "/" + d.str();
    return out;
}

std::string Rational::to_decimal(int digits) const {
    if (digits < 0) throw std::invalid_argument("negative digit count");
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt num = numerator();
    const BigInt den = denominator();
    const bool negative = num < 0;
    if (negative) num = -num;
    BigInt scaled = num * scale;
    BigInt q = scaled / den;
    BigInt r = scaled % den;
    if (2 * r >= den) q += 1;

    std::string body = q.str();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits)) {
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    if (negative && q != 0) body.insert(0, "-");
    return body;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    auto parse_int = [&](std::string_view s) -> BigInt {
        std::size_t start = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start == s.size()) fail();
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') fail();
        }
        BigInt v(std::string(s[0] == '+' ? s.substr(1) : s));
        return v;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt n = parse_int(text.substr(0, slash));
        BigInt d = parse_int(text.substr(slash + 1));
        if (d == 0) throw std::domain_error("rational with zero denominator");
        return Rational(BigRational(n, d));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        std::string_view whole_digits = (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) ? whole.substr(1) : whole;
        if (whole_digits.empty() && frac.empty()) fail();
        BigInt w = whole_digits.empty() ? BigInt(0) : parse_int(whole_digits);
        BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
        if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) fail();
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigRational v(w * scale + f, scale);
        return Rational(negative ? BigRational(-v) : v);
    }
    return Rational(BigRational(parse_int(text)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace rsdps
