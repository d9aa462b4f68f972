#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace annogate {

// Exact fraction on 64-bit terms. Metric arithmetic stays rational end to
// end; rounding happens only at the reporting boundary.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    static Rational from_int(std::int64_t v) { return Rational(v, 1); }

    // Parses "0.75", "-1", ".5" exactly (value = digits / 10^k). No exponent form.
    static Rational from_decimal(const std::string& text) {
        std::string s = text;
        bool neg = !s.empty() && s[0] == '-';
        if (neg || (!s.empty() && s[0] == '+')) s.erase(0, 1);
        auto dot = s.find('.');
        std::string digits = dot == std::string::npos ? s : s.substr(0, dot) + s.substr(dot + 1);
        int places = dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::domain_error("not a decimal literal: " + text);
        std::int64_t num = 0, den = 1;
        for (char c : digits) num = num * 10 + (c - '0');
        for (int i = 0; i < places; ++i) den *= 10;
        return Rational(neg ? -num : num, den);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator+(const Rational& o) const {
        return make(w(num_) * o.den_ + w(o.num_) * den_, w(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return make(w(num_) * o.den_ - w(o.num_) * den_, w(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return make(w(num_) * o.num_, w(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return make(w(num_) * o.den_, w(den_) * o.num_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return w(num_) * o.den_ < w(o.num_) * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    // Fixed-point decimal string, round half away from zero. places in [0, 9].
    std::string decimals(int places) const {
        std::int64_t scale = 1;
        for (int i = 0; i < places; ++i) scale *= 10;
        w scaled = (w(num_) * scale * 2 + (num_ >= 0 ? w(den_) : -w(den_))) / (w(den_) * 2);
        bool neg = scaled < 0;
        std::uint64_t mag = neg ? static_cast<std::uint64_t>(-scaled) : static_cast<std::uint64_t>(scaled);
        std::string digits = std::to_string(mag);
        if (digits.size() <= static_cast<size_t>(places))
            digits.insert(0, places + 1 - digits.size(), '0');
        if (places > 0) digits.insert(digits.size() - places, ".");
        return neg ? "-" + digits : digits;
    }

    // Double equal to the rational rounded at 3 decimals; report files carry this.
    double rounded3() const { return std::stod(decimals(3)); }

private:
    using w = __int128;

    static Rational make(w num, w den) {
        Rational r;
        if (den < 0) { num = -num; den = -den; }
        w g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        r.num_ = checked(num);
        r.den_ = checked(den);
        return r;
    }
    void assign(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        *this = make(num, den);
    }
    static w gcd128(w a, w b) { while (b != 0) { w t = a % b; a = b; b = t; } return a == 0 ? 1 : a; }
    static std::int64_t checked(w v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational term overflow");
        return static_cast<std::int64_t>(v);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace annogate
