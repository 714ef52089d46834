#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "qcc/errors.hpp"

namespace qcc {

// Exact rational over int64 with checked arithmetic. Denominator is always
// positive and the fraction is kept reduced. Operations that would leave the
// 64-bit range throw rational_overflow.
class Rat {
public:
    constexpr Rat() = default;
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) {
        if (d == 0) throw invalid_input("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        num_ = g ? n / g : n;
        den_ = g ? d / g : d;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rat operator-() const { return Rat(checked(-static_cast<i128>(num_)), den_); }

    Rat reciprocal() const {
        if (num_ == 0) throw invalid_input("reciprocal of zero");
        return Rat(den_, num_);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        const i128 n = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
        const i128 d = static_cast<i128>(a.den_) * (b.den_ / g);
        return make(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        const std::int64_t g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
        const std::int64_t g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
        const i128 n = static_cast<i128>(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
        const i128 d = static_cast<i128>(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
        return make(n, d);
    }
    friend Rat operator/(const Rat& a, const Rat& b) { return a * b.reciprocal(); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    Rat pow_int(int e) const {
        if (e < 0) return reciprocal().pow_int(-e);
        Rat r(1), base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = (e > 1) ? base * base : base;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Exact conversion of a finite double whose reduced dyadic denominator is
    // at most 2^max_bits. Returns nullopt for anything deeper.
    static std::optional<Rat> from_double_exact(double x, int max_bits = 40) {
        if (!std::isfinite(x)) return std::nullopt;
        if (x == 0.0) return Rat(0);
        int e = 0;
        const double m = std::frexp(x, &e);   // x = m * 2^e, |m| in [0.5,1)
        const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
        int shift = e - 53;                   // x = mant * 2^shift
        std::int64_t n = mant;
        while ((n & 1) == 0 && n != 0) { n >>= 1; ++shift; }
        if (shift >= 0) {
            if (shift > 61) return std::nullopt;
            const i128 v = static_cast<i128>(n) << shift;
            if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
                return std::nullopt;
            return Rat(static_cast<std::int64_t>(v), 1);
        }
        if (-shift > max_bits) return std::nullopt;
        return Rat(n, std::int64_t(1) << (-shift));
    }

    // Continued-fraction rationalization for parse-time snapping of decimal
    // inputs. Returns nullopt if no denominator <= max_den matches within tol.
    static std::optional<Rat> rationalize(double x, std::int64_t max_den = 1000000,
                                          double rel_tol = 1e-12) {
        if (!std::isfinite(x)) return std::nullopt;
        double v = x;
        std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        for (int it = 0; it < 64; ++it) {
            const double fl = std::floor(v);
            if (std::abs(fl) > 9.0e17) return std::nullopt;
            const auto a = static_cast<std::int64_t>(fl);
            const i128 p2 = static_cast<i128>(a) * p1 + p0;
            const i128 q2 = static_cast<i128>(a) * q1 + q0;
            if (q2 > max_den || p2 > std::numeric_limits<std::int64_t>::max() ||
                p2 < std::numeric_limits<std::int64_t>::min())
                break;
            p0 = p1; q0 = q1;
            p1 = static_cast<std::int64_t>(p2);
            q1 = static_cast<std::int64_t>(q2);
            const double approx = static_cast<double>(p1) / static_cast<double>(q1);
            if (std::abs(approx - x) <= rel_tol * std::max(1.0, std::abs(x)))
                return Rat(p1, q1);
            const double frac = v - fl;
            if (frac < 1e-18) break;
            v = 1.0 / frac;
        }
        return std::nullopt;
    }

private:
    using i128 = __int128;

    static std::int64_t checked(i128 v) {
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
            throw rational_overflow();
        return static_cast<std::int64_t>(v);
    }

    static Rat make(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        const i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num_ = checked(n);
        r.den_ = checked(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { const i128 t = a % b; a = b; b = t; }
        return a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace qcc
