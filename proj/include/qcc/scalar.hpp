#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>

#include "qcc/rational.hpp"

namespace qcc {

// A number that stays an exact rational as long as it can. Arithmetic between
// rationals is exact; anything involving a double, or an overflowing rational
// op, falls back to double. Comparisons between rationals are exact, which is
// what regime selection (sp vs n) and the witness inequality checks rely on.
class Scalar {
public:
    Scalar() : v_(Rat(0)) {}
    Scalar(const Rat& r) : v_(r) {}
    Scalar(std::int64_t n) : v_(Rat(n)) {}
    Scalar(int n) : v_(Rat(n)) {}
    Scalar(std::int64_t n, std::int64_t d) : v_(Rat(n, d)) {}
    Scalar(double x) : v_(x) {}

    bool is_rational() const { return std::holds_alternative<Rat>(v_); }
    const Rat& rat() const { return std::get<Rat>(v_); }

    double to_double() const {
        return is_rational() ? rat().to_double() : std::get<double>(v_);
    }

    int sign() const {
        if (is_rational()) return rat().sign();
        const double d = std::get<double>(v_);
        return d > 0 ? 1 : (d < 0 ? -1 : 0);
    }
    bool is_zero() const { return sign() == 0; }

    Scalar operator-() const {
        if (is_rational()) return Scalar(Rat(0) - rat());
        return Scalar(-std::get<double>(v_));
    }

    Scalar reciprocal() const {
        if (is_rational()) return Scalar(rat().reciprocal());
        return Scalar(1.0 / std::get<double>(v_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return binop(a, b, '+'); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return binop(a, b, '-'); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return binop(a, b, '*'); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return binop(a, b, '/'); }

    // Three-way compare: exact when both sides are rational.
    friend int cmp(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) {
            if (a.rat() == b.rat()) return 0;
            return a.rat() < b.rat() ? -1 : 1;
        }
        const double x = a.to_double(), y = b.to_double();
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return cmp(a, b) >= 0; }

    std::string str() const {
        if (is_rational()) return rat().str();
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v_));
        return buf;
    }

    // Parses "3/4", "2", or a decimal literal like "0.15" (decimals become
    // exact base-10 rationals; falls back to double on overflow).
    static Scalar parse(const std::string& text);

private:
    static Scalar binop(const Scalar& a, const Scalar& b, char op) {
        if (a.is_rational() && b.is_rational()) {
            try {
                switch (op) {
                    case '+': return Scalar(a.rat() + b.rat());
                    case '-': return Scalar(a.rat() - b.rat());
                    case '*': return Scalar(a.rat() * b.rat());
                    default:  return Scalar(a.rat() / b.rat());
                }
            } catch (const rational_overflow&) {
                // fall through to double arithmetic
            }
        }
        const double x = a.to_double(), y = b.to_double();
        switch (op) {
            case '+': return Scalar(x + y);
            case '-': return Scalar(x - y);
            case '*': return Scalar(x * y);
            default:  return Scalar(x / y);
        }
    }

    std::variant<Rat, double> v_;
};

inline Scalar abs(const Scalar& a) { return a.sign() < 0 ? -a : a; }

inline Scalar Scalar::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const auto n = std::stoll(text.substr(0, slash));
        const auto d = std::stoll(text.substr(slash + 1));
        return Scalar(Rat(n, d));
    }
    const auto dot = text.find('.');
    const auto exp = text.find_first_of("eE");
    if (dot == std::string::npos && exp == std::string::npos)
        return Scalar(Rat(std::stoll(text)));
    if (exp == std::string::npos) {
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const auto places = static_cast<int>(text.size() - dot - 1);
        try {
            Rat den(1);
            for (int i = 0; i < places; ++i) den = den * Rat(10);
            return Scalar(Rat(std::stoll(digits), 1) / den);
        } catch (...) {
            // fall through
        }
    }
    return Scalar(std::stod(text));
}

} // namespace qcc
