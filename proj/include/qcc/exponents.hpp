#pragma once

#include <optional>
#include <string>

#include "qcc/scalar.hpp"

namespace qcc {

// Integrability exponent p in (0, infinity], stored through its reciprocal
// 1/p. Infinity is the distinguished reciprocal 0, not a large float. All the
// exponent formulas are stated in reciprocal form, so this is the native
// representation throughout.
class Exponent {
public:
    static Exponent from_value(const Scalar& p) {
        if (p.sign() <= 0) throw invalid_input("exponent must be positive, got " + p.str());
        return Exponent(p.reciprocal());
    }
    static Exponent from_reciprocal(const Scalar& u) {
        if (u.sign() < 0) throw invalid_input("reciprocal exponent must be >= 0, got " + u.str());
        return Exponent(u);
    }
    static Exponent infinity() { return Exponent(Scalar(0)); }

    const Scalar& reciprocal() const { return inv_; }
    bool is_infinite() const { return inv_.is_zero(); }

    Scalar value() const {
        if (is_infinite()) throw invalid_input("no finite value for p = infinity");
        return inv_.reciprocal();
    }
    double to_double() const {
        return is_infinite() ? std::numeric_limits<double>::infinity() : value().to_double();
    }
    std::string str() const { return is_infinite() ? "inf" : value().str(); }

    friend bool operator==(const Exponent& a, const Exponent& b) { return a.inv_ == b.inv_; }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

private:
    explicit Exponent(Scalar inv) : inv_(std::move(inv)) {}
    Scalar inv_;
};

// A position (1/p, s) in the smoothness-integrability diagram.
struct ExponentPoint {
    Scalar inv_p;   // in [0, 1); 0 encodes p = infinity
    Scalar s;       // in [0, 1]

    ExponentPoint(Scalar ip, Scalar smoothness) : inv_p(std::move(ip)), s(std::move(smoothness)) {
        if (inv_p.sign() < 0 || inv_p >= Scalar(1))
            throw invalid_input("1/p must lie in [0,1), got " + inv_p.str());
        if (s.sign() < 0 || s > Scalar(1))
            throw invalid_input("smoothness must lie in [0,1], got " + s.str());
    }
};

enum class Regime { subcritical, critical, supercritical };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical: return "critical";
        default: return "supercritical";
    }
}

// Sign of s*p - n decided without roundoff: s*p >= n iff s >= n * (1/p),
// which also covers p = infinity through 1/p = 0.
inline Regime regime_of(const Scalar& s, const Exponent& p, int n) {
    const int c = cmp(s, Scalar(n) * p.reciprocal());
    return c < 0 ? Regime::subcritical : (c == 0 ? Regime::critical : Regime::supercritical);
}

// Jacobian integrability data: positive powers a > 1 and b > 0 with bounds
// C_a, C_b on the corresponding Jacobian power integrals, in ambient
// dimension n, optionally tagged with the planar distortion K it came from.
struct QCRegularity {
    int n;
    Scalar a;
    Scalar C_a;
    Scalar b;
    Scalar C_b;
    std::optional<Scalar> K;

    QCRegularity(int dim, Scalar a_pow, Scalar b_pow, Scalar ca = Scalar(2), Scalar cb = Scalar(2),
                 std::optional<Scalar> distortion = std::nullopt)
        : n(dim), a(std::move(a_pow)), C_a(std::move(ca)), b(std::move(b_pow)), C_b(std::move(cb)),
          K(std::move(distortion)) {
        if (n < 2) throw invalid_input("ambient dimension must be >= 2");
        if (a <= Scalar(1)) throw invalid_input("Jacobian power a must exceed 1, got " + a.str());
        if (b.sign() <= 0) throw invalid_input("Jacobian power b must be positive, got " + b.str());
        if (C_a.sign() <= 0 || C_b.sign() <= 0) throw invalid_input("C_a and C_b must be positive");
        if (K && *K < Scalar(1)) throw invalid_input("distortion K must be >= 1");
        if (K && *K > Scalar(1)) {
            const Scalar a_sup = *K / (*K - Scalar(1));
            const Scalar b_sup = Scalar(1) / (*K - Scalar(1));
            if (a >= a_sup)
                throw invalid_input("planar power a must satisfy a < K/(K-1), got a = " + a.str());
            if (b >= b_sup)
                throw invalid_input("planar power b must satisfy b < 1/(K-1), got b = " + b.str());
        }
    }

    // Planar (n = 2) data built from a distortion constant, with powers
    // strictly inside the admissible windows a < K/(K-1), b < 1/(K-1).
    static QCRegularity planar(const Scalar& K, Scalar a_pow, Scalar b_pow,
                               Scalar ca = Scalar(2), Scalar cb = Scalar(2)) {
        return QCRegularity(2, std::move(a_pow), std::move(b_pow), std::move(ca), std::move(cb), K);
    }
};

} // namespace qcc
