#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcc/exponents.hpp"

namespace qcc {

enum class ProfileKind { singular_power, flat_power, piecewise_power };

// One term c * r^e active on [lo, hi). A piecewise-power profile sums every
// piece whose interval contains r.
struct PowerPiece {
    double lo = 0.0;
    double hi = 1.0;
    double coeff = 1.0;
    double exponent = 0.0;
};

// Radial profile functions: the singular family max(r^-rho - 1, 0), the flat
// family max(1 - r^rho, 0) (both supported in the closed unit ball), and free
// piecewise-power combinations used as quadrature fixtures.
class RadialProfile {
public:
    static RadialProfile singular(Scalar rho) {
        check_rho(rho);
        return RadialProfile(ProfileKind::singular_power, std::move(rho));
    }
    static RadialProfile flat(Scalar rho) {
        check_rho(rho);
        return RadialProfile(ProfileKind::flat_power, std::move(rho));
    }
    static RadialProfile piecewise(std::vector<PowerPiece> pieces) {
        RadialProfile p(ProfileKind::piecewise_power, Scalar(0));
        for (const auto& piece : pieces)
            if (!(piece.hi > piece.lo) || piece.lo < 0.0)
                throw invalid_input("piecewise profile needs 0 <= lo < hi");
        p.pieces_ = std::move(pieces);
        return p;
    }

    ProfileKind kind() const { return kind_; }
    const Scalar& rho() const { return rho_; }
    const std::vector<PowerPiece>& pieces() const { return pieces_; }

    double operator()(double r) const {
        switch (kind_) {
            case ProfileKind::singular_power: {
                if (r <= 0.0) throw singularity_error("singular profile blows up at the origin");
                if (r >= 1.0) return 0.0;
                return std::pow(r, -rho_.to_double()) - 1.0;
            }
            case ProfileKind::flat_power: {
                if (r < 0.0) throw invalid_input("radius must be nonnegative");
                if (r >= 1.0) return 0.0;
                return 1.0 - std::pow(r, rho_.to_double());
            }
            default: {
                double v = 0.0;
                for (const auto& piece : pieces_)
                    if (r >= piece.lo && r < piece.hi) v += piece.coeff * std::pow(r, piece.exponent);
                return v;
            }
        }
    }

    // F(b) - F(a), evaluated through expm1/log1p for the two power families
    // when both radii sit inside the support. The naive difference cancels
    // catastrophically for b - a << a, which is exactly the regime the
    // near-diagonal quadrature of the fractional seminorms lives in.
    double difference(double a, double b) const {
        if (a > b) return -difference(b, a);
        const double rho = rho_.to_double();
        if (kind_ == ProfileKind::singular_power && a > 0.0 && b < 1.0)
            return a <= 0.0 ? (*this)(b)
                            : std::pow(a, -rho) * std::expm1(-rho * std::log1p((b - a) / a));
        if (kind_ == ProfileKind::flat_power && a > 0.0 && b < 1.0)
            return -std::pow(a, rho) * std::expm1(rho * std::log1p((b - a) / a));
        return (*this)(b) - (*this)(a);
    }

    // Radial derivative F'(r), away from kinks. Used by the gradient seminorm.
    double derivative(double r) const {
        switch (kind_) {
            case ProfileKind::singular_power: {
                if (r <= 0.0) throw singularity_error("singular profile blows up at the origin");
                if (r >= 1.0) return 0.0;
                const double rho = rho_.to_double();
                return -rho * std::pow(r, -rho - 1.0);
            }
            case ProfileKind::flat_power: {
                if (r >= 1.0) return 0.0;
                const double rho = rho_.to_double();
                if (r <= 0.0) return rho == 1.0 ? -1.0 : (rho > 1.0 ? 0.0 : -INFINITY);
                return -rho * std::pow(r, rho - 1.0);
            }
            default: {
                double v = 0.0;
                for (const auto& piece : pieces_)
                    if (r >= piece.lo && r < piece.hi)
                        v += piece.coeff * piece.exponent * std::pow(r, piece.exponent - 1.0);
                return v;
            }
        }
    }

    // Radii where the formula changes; quadrature splits panels here.
    std::vector<double> breakpoints() const {
        std::vector<double> pts;
        if (kind_ == ProfileKind::piecewise_power) {
            for (const auto& piece : pieces_) {
                pts.push_back(piece.lo);
                pts.push_back(piece.hi);
            }
        } else {
            pts.push_back(1.0);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }

    double support_radius() const {
        if (kind_ != ProfileKind::piecewise_power) return 1.0;
        double hi = 0.0;
        for (const auto& piece : pieces_) hi = std::max(hi, piece.hi);
        return hi;
    }

    // Leading power e of the value near r = 0 (|F(r)| ~ C r^e), exact for the
    // two families. Drives the closed-form divergence tests.
    Scalar leading_exponent_at_zero() const {
        switch (kind_) {
            case ProfileKind::singular_power: return -rho_;
            case ProfileKind::flat_power: return Scalar(0);
            default: {
                double lead = 0.0;
                bool found = false;
                for (const auto& piece : pieces_)
                    if (piece.lo == 0.0 && piece.coeff != 0.0) {
                        lead = found ? std::min(lead, piece.exponent) : piece.exponent;
                        found = true;
                    }
                return Scalar(found ? lead : 0.0);
            }
        }
    }

    // Leading power of |F'(r)| near r = 0.
    Scalar gradient_exponent_at_zero() const {
        switch (kind_) {
            case ProfileKind::singular_power: return -rho_ - Scalar(1);
            case ProfileKind::flat_power: return rho_ - Scalar(1);
            default: return leading_exponent_at_zero() - Scalar(1);
        }
    }

    std::string str() const {
        switch (kind_) {
            case ProfileKind::singular_power: return "f_" + rho_.str();
            case ProfileKind::flat_power: return "g_" + rho_.str();
            default: return "piecewise[" + std::to_string(pieces_.size()) + "]";
        }
    }

private:
    RadialProfile(ProfileKind kind, Scalar rho) : kind_(kind), rho_(std::move(rho)) {}

    static void check_rho(const Scalar& rho) {
        if (rho.sign() <= 0) throw invalid_input("profile exponent rho must be positive");
    }

    ProfileKind kind_;
    Scalar rho_;
    std::vector<PowerPiece> pieces_;
};

enum class Membership { member, non_member, boundary };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::member: return "member";
        case Membership::non_member: return "non-member";
        default: return "boundary";
    }
}

// Exact membership classification of the two profile families in the
// fractional space with smoothness s and integrability p over R^n:
// the singular family belongs iff 0 < rho < n/p - s, the flat family iff
// rho > s - n/p. Equality is reported as the boundary value.
inline Membership analytic_membership(const RadialProfile& prof, const Scalar& s,
                                      const Exponent& p, int n) {
    if (prof.kind() == ProfileKind::piecewise_power)
        throw invalid_input("no analytic membership criterion for piecewise profiles");
    if (s.sign() < 0 || s > Scalar(1)) throw invalid_input("smoothness s must lie in [0,1]");
    if (p.is_infinite() || p.value() <= Scalar(1))
        throw invalid_input("membership criterion needs 1 < p < infinity");
    const Scalar np = Scalar(n) * p.reciprocal();
    if (prof.kind() == ProfileKind::singular_power) {
        const Scalar threshold = np - s;
        const int c = cmp(prof.rho(), threshold);
        return c < 0 ? Membership::member : (c == 0 ? Membership::boundary : Membership::non_member);
    }
    const Scalar threshold = s - np;
    const int c = cmp(prof.rho(), threshold);
    return c > 0 ? Membership::member : (c == 0 ? Membership::boundary : Membership::non_member);
}

// The membership threshold in rho for a given family at (s, p, n).
inline Scalar membership_threshold(ProfileKind kind, const Scalar& s, const Exponent& p, int n) {
    const Scalar np = Scalar(n) * p.reciprocal();
    if (kind == ProfileKind::singular_power) return np - s;
    if (kind == ProfileKind::flat_power) return s - np;
    throw invalid_input("no analytic membership criterion for piecewise profiles");
}

} // namespace qcc
