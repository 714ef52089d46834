#pragma once

#include <cmath>
#include <vector>

#include "qcc/errors.hpp"

namespace qcc {

// Surface measure of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_measure(int n) {
    if (n < 1) throw invalid_input("sphere measure needs n >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

inline double ball_volume(int n, double radius) {
    return unit_sphere_measure(n) * std::pow(radius, n) / n;
}

struct Ball {
    std::vector<double> center;
    double radius = 1.0;

    Ball(std::vector<double> c, double r) : center(std::move(c)), radius(r) {
        if (!(radius > 0.0)) throw invalid_input("ball radius must be positive");
        if (center.empty()) throw invalid_input("ball center must have a dimension");
    }

    static Ball origin(int n, double r = 1.0) { return Ball(std::vector<double>(n, 0.0), r); }

    int dim() const { return static_cast<int>(center.size()); }

    bool origin_centered() const {
        for (double c : center)
            if (c != 0.0) return false;
        return true;
    }

    bool contains_origin() const {
        double sq = 0.0;
        for (double c : center) sq += c * c;
        return sq < radius * radius;
    }
};

} // namespace qcc
