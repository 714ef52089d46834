#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qcc/diagram.hpp"
#include "qcc/norm_estimation.hpp"
#include "qcc/sharpness.hpp"
#include "qcc/version.hpp"

namespace qcc {

using nlohmann::json;

// FNV-1a over the canonical run-spec text; embedded in every output artifact.
inline std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Exact values serialize as "num/den" strings, everything else as numbers.
inline json scalar_json(const Scalar& v) {
    if (v.is_rational() && !v.rat().is_integer()) return v.str();
    if (v.is_rational()) return v.rat().num();
    return v.to_double();
}

inline json exponent_json(const Exponent& e) {
    if (e.is_infinite()) return "inf";
    return scalar_json(e.value());
}

inline json to_json(const NormEstimate& est) {
    json j;
    j["value"] = est.divergent ? json("divergent") : json(est.value);
    j["cutoffs"] = est.cutoffs;
    j["partials"] = est.partials;
    j["log_slope"] = est.log_slope;
    j["r2"] = est.r2;
    j["cauchy_rel"] = est.cauchy_rel;
    j["seed"] = est.seed;
    j["mesh"] = {{"radial_panels", est.mesh.radial_panels},
                 {"diagonal_panels", est.mesh.diagonal_panels},
                 {"kernel_table_size", est.mesh.kernel_table_size},
                 {"direction_samples", est.mesh.direction_samples},
                 {"quadrature_residual", est.mesh.quadrature_residual}};
    return j;
}

inline json to_json(const InequalityCheck& c) {
    return {{"name", c.name},
            {"lhs", scalar_json(c.lhs)},
            {"rhs", scalar_json(c.rhs)},
            {"holds", c.holds},
            {"margin", c.margin}};
}

inline json to_json(const SharpnessWitness& w) {
    json checks = json::array();
    for (const auto& c : w.checks) checks.push_back(to_json(c));
    return {{"regime", to_string(w.regime)},
            {"n", w.n},
            {"s", scalar_json(w.s)},
            {"p", exponent_json(w.p)},
            {"q_prime", exponent_json(w.q_prime)},
            {"jacobian_power", scalar_json(w.jacobian_power)},
            {"epsilon", scalar_json(w.epsilon)},
            {"delta_max", w.delta_max},
            {"delta", scalar_json(w.delta)},
            {"delta_binding", w.delta_binding},
            {"k", scalar_json(w.k)},
            {"rho", scalar_json(w.rho)},
            {"composed_rho", scalar_json(w.composed_rho)},
            {"base_threshold", scalar_json(w.base_threshold)},
            {"target_threshold", scalar_json(w.target_threshold)},
            {"all_hold", w.all_hold()},
            {"checks", checks}};
}

inline json to_json(const MembershipComparison& m) {
    return {{"analytic", to_string(m.analytic)},
            {"numerical", to_string(m.numerical)},
            {"margin", m.margin},
            {"estimate", to_json(m.estimate)}};
}

inline json to_json(const WitnessReport& rep) {
    return {{"witness", to_json(rep.witness)},
            {"base", to_json(rep.base)},
            {"composed", to_json(rep.composed)},
            {"analytic_as_expected", rep.analytic_as_expected},
            {"numerical_consistent", rep.numerical_consistent}};
}

inline json to_json(const SweepReport& rep) {
    json cases = json::array();
    for (const auto& c : rep.cases) {
        cases.push_back({{"k", scalar_json(c.k)},
                         {"rho", scalar_json(c.rho)},
                         {"q", exponent_json(c.q)},
                         {"composed_rho", scalar_json(c.composed_rho)},
                         {"analytic", to_string(c.analytic)},
                         {"numerical", to_string(c.numerical)},
                         {"composed_margin", c.composed_margin}});
    }
    return {{"cases", cases}, {"all_members", rep.all_members(true)}};
}

inline json to_json(const InterpolationIndices& idx) {
    return {{"p0", exponent_json(idx.p0())}, {"p1", exponent_json(idx.p1())},
            {"q0", exponent_json(idx.q0())}, {"q1", exponent_json(idx.q1())},
            {"s", scalar_json(idx.s())},     {"regime", to_string(idx.regime())},
            {"p_effective", exponent_json(idx.p_effective())},
            {"q_effective", exponent_json(idx.q_effective())}};
}

inline json to_json(const Diagram& dia) {
    json points = json::array(), arrows = json::array();
    for (const auto& pt : dia.points)
        points.push_back({{"label", pt.label}, {"x", scalar_json(pt.x)}, {"y", scalar_json(pt.y)}});
    for (const auto& a : dia.arrows)
        arrows.push_back({{"label", a.label},
                          {"x1", scalar_json(a.x1)},
                          {"y1", scalar_json(a.y1)},
                          {"x2", scalar_json(a.x2)},
                          {"y2", scalar_json(a.y2)}});
    return {{"n", dia.n},           {"regime", to_string(dia.regime)}, {"d", scalar_json(dia.d)},
            {"gap", scalar_json(dia.gap)}, {"c", scalar_json(dia.c)}, {"points", points},
            {"arrows", arrows}};
}

// Write-temp-then-rename so readers never observe a half-written artifact.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw invalid_input("cannot open output path: " + path);
        out << content;
    }
    fs::rename(tmp, target);
}

} // namespace qcc
