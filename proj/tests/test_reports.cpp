#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qcc/report.hpp"

using namespace qcc;

TEST_SUITE("reports") {

TEST_CASE("scalar serialization keeps exact values visible") {
    CHECK(scalar_json(Scalar(3, 4)) == json("3/4"));
    CHECK(scalar_json(Scalar(5)) == json(5));
    CHECK(scalar_json(Scalar(0.125 + 1e-17)).is_number());
    CHECK(exponent_json(Exponent::infinity()) == json("inf"));
    CHECK(exponent_json(Exponent::from_value(Scalar(4, 3))) == json("4/3"));
}

TEST_CASE("norm estimate serialization carries the documented fields") {
    const auto est = lp_norm(RadialProfile::flat(Scalar(2)), Exponent::from_value(Scalar(2)),
                             Ball::origin(2));
    const json j = to_json(est);
    CHECK(j["value"].is_number());
    CHECK(j["cutoffs"].size() == 11);
    CHECK(j["partials"].size() == 11);
    CHECK(j.contains("log_slope"));
    CHECK(j.contains("r2"));
    CHECK(j.contains("seed"));
    CHECK(j["mesh"].contains("radial_panels"));

    const auto div = lp_norm(RadialProfile::singular(Scalar(2)), Exponent::from_value(Scalar(2)),
                             Ball::origin(2));
    CHECK(to_json(div)["value"] == json("divergent"));
}

TEST_CASE("witness serialization records every inequality with both sides") {
    const auto w = build_witness(WitnessRegime::subcritical, Scalar(1, 2),
                                 Exponent::from_value(Scalar(2)),
                                 Exponent::from_value(Scalar(3, 2)), 2, Scalar(1));
    REQUIRE(w.has_value());
    const json j = to_json(*w);
    CHECK(j["epsilon"] == json("1/12"));
    CHECK(j["all_hold"] == json(true));
    CHECK(j["checks"].size() == 8);
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("lhs"));
        CHECK(c.contains("rhs"));
        CHECK(c["holds"] == json(true));
    }
}

TEST_CASE("diagram rendering embeds metadata and exact endpoints") {
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    const auto dia = composition_diagram(Scalar(1, 2), Exponent::from_value(Scalar(2)), reg);
    REQUIRE(dia.has_value());
    CHECK(dia->gap * dia->c == dia->d);
    const RenderMeta meta{kVersion, "abc123", 99};
    const std::string svg = to_svg(*dia, meta);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("spec_hash=abc123") != std::string::npos);
    CHECK(svg.find("seed=99") != std::string::npos);
    const std::string csv = to_csv(*dia, meta);
    CHECK(csv.find("arrow,composition") != std::string::npos);
    CHECK(csv.find("3/4") != std::string::npos);   // exact target endpoint 1/q
    CHECK(csv.find("seed=99") != std::string::npos);
}

TEST_CASE("fnv-1a spec hash matches the reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hex64(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("atomic write leaves no temp file behind") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qcc_report_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.json";
    atomic_write_file(target.string(), "{\"ok\":true}\n");
    std::ifstream in(target);
    std::string line;
    std::getline(in, line);
    CHECK(line == "{\"ok\":true}");
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));
    fs::remove_all(dir);
}

} // TEST_SUITE
