// qcc — exponent calculus, diagrams, Jacobian integral tables, sharpness
// witnesses and numerical norm estimation for compositions with radial
// quasiconformal stretches.
//
// Exit codes: 0 ok, 1 invalid input, 2 theorem rejection / infeasible,
// 3 acceptance failure.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "qcc/acceptance.hpp"
#include "qcc/report.hpp"

namespace {

using nlohmann::json;
using namespace qcc;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRejection = 2;
constexpr int kExitAcceptance = 3;

struct Ctx {
    std::string spec_path;
    std::string out_path;
    std::string format;   // json | csv | svg (commands restrict further)
    std::uint64_t seed = kDefaultSeed;
    bool seed_from_flag = false;
    double tolerance = 1e-6;
    json params = json::object();
    std::string hash_text;   // canonical text hashed into every artifact
};

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw invalid_input("unknown key \"" + it.key() + "\" in " + where);
}

// Loads and strictly validates the run spec, merging its params under the
// command-line flags (flags win).
void load_runspec(Ctx& ctx, const std::string& command) {
    if (ctx.spec_path.empty()) {
        ctx.hash_text = json({{"command", command}, {"params", ctx.params}}).dump();
        return;
    }
    std::ifstream in(ctx.spec_path);
    if (!in) throw invalid_input("cannot read spec file: " + ctx.spec_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    ctx.hash_text = buffer.str();
    json spec;
    try {
        spec = json::parse(ctx.hash_text);
    } catch (const json::parse_error& err) {
        throw invalid_input(std::string("spec file is not valid JSON: ") + err.what());
    }
    if (!spec.is_object()) throw invalid_input("run spec must be a JSON object");
    reject_unknown_keys(spec, {"command", "params", "output", "seed"}, "run spec");
    if (spec.contains("command") && spec["command"] != command)
        throw invalid_input("run spec command \"" + spec["command"].get<std::string>() +
                            "\" does not match subcommand \"" + command + "\"");
    if (spec.contains("seed")) {
        if (!spec["seed"].is_number_unsigned() && !spec["seed"].is_number_integer())
            throw invalid_input("seed must be an integer");
        if (!ctx.seed_from_flag) ctx.seed = spec["seed"].get<std::uint64_t>();
    }
    if (spec.contains("output")) {
        const json& out = spec["output"];
        reject_unknown_keys(out, {"path", "format"}, "output");
        if (out.contains("path") && ctx.out_path.empty())
            ctx.out_path = out["path"].get<std::string>();
        if (out.contains("format") && ctx.format.empty())
            ctx.format = out["format"].get<std::string>();
    }
    if (spec.contains("params")) {
        if (!spec["params"].is_object()) throw invalid_input("params must be an object");
        for (auto it = spec["params"].begin(); it != spec["params"].end(); ++it)
            if (!ctx.params.contains(it.key())) ctx.params[it.key()] = it.value();
    }
}

Scalar scalar_from_json(const json& v, const std::string& key) {
    if (v.is_string()) return Scalar::parse(v.get<std::string>());
    if (v.is_number_integer()) return Scalar(Rat(v.get<std::int64_t>()));
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (const auto r = Rat::rationalize(d)) return Scalar(*r);
        return Scalar(d);
    }
    throw invalid_input("parameter \"" + key + "\" must be a number or an exact \"n/d\" string");
}

Scalar require_scalar(const json& params, const std::string& key) {
    if (!params.contains(key)) throw invalid_input("missing parameter \"" + key + "\"");
    return scalar_from_json(params[key], key);
}

std::optional<Scalar> optional_scalar(const json& params, const std::string& key) {
    if (!params.contains(key)) return std::nullopt;
    return scalar_from_json(params[key], key);
}

Exponent require_exponent(const json& params, const std::string& key) {
    if (params.contains(key) && params[key].is_string() &&
        (params[key] == "inf" || params[key] == "infinity"))
        return Exponent::infinity();
    return Exponent::from_value(require_scalar(params, key));
}

int require_dimension(const json& params) {
    if (!params.contains("n")) return 2;
    if (!params["n"].is_number_integer()) throw invalid_input("dimension n must be an integer");
    return params["n"].get<int>();
}

RenderMeta meta_of(const Ctx& ctx) {
    return {kVersion, hex64(fnv1a64(ctx.hash_text)), ctx.seed};
}

void attach_meta(json& j, const Ctx& ctx) {
    j["artifact_version"] = kVersion;
    j["spec_hash"] = hex64(fnv1a64(ctx.hash_text));
    j["seed"] = ctx.seed;
}

void emit(const Ctx& ctx, const std::string& content) {
    if (ctx.out_path.empty())
        std::cout << content;
    else
        atomic_write_file(ctx.out_path, content);
}

void emit_json(const Ctx& ctx, json j) {
    attach_meta(j, ctx);
    emit(ctx, j.dump(2) + "\n");
}

std::string format_or(const Ctx& ctx, const std::string& fallback) {
    return ctx.format.empty() ? fallback : ctx.format;
}

QCRegularity regularity_from(const json& params, int n) {
    const auto a = optional_scalar(params, "a").value_or(Scalar(2));
    const auto b = optional_scalar(params, "b").value_or(Scalar(1));
    const auto ca = optional_scalar(params, "C_a").value_or(Scalar(2));
    const auto cb = optional_scalar(params, "C_b").value_or(Scalar(2));
    return QCRegularity(n, a, b, ca, cb);
}

RadialProfile profile_from(const json& params) {
    if (!params.contains("profile")) throw invalid_input("missing parameter \"profile\"");
    const json& prof = params["profile"];
    reject_unknown_keys(prof, {"kind", "rho", "pieces"}, "profile");
    const std::string kind = prof.value("kind", "singular_power");
    if (kind == "singular_power") return RadialProfile::singular(require_scalar(prof, "rho"));
    if (kind == "flat_power") return RadialProfile::flat(require_scalar(prof, "rho"));
    if (kind == "piecewise_power") {
        std::vector<PowerPiece> pieces;
        for (const json& pc : prof.at("pieces")) {
            reject_unknown_keys(pc, {"lo", "hi", "coeff", "exponent"}, "profile piece");
            pieces.push_back({pc.value("lo", 0.0), pc.value("hi", 1.0), pc.value("coeff", 1.0),
                              pc.value("exponent", 0.0)});
        }
        return RadialProfile::piecewise(std::move(pieces));
    }
    throw invalid_input("unknown profile kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// exponents: target exponent table, general or planar.
// ---------------------------------------------------------------------------
int cmd_exponents(Ctx& ctx) {
    load_runspec(ctx, "exponents");
    reject_unknown_keys(ctx.params, {"s", "p", "n", "a", "b", "C_a", "C_b", "K"}, "params");
    const Scalar s = require_scalar(ctx.params, "s");
    const Exponent p = require_exponent(ctx.params, "p");
    json row;
    bool rejected = false;

    if (ctx.params.contains("K")) {
        const Scalar K = require_scalar(ctx.params, "K");
        const auto bounds = planar_power_bounds(K);
        row["K"] = scalar_json(K);
        row["a_K"] = bounds.unbounded() ? json("unbounded") : scalar_json(*bounds.a_sup);
        row["b_K"] = bounds.unbounded() ? json("unbounded") : scalar_json(*bounds.b_sup);
        const Regime regime = regime_of(s, p, 2);
        row["regime"] = to_string(regime);
        const auto bound = planar_target_bound(s, p, K);
        row["inv_q_bound"] = scalar_json(bound.inv_q_bound);
        row["bound_strict"] = bound.strict;
        if (regime == Regime::subcritical) {
            const auto beta = smoothness_loss_planar(s, p, K);
            row["beta"] = beta ? scalar_json(*beta) : json("rejected");
        }
        rejected = bound.inv_q_bound >= Scalar(1);
    } else {
        const int n = require_dimension(ctx.params);
        const QCRegularity reg = regularity_from(ctx.params, n);
        row["n"] = n;
        row["regime"] = to_string(regime_of(s, p, reg.n));
        const auto geo = gap_geometry(s, p, reg);
        if (geo) {
            const auto q = target_exponent(s, p, reg);
            row["q"] = exponent_json(*q);
            row["inv_q"] = scalar_json(q->reciprocal());
            row["d"] = scalar_json(geo->d);
            row["gap"] = scalar_json(geo->gap);
            row["c"] = scalar_json(geo->c);
        } else {
            row["q"] = "rejected";
            row["rejection"] = "computed exponent does not satisfy q > 1";
            rejected = true;
        }
    }
    row["s"] = scalar_json(s);
    row["p"] = exponent_json(p);

    const std::string fmt = format_or(ctx, "json");
    if (fmt == "csv") {
        std::string csv = "# qcc_version=" + std::string(kVersion) +
                          " spec_hash=" + hex64(fnv1a64(ctx.hash_text)) +
                          " seed=" + std::to_string(ctx.seed) + "\n";
        std::string header, values;
        for (auto it = row.begin(); it != row.end(); ++it) {
            header += (header.empty() ? "" : ",") + it.key();
            const json& v = it.value();
            values += (values.empty() ? "" : ",") +
                      (v.is_string() ? v.get<std::string>() : v.dump());
        }
        emit(ctx, csv + header + "\n" + values + "\n");
    } else if (fmt == "json") {
        emit_json(ctx, row);
    } else {
        throw invalid_input("exponents supports json or csv output");
    }
    return rejected ? kExitRejection : kExitOk;
}

// ---------------------------------------------------------------------------
// diagram: the action arrow in the (1/p, s) plane, optionally with the
// interpolation index layout.
// ---------------------------------------------------------------------------
int cmd_diagram(Ctx& ctx) {
    load_runspec(ctx, "diagram");
    reject_unknown_keys(ctx.params,
                        {"s", "p", "n", "a", "b", "C_a", "C_b", "interpolation", "eps0"}, "params");
    const Scalar s = require_scalar(ctx.params, "s");
    const Exponent p = require_exponent(ctx.params, "p");
    const int n = require_dimension(ctx.params);
    const QCRegularity reg = regularity_from(ctx.params, n);
    const bool with_indices = ctx.params.value("interpolation", false);
    std::optional<double> eps0;
    if (ctx.params.contains("eps0")) eps0 = ctx.params["eps0"].get<double>();

    const auto dia = with_indices ? interpolation_diagram(s, p, reg, eps0)
                                  : composition_diagram(s, p, reg);
    if (!dia) {
        json j{{"rejection", "computed exponent does not satisfy q > 1"}};
        emit_json(ctx, j);
        return kExitRejection;
    }
    const std::string fmt = format_or(ctx, "svg");
    if (fmt == "svg")
        emit(ctx, to_svg(*dia, meta_of(ctx)));
    else if (fmt == "csv")
        emit(ctx, to_csv(*dia, meta_of(ctx)));
    else if (fmt == "json")
        emit_json(ctx, to_json(*dia));
    else
        throw invalid_input("diagram supports svg, csv or json output");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// jacobian: closed-form power integral table with quadrature cross-check.
// ---------------------------------------------------------------------------
int cmd_jacobian(Ctx& ctx) {
    load_runspec(ctx, "jacobian");
    reject_unknown_keys(ctx.params, {"k_grid", "t_grid", "n_grid", "radius"}, "params");
    std::vector<Scalar> ks, ts;
    std::vector<int> ns = {2, 3};
    if (ctx.params.contains("k_grid"))
        for (const json& v : ctx.params["k_grid"]) ks.push_back(scalar_from_json(v, "k_grid"));
    else
        ks = {Scalar(1, 2), Scalar(1), Scalar(2)};
    if (ctx.params.contains("t_grid"))
        for (const json& v : ctx.params["t_grid"]) ts.push_back(scalar_from_json(v, "t_grid"));
    else
        ts = {Scalar(-1, 2), Scalar(1), Scalar(2)};
    if (ctx.params.contains("n_grid")) {
        ns.clear();
        for (const json& v : ctx.params["n_grid"]) ns.push_back(v.get<int>());
    }
    const double radius = ctx.params.value("radius", 1.0);

    json rows = json::array();
    std::string csv = "# qcc_version=" + std::string(kVersion) +
                      " spec_hash=" + hex64(fnv1a64(ctx.hash_text)) +
                      " seed=" + std::to_string(ctx.seed) + "\n";
    csv += "k,t,n,divergent,closed_form,quadrature,rel_error\n";
    for (const auto& k : ks) {
        for (const auto& t : ts) {
            for (int n : ns) {
                const RadialStretch map(k, n);
                json row{{"k", scalar_json(k)}, {"t", scalar_json(t)}, {"n", n}};
                const auto closed = jacobian_power_integral(map, Ball::origin(n, radius), t);
                row["divergent"] = closed.divergent;
                double rel = 0.0;
                if (!closed.divergent) {
                    const auto quadr =
                        jacobian_power_integral_quadrature(map, radius, t.to_double());
                    rel = std::abs(closed.value - quadr.value) /
                          std::max(std::abs(closed.value), 1e-300);
                    row["closed_form"] = closed.value;
                    row["quadrature"] = quadr.value;
                    row["rel_error"] = rel;
                    row["matches"] = rel <= ctx.tolerance;
                }
                rows.push_back(row);
                csv += k.str() + "," + t.str() + "," + std::to_string(n) + "," +
                       (closed.divergent ? "true" : "false") + ",";
                if (closed.divergent)
                    csv += ",,\n";
                else {
                    char buf[96];
                    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.3g\n", closed.value,
                                  row["quadrature"].get<double>(), rel);
                    csv += buf;
                }
            }
        }
    }
    const std::string fmt = format_or(ctx, "json");
    if (fmt == "csv")
        emit(ctx, csv);
    else if (fmt == "json")
        emit_json(ctx, json{{"rows", rows}});
    else
        throw invalid_input("jacobian supports json or csv output");
    return kExitOk;
}

WitnessRegime witness_regime_from(const json& params) {
    const std::string regime = params.value("regime", "subcritical");
    if (regime == "subcritical") return WitnessRegime::subcritical;
    if (regime == "supercritical") return WitnessRegime::supercritical;
    if (regime == "critical")
        throw invalid_input(
            "the critical regime is a self-map; there is no sharpness construction to build");
    throw invalid_input("unknown regime \"" + regime + "\"");
}

// ---------------------------------------------------------------------------
// witness / verify: sharpness construction, optionally with numerics.
// ---------------------------------------------------------------------------
int cmd_witness(Ctx& ctx, bool with_numerics) {
    load_runspec(ctx, with_numerics ? "verify" : "witness");
    reject_unknown_keys(ctx.params,
                        {"regime", "s", "p", "q_prime", "n", "power", "slope_threshold"}, "params");
    const WitnessRegime regime = witness_regime_from(ctx.params);
    const Scalar s = require_scalar(ctx.params, "s");
    const Exponent p = require_exponent(ctx.params, "p");
    const Exponent q_prime = require_exponent(ctx.params, "q_prime");
    const int n = require_dimension(ctx.params);
    const Scalar power = require_scalar(ctx.params, "power");

    const auto witness = build_witness(regime, s, p, q_prime, n, power);
    if (!witness) {
        json j{{"infeasible", "q' does not strictly beat the theorem target (epsilon <= 0)"}};
        emit_json(ctx, j);
        return kExitRejection;
    }
    if (!with_numerics) {
        emit_json(ctx, json{{"witness", to_json(*witness)}});
        return kExitOk;
    }
    ClassifierOptions opts;
    opts.slope_threshold = ctx.params.value("slope_threshold", 0.05);
    const auto report = verify_witness(*witness, opts, ctx.seed);
    emit_json(ctx, to_json(report));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// norms: numerical seminorm estimation plus membership classification.
// ---------------------------------------------------------------------------
int cmd_norms(Ctx& ctx) {
    load_runspec(ctx, "norms");
    reject_unknown_keys(ctx.params,
                        {"profile", "s", "p", "n", "radius", "estimator", "slope_threshold"},
                        "params");
    const RadialProfile prof = profile_from(ctx.params);
    const Scalar s = require_scalar(ctx.params, "s");
    const Exponent p = require_exponent(ctx.params, "p");
    const int n = require_dimension(ctx.params);
    const double radius = ctx.params.value("radius", 1.0);
    const std::string estimator = ctx.params.value("estimator", "gagliardo_double_integral");
    EstimatorKind kind;
    if (estimator == "gagliardo_double_integral")
        kind = EstimatorKind::gagliardo_double_integral;
    else if (estimator == "modulus_of_smoothness")
        kind = EstimatorKind::modulus_of_smoothness;
    else
        throw invalid_input("unknown estimator \"" + estimator + "\"");
    const FractionalNormSpec spec(s, p, n, Ball::origin(n, radius), kind);
    const auto estimate = fractional_seminorm(prof, spec, ctx.seed);
    ClassifierOptions opts;
    opts.slope_threshold = ctx.params.value("slope_threshold", 0.05);
    json j{{"profile", prof.str()},
           {"s", scalar_json(s)},
           {"p", exponent_json(p)},
           {"n", n},
           {"estimator", estimator},
           {"estimate", to_json(estimate)},
           {"verdict", to_string(classify_from_estimate(estimate, opts))}};
    if (prof.kind() != ProfileKind::piecewise_power)
        j["analytic"] = to_string(analytic_membership(prof, s, p, n));
    emit_json(ctx, j);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// suite: the acceptance criteria, one pass/fail line each.
// ---------------------------------------------------------------------------
int cmd_suite(Ctx& ctx) {
    load_runspec(ctx, "suite");
    reject_unknown_keys(ctx.params, {"criteria", "slope_threshold", "threads"}, "params");
    acceptance::Options options;
    options.seed = ctx.seed;
    options.slope_threshold = ctx.params.value("slope_threshold", 0.05);
    options.threads = ctx.params.value("threads", 0);
    if (ctx.params.contains("criteria")) {
        options.criteria.clear();
        for (const json& v : ctx.params["criteria"]) options.criteria.push_back(v.get<int>());
    }
    const auto results = acceptance::run(options);
    acceptance::print(results, std::cout);
    json rows = json::array();
    for (const auto& r : results)
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"detail", r.detail}});
    if (!ctx.out_path.empty()) {
        json j{{"criteria", rows},
               {"all_pass", acceptance::all_pass(results)},
               {"slope_threshold", options.slope_threshold}};
        emit_json(ctx, j);
    }
    return acceptance::all_pass(results) ? kExitOk : kExitAcceptance;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"composition-operator exponent calculus and sharpness toolkit"};
    app.require_subcommand(1);

    Ctx ctx;
    app.add_option("--spec", ctx.spec_path, "JSON run spec (strict keys)");
    app.add_option("--out", ctx.out_path, "output path (written atomically; stdout if omitted)");
    app.add_option("--format", ctx.format, "output format: json, csv or svg");
    auto* seed_opt =
        app.add_option("--seed", ctx.seed, "seed for stochastic estimators (recorded in outputs)");
    app.add_option("--tolerance", ctx.tolerance, "cross-check tolerance for tables");

    // inline parameter conveniences; everything can also come from --spec
    std::map<std::string, std::string> inline_params;
    for (const char* key : {"s", "p", "q_prime", "n", "a", "b", "K", "power", "regime", "rho",
                            "kind", "estimator"}) {
        // stored as strings and converted like spec params
        app.add_option("--" + std::string(key), inline_params[key], "parameter " + std::string(key))
            ->group("Parameters");
    }
    bool interpolation = false;
    app.add_flag("--interpolation", interpolation, "diagram: include interpolation indices")
        ->group("Parameters");

    auto* c_exponents = app.add_subcommand("exponents", "target exponent table");
    auto* c_diagram = app.add_subcommand("diagram", "smoothness-integrability diagram");
    auto* c_jacobian = app.add_subcommand("jacobian", "Jacobian power integral table");
    auto* c_witness = app.add_subcommand("witness", "sharpness witness construction");
    auto* c_verify = app.add_subcommand("verify", "witness construction plus numerics");
    auto* c_norms = app.add_subcommand("norms", "numerical seminorm estimation");
    auto* c_suite = app.add_subcommand("suite", "run the acceptance criteria");
    for (auto* sub : {c_exponents, c_diagram, c_jacobian, c_witness, c_verify, c_norms, c_suite})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalid;
    }

    try {
        ctx.seed_from_flag = seed_opt->count() > 0;
        for (const auto& [key, value] : inline_params) {
            if (value.empty()) continue;
            if (key == "n")
                ctx.params[key] = std::stoi(value);
            else if (key == "regime" || key == "estimator" || key == "kind")
                ctx.params[key] = value;
            else if (key == "rho")
                ctx.params["profile"] = {{"kind", ctx.params.value("kind", "singular_power")},
                                         {"rho", value}};
            else
                ctx.params[key] = value;
        }
        if (ctx.params.contains("kind") && ctx.params.contains("profile")) {
            ctx.params["profile"]["kind"] = ctx.params["kind"];
            ctx.params.erase("kind");
        }
        if (interpolation) ctx.params["interpolation"] = true;

        if (c_exponents->parsed()) return cmd_exponents(ctx);
        if (c_diagram->parsed()) return cmd_diagram(ctx);
        if (c_jacobian->parsed()) return cmd_jacobian(ctx);
        if (c_witness->parsed()) return cmd_witness(ctx, false);
        if (c_verify->parsed()) return cmd_witness(ctx, true);
        if (c_norms->parsed()) return cmd_norms(ctx);
        if (c_suite->parsed()) return cmd_suite(ctx);
        return kExitInvalid;
    } catch (const invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
