#include "parhyp/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace parhyp {

void expect_keys(const json& obj, const std::vector<std::string>& allowed,
                 const std::string& context) {
    if (!obj.is_object())
        throw SchemaError(context + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw SchemaError(context + ": unknown key \"" + it.key() + "\"");
    }
}

namespace {

double require_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw SchemaError(ctx + ": missing numeric key \"" + key + "\"");
    return j[key].get<double>();
}

std::string require_string(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError(ctx + ": missing string key \"" + key + "\"");
    return j[key].get<std::string>();
}

TailModel tail_from_json(const json& j, const std::string& ctx) {
    expect_keys(j, {"coef", "rate", "power", "log_power"}, ctx);
    TailModel t;
    t.coef = j.value("coef", 1.0);
    t.rate = j.value("rate", 0.0);
    t.power = j.value("power", 0.0);
    t.log_power = j.value("log_power", 0.0);
    return t;
}

json tail_to_json(const TailModel& t) {
    return json{{"coef", t.coef}, {"rate", t.rate}, {"power", t.power},
                {"log_power", t.log_power}};
}

std::vector<std::pair<double, double>> samples_from_json(const json& j,
                                                         const std::string& ctx) {
    if (j.contains("csv")) return load_table_csv(j["csv"].get<std::string>());
    if (!j.contains("samples") || !j["samples"].is_array())
        throw SchemaError(ctx + ": table needs \"samples\" or \"csv\"");
    std::vector<std::pair<double, double>> out;
    for (const auto& row : j["samples"]) {
        if (!row.is_array() || row.size() != 2)
            throw SchemaError(ctx + ": table samples must be [r, value] pairs");
        out.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return out;
}

} // namespace

json warping_to_json(const WarpingDescriptor& w) {
    switch (w.family()) {
        case WarpingFamily::SpaceForm:
            return json{{"family", "space_form"}, {"b", w.param_b()}};
        case WarpingFamily::PowerTail:
            return json{{"family", "power_tail"}, {"p", w.param_p()},
                        {"r0", w.param_r0()}};
        case WarpingFamily::ExpTail:
            return json{{"family", "exp_tail"}, {"a", w.param_a()},
                        {"q", w.param_q()}};
        case WarpingFamily::Tabulated: {
            json samples = json::array();
            const auto& t = w.table();
            for (std::size_t i = 0; i < t.size(); ++i)
                samples.push_back({t.abscissae()[i], t.ordinates()[i]});
            return json{{"family", "table"}, {"samples", samples},
                        {"tail", tail_to_json(w.declared_tail())}};
        }
    }
    return {};
}

WarpingDescriptor warping_from_json(const json& j, const std::string& ctx) {
    std::string fam = require_string(j, "family", ctx);
    if (fam == "space_form") {
        expect_keys(j, {"family", "b"}, ctx);
        return WarpingDescriptor::space_form(require_number(j, "b", ctx));
    }
    if (fam == "power_tail") {
        expect_keys(j, {"family", "p", "r0"}, ctx);
        return WarpingDescriptor::power_tail(require_number(j, "p", ctx),
                                             require_number(j, "r0", ctx));
    }
    if (fam == "exp_tail") {
        expect_keys(j, {"family", "a", "q"}, ctx);
        return WarpingDescriptor::exp_tail(require_number(j, "a", ctx),
                                           require_number(j, "q", ctx));
    }
    if (fam == "table") {
        expect_keys(j, {"family", "samples", "csv", "tail", "accuracy"}, ctx);
        if (!j.contains("tail"))
            throw SchemaError(ctx + ": tabulated warping requires a declared tail");
        return WarpingDescriptor::tabulated(samples_from_json(j, ctx),
                                            tail_from_json(j["tail"], ctx + ".tail"),
                                            j.value("accuracy", 1e-8));
    }
    throw SchemaError(ctx + ": unknown warping family \"" + fam + "\"");
}

json profile_to_json(const RadialProfile& p) {
    json j;
    j["role"] = p.role() == ProfileRole::HBound ? "h" : "g";
    switch (p.kind()) {
        case ProfileKind::Zero:
            j["kind"] = "zero";
            break;
        case ProfileKind::Constant:
            j["kind"] = "constant";
            j["value"] = p.param_value();
            break;
        case ProfileKind::EtaOfModel:
            j["kind"] = "eta_of_model";
            j["warping"] = warping_to_json(p.model());
            break;
        case ProfileKind::PowerLaw:
            j["kind"] = "power_law";
            j["coefficient"] = p.param_coefficient();
            j["exponent"] = p.param_exponent();
            break;
        case ProfileKind::Tabulated: {
            j["kind"] = "table";
            json samples = json::array();
            const auto& t = p.table();
            for (std::size_t i = 0; i < t.size(); ++i)
                samples.push_back({t.abscissae()[i], t.ordinates()[i]});
            j["samples"] = samples;
            j["tail"] = tail_to_json(p.declared_tail());
            break;
        }
    }
    return j;
}

RadialProfile profile_from_json(const json& j, ProfileRole role,
                                const std::string& ctx) {
    std::string kind = require_string(j, "kind", ctx);
    if (kind == "zero") {
        expect_keys(j, {"kind", "role", "bound"}, ctx);
        if (role == ProfileRole::GBound)
            throw SchemaError(ctx + ": a tangency bound must be positive");
        return RadialProfile::zero();
    }
    if (kind == "constant") {
        expect_keys(j, {"kind", "value", "role", "bound"}, ctx);
        return RadialProfile::constant(require_number(j, "value", ctx), role);
    }
    if (kind == "eta_of_model") {
        expect_keys(j, {"kind", "warping", "role", "bound"}, ctx);
        if (role == ProfileRole::GBound)
            throw SchemaError(ctx + ": eta_of_model is not a valid tangency bound");
        if (!j.contains("warping"))
            throw SchemaError(ctx + ": eta_of_model requires \"warping\"");
        return RadialProfile::eta_of_model(
            warping_from_json(j["warping"], ctx + ".warping"));
    }
    if (kind == "power_law") {
        expect_keys(j, {"kind", "coefficient", "exponent", "role", "bound"}, ctx);
        if (role == ProfileRole::GBound)
            throw SchemaError(ctx + ": power_law is not a valid tangency bound");
        return RadialProfile::power_law(require_number(j, "coefficient", ctx),
                                        require_number(j, "exponent", ctx));
    }
    if (kind == "table") {
        expect_keys(j, {"kind", "samples", "csv", "tail", "accuracy", "role", "bound"}, ctx);
        if (!j.contains("tail"))
            throw SchemaError(ctx + ": tabulated profile requires a declared tail");
        return RadialProfile::tabulated(samples_from_json(j, ctx),
                                        tail_from_json(j["tail"], ctx + ".tail"), role,
                                        j.value("accuracy", 1e-6));
    }
    throw SchemaError(ctx + ": unknown profile kind \"" + kind + "\"");
}

json problem_to_json(const RadialProblem& p) {
    json j;
    j["m"] = p.m;
    j["warping"] = warping_to_json(p.w);
    j["curvature_bound"] = p.curvature == CurvatureBound::Lower   ? "lower"
                           : p.curvature == CurvatureBound::Upper ? "upper"
                                                                  : "both";
    json h = profile_to_json(p.h);
    h["bound"] = p.h_direction == ConvexityBound::Lower   ? "lower"
                 : p.h_direction == ConvexityBound::Upper ? "upper"
                                                          : "equal";
    h.erase("role");
    j["h"] = h;
    if (p.g) {
        json g = profile_to_json(*p.g);
        g.erase("role");
        j["g"] = g;
    }
    j["rho"] = p.rho;
    j["intrinsic"] = p.intrinsic;
    if (p.n_exponent) j["n_exponent"] = *p.n_exponent;
    return j;
}

RadialProblem problem_from_json(const json& j, const std::string& ctx) {
    expect_keys(j,
                {"m", "warping", "curvature_bound", "h", "g", "rho", "intrinsic",
                 "n_exponent"},
                ctx);
    RadialProblem p;
    if (!j.contains("m") || !j["m"].is_number_integer())
        throw SchemaError(ctx + ": missing integer key \"m\"");
    p.m = j["m"].get<int>();
    if (p.m < 2) throw SchemaError(ctx + ": m must be >= 2");
    if (!j.contains("warping"))
        throw SchemaError(ctx + ": missing \"warping\"");
    p.w = warping_from_json(j["warping"], ctx + ".warping");

    std::string curv = j.value("curvature_bound", "lower");
    if (curv == "lower")
        p.curvature = CurvatureBound::Lower;
    else if (curv == "upper")
        p.curvature = CurvatureBound::Upper;
    else if (curv == "both")
        p.curvature = CurvatureBound::Both;
    else
        throw SchemaError(ctx + ": curvature_bound must be lower|upper|both");

    if (j.contains("h")) {
        p.h = profile_from_json(j["h"], ProfileRole::HBound, ctx + ".h");
        std::string dir = j["h"].value("bound", "lower");
        if (dir == "lower")
            p.h_direction = ConvexityBound::Lower;
        else if (dir == "upper")
            p.h_direction = ConvexityBound::Upper;
        else if (dir == "equal")
            p.h_direction = ConvexityBound::Equal;
        else
            throw SchemaError(ctx + ": h.bound must be lower|upper|equal");
    } else {
        p.h = RadialProfile::zero();
    }
    if (j.contains("g"))
        p.g = profile_from_json(j["g"], ProfileRole::GBound, ctx + ".g");

    p.rho = j.value("rho", 1.0);
    if (!(p.rho > 0.0)) throw SchemaError(ctx + ": rho must be positive");
    p.intrinsic = j.value("intrinsic", false);
    if (j.contains("n_exponent")) p.n_exponent = j["n_exponent"].get<int>();
    return p;
}

json tail_class_to_json(const TailClass& tc) {
    json j;
    j["exponential_rate"] = tc.exponential_rate;
    j["power_exponent"] = tc.power_exponent;
    j["log_exponent"] = tc.log_exponent;
    j["certainty"] = tc.certainty == TailCertainty::Exact ? "exact" : "fitted";
    if (tc.certainty == TailCertainty::Fitted) j["residual"] = tc.fit_residual;
    return j;
}

json integral_verdict_to_json(const IntegralVerdict& v) {
    json j;
    j["weight"] = v.weight_label;
    j["outcome"] = to_string(v.outcome);
    if (v.outcome == IntegralOutcome::Finite) {
        j["value"] = v.value;
        j["abs_error"] = v.abs_error;
    }
    if (v.tail) j["tail"] = tail_class_to_json(*v.tail);
    j["lower_bound_on_partial"] = v.lower_bound_on_partial;
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

json verdict_to_json(const TypeVerdict& v) {
    json j;
    j["outcome"] = to_string(v.outcome);
    json cert;
    cert["rule"] = to_string(v.certificate.rule);
    if (v.certificate.balance_class) {
        json bal;
        bal["class"] = to_string(*v.certificate.balance_class);
        bal["grade"] = to_string(*v.certificate.balance_grade);
        if (v.certificate.balance_witness)
            bal["witness"] = *v.certificate.balance_witness;
        cert["balance"] = bal;
    }
    if (v.certificate.integral_plain)
        cert["integral_lambda"] = integral_verdict_to_json(*v.certificate.integral_plain);
    if (v.certificate.integral_tangency)
        cert["integral_lambda_g"] =
            integral_verdict_to_json(*v.certificate.integral_tangency);
    json checks = json::array();
    for (const auto& c : v.certificate.checks)
        checks.push_back(json{{"name", c.name}, {"status", c.status},
                              {"detail", c.detail}});
    cert["hypotheses"] = checks;
    j["certificate"] = cert;
    return j;
}

json capacity_to_json(const CapacityEstimate& c) {
    return json{{"value", c.value}, {"abs_error", c.abs_error}, {"method", c.method}};
}

json hitting_to_json(const HittingEstimate& h) {
    return json{{"p_hat", h.p_hat}, {"std_err", h.std_err}, {"n_paths", h.n_paths},
                {"step_limit_hits", h.step_limit_hits}};
}

std::vector<std::pair<double, double>> load_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open CSV file: " + path);
    std::vector<std::pair<double, double>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ss(line);
        double r, v;
        if (!(ss >> r >> v)) {
            if (lineno == 1) continue; // header row
            throw IoError(path + ": malformed row at line " + std::to_string(lineno));
        }
        out.emplace_back(r, v);
    }
    if (out.size() < 4) throw IoError(path + ": need at least 4 rows");
    return out;
}

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

namespace {

RadialProblem cone_problem(double half_angle) {
    auto [h, g] = cone_profile(half_angle);
    RadialProblem p;
    p.m = 2;
    p.w = WarpingDescriptor::space_form(0.0);
    p.curvature = CurvatureBound::Both; // flat ambient space
    p.h = h;
    p.h_direction = ConvexityBound::Lower; // C = 0 >= 0
    p.g = g;
    p.rho = 1.0;
    return p;
}

RadialProblem paraboloid_problem(double a) {
    auto [h, g] = paraboloid_profile(a);
    RadialProblem p;
    p.m = 2;
    p.w = WarpingDescriptor::space_form(0.0);
    p.curvature = CurvatureBound::Both;
    p.h = h;
    p.h_direction = ConvexityBound::Lower; // C >= h, tight along the surface
    p.g = g;
    p.rho = 1.0;
    return p;
}

RadialProblem cmc_h3_problem(double H) {
    RadialProblem p;
    p.m = 2;
    p.w = WarpingDescriptor::space_form(-1.0);
    p.curvature = CurvatureBound::Both; // ambient is the model H^3 itself
    p.h = RadialProfile::constant(H, ProfileRole::HBound);
    p.h_direction = ConvexityBound::Upper; // |C| <= |H_S| = H
    p.rho = 1.0;
    return p;
}

} // namespace

std::vector<std::string> catalog_names() {
    return {"cone:<half angle in (0, pi/2)>", "paraboloid:<a>", "cmc-h3:<H>",
            "schwarz-p"};
}

CatalogEntry catalog_entry(const std::string& name) {
    auto parse_param = [&](const std::string& prefix) -> std::optional<double> {
        if (name.rfind(prefix + ":", 0) != 0) return std::nullopt;
        try {
            return std::stod(name.substr(prefix.size() + 1));
        } catch (const std::exception&) {
            throw UnknownExampleError("catalog: bad parameter in \"" + name + "\"");
        }
    };

    CatalogEntry e;
    e.name = name;
    if (auto angle = parse_param("cone")) {
        e.description =
            "Cone of revolution in R^3 with vertex at the pole, half angle " +
            format_double(*angle) +
            ". The rulings pass through the pole, so the tangency is exactly 1 "
            "and the radial convexity C vanishes: h = 0 (as a lower bound on C) "
            "and g = 1.";
        e.has_problem = true;
        e.problem = cone_problem(*angle);
        return e;
    }
    if (auto a = parse_param("paraboloid")) {
        e.description =
            "Paraboloid of revolution z = a s^2 in R^3, a = " + format_double(*a) +
            ", pole at the vertex. h and g are tabulated from the closed forms "
            "along the profile curve: C ~ 1/(4r) and g -> 1 at both ends. The "
            "sign convention is C(x) = -<grad r, H_S>, so h bounds the inward "
            "radial component of the mean curvature, not the scalar mean curvature.";
        e.has_problem = true;
        e.problem = paraboloid_problem(*a);
        return e;
    }
    if (auto H = parse_param("cmc-h3")) {
        e.description =
            "Surface of constant mean curvature H = " + format_double(*H) +
            " in hyperbolic 3-space (b = -1). h = H as an upper bound on "
            "C(x) = -<grad r, H_S> <= |H_S| = H. For H < 1/2 the weight integral "
            "converges and the surface is hyperbolic; at H = 1/2 the weight tends "
            "to a positive constant and the criterion is silent.";
        e.has_problem = true;
        e.problem = cmc_h3_problem(*H);
        return e;
    }
    if (name == "schwarz-p") {
        e.description =
            "Schwarz P minimal surface (triply periodic, hyperbolic). Centered "
            "at a unit cell, the ambient radial gradient is orthogonal to the "
            "surface at the points where three surface-generating lines meet, "
            "so no positive radial lower bound g on the tangency exists and the "
            "tangency route does not apply. Documented for contrast; no profile "
            "is computable.";
        e.has_problem = false;
        return e;
    }
    throw UnknownExampleError("catalog: unknown example \"" + name +
                              "\" (known: cone:<angle>, paraboloid:<a>, cmc-h3:<H>, schwarz-p)");
}

} // namespace parhyp
