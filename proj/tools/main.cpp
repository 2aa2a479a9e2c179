#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "parhyp/serialization.hpp"

namespace {

using namespace parhyp;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("config parse error: ") + e.what());
    }
}

void emit(const json& j, const std::string& out_path, const std::string& summary) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        if (!os) throw IoError("cannot write " + out_path);
        os << text;
        std::cout << summary << "\n";
    }
}

void emit_csv(const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows,
              const std::string& out_path, const std::string& summary) {
    if (out_path.empty()) {
        write_csv(std::cout, header, rows);
    } else {
        std::ofstream os(out_path);
        if (!os) throw IoError("cannot write " + out_path);
        write_csv(os, header, rows);
        std::cout << summary << "\n";
    }
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    double tolerance = 1e-10;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

std::string hypothesis_table(const TypeVerdict& v) {
    std::ostringstream os;
    os << "classify: " << to_string(v.outcome) << " via "
       << to_string(v.certificate.rule) << "\n";
    if (v.certificate.balance_class)
        os << "  balance: " << to_string(*v.certificate.balance_class) << " ("
           << to_string(*v.certificate.balance_grade) << ")\n";
    auto integral_line = [&](const char* name, const IntegralVerdict& iv) {
        os << "  " << name << ": " << to_string(iv.outcome);
        if (iv.outcome == IntegralOutcome::Finite)
            os << " = " << format_double(iv.value) << " +/- "
               << format_double(iv.abs_error);
        os << "\n";
    };
    if (v.certificate.integral_plain)
        integral_line("int lambda", *v.certificate.integral_plain);
    if (v.certificate.integral_tangency)
        integral_line("int lambda_g", *v.certificate.integral_tangency);
    for (const auto& c : v.certificate.checks) {
        os << "  [" << c.status << "] " << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    std::string text = os.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
}

int run_classify(const CommonOpts& opts) {
    json cfg = load_config(opts.config_path);
    expect_keys(cfg, {"problem"}, "config");
    if (!cfg.contains("problem")) throw SchemaError("config: missing \"problem\"");
    RadialProblem p = problem_from_json(cfg["problem"], "problem");
    TypeVerdict v = classify_submanifold(p, opts.tolerance);
    emit(verdict_to_json(v), opts.out_path, hypothesis_table(v));
    return v.outcome == Outcome::Inconclusive ? kExitInconclusive : kExitOk;
}

AnnulusSpec annulus_from_problem(const RadialProblem& p, double R) {
    AnnulusSpec spec;
    spec.m = p.m;
    spec.w = p.w;
    spec.h = p.h;
    spec.g = p.g;
    spec.rho = p.rho;
    spec.R = R;
    return spec;
}

int run_capacity(const CommonOpts& opts) {
    json cfg = load_config(opts.config_path);
    expect_keys(cfg, {"problem", "capacity"}, "config");
    if (!cfg.contains("problem")) throw SchemaError("config: missing \"problem\"");
    RadialProblem p = problem_from_json(cfg["problem"], "problem");

    json csec = cfg.value("capacity", json::object());
    expect_keys(csec, {"R", "weight_csv", "weight_points"}, "capacity");
    if (csec.contains("R")) {
        AnnulusSpec spec = annulus_from_problem(p, csec["R"].get<double>());
        if (csec.contains("weight_csv")) {
            // Two-column (r, Lambda_g(r)) series for plotting.
            auto w = annulus_weight(spec, opts.tolerance);
            auto grid = log_grid(spec.rho, spec.R, csec.value("weight_points", 129));
            std::vector<std::vector<double>> rows;
            rows.reserve(grid.size());
            for (double r : grid) rows.push_back({r, w->value(r)});
            std::ofstream os(csec["weight_csv"].get<std::string>());
            if (!os) throw IoError("cannot write weight CSV");
            write_csv(os, {"r", "lambda"}, rows);
        }
        CapacityEstimate cap = drifted_capacity(spec, opts.tolerance);
        emit(capacity_to_json(cap), opts.out_path,
             "capacity: " + format_double(cap.value));
        return kExitOk;
    }
    AnnulusSpec spec = annulus_from_problem(p, 2.0 * p.rho);
    CapacityLimit lim = capacity_limit(spec, opts.tolerance);
    json j;
    j["integral"] = integral_verdict_to_json(lim.integral);
    if (lim.capacity) j["capacity"] = capacity_to_json(*lim.capacity);
    emit(j, opts.out_path,
         lim.capacity ? "capacity limit: " + format_double(lim.capacity->value)
                      : "capacity limit: inconclusive");
    return lim.capacity ? kExitOk : kExitInconclusive;
}

int run_potential(const CommonOpts& opts) {
    json cfg = load_config(opts.config_path);
    expect_keys(cfg, {"problem", "potential"}, "config");
    if (!cfg.contains("problem") || !cfg.contains("potential"))
        throw SchemaError("config: potential needs \"problem\" and \"potential\"");
    RadialProblem p = problem_from_json(cfg["problem"], "problem");

    json psec = cfg["potential"];
    expect_keys(psec, {"R", "method", "nodes", "r_values"}, "potential");
    if (!psec.contains("R")) throw SchemaError("potential: missing \"R\"");
    AnnulusSpec spec = annulus_from_problem(p, psec["R"].get<double>());
    std::string method = psec.value("method", "closed_form");

    PotentialSolution sol;
    if (method == "closed_form") {
        std::vector<double> grid;
        if (psec.contains("r_values")) {
            for (const auto& r : psec["r_values"]) grid.push_back(r.get<double>());
        } else {
            grid = log_grid(spec.rho, spec.R, psec.value("nodes", 129));
        }
        sol = potential_closed_form_solution(spec, grid, opts.tolerance);
    } else if (method == "bvp") {
        sol = potential_bvp(spec, psec.value("nodes", 4096));
    } else {
        throw SchemaError("potential: method must be closed_form|bvp");
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(sol.grid.size());
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        rows.push_back({sol.grid[i], sol.values[i]});
    emit_csv({"r", "psi"}, rows, opts.out_path,
             "potential: " + std::to_string(rows.size()) + " rows (" + method + ")");
    return kExitOk;
}

int run_simulate(const CommonOpts& opts) {
    json cfg = load_config(opts.config_path);
    expect_keys(cfg, {"problem", "simulate"}, "config");
    if (!cfg.contains("problem") || !cfg.contains("simulate"))
        throw SchemaError("config: simulate needs \"problem\" and \"simulate\"");
    RadialProblem p = problem_from_json(cfg["problem"], "problem");

    json ssec = cfg["simulate"];
    expect_keys(ssec, {"r0", "R", "n_paths", "dt_max", "seed", "exit_log", "max_steps"},
                "simulate");
    SimConfig c;
    c.rho = p.rho;
    if (!ssec.contains("R") || !ssec.contains("r0"))
        throw SchemaError("simulate: missing \"R\" or \"r0\"");
    c.R = ssec["R"].get<double>();
    c.r0 = ssec["r0"].get<double>();
    c.n_paths = ssec.value("n_paths", 10000L);
    c.dt_max = ssec.value("dt_max", 1e-3);
    c.seed = ssec.value("seed", 0UL);
    if (opts.seed_set) c.seed = opts.seed;
    c.threads = opts.threads;
    if (ssec.contains("max_steps")) c.max_steps_per_path = ssec["max_steps"].get<long>();

    // Drift of the comparison operator: M/g^2 - eta_w.
    BalanceReport M = balance(p.m, p.w, p.h);
    std::optional<RadialProfile> g = p.g;
    WarpingDescriptor w = p.w;
    DiffusionSpec d{[M, g, w](double r) {
        double v = M(r);
        if (g) {
            double gv = g->value(r);
            v /= gv * gv;
        }
        return v - w.eta(r);
    }};

    std::vector<PathExit> exits;
    bool want_log = ssec.contains("exit_log");
    HittingEstimate est = simulate_hitting(d, c, want_log ? &exits : nullptr);
    if (want_log) {
        std::ofstream os(ssec["exit_log"].get<std::string>());
        if (!os) throw IoError("cannot write exit log");
        std::vector<std::vector<double>> rows;
        rows.reserve(exits.size());
        for (const auto& e : exits)
            rows.push_back({static_cast<double>(e.path), static_cast<double>(e.side),
                            e.t_exit, static_cast<double>(e.steps)});
        write_csv(os, {"path", "side", "t_exit", "steps"}, rows);
    }
    emit(hitting_to_json(est), opts.out_path,
         "simulate: p_hat = " + format_double(est.p_hat));
    return kExitOk;
}

int run_network(const CommonOpts& opts) {
    json cfg = load_config(opts.config_path);
    expect_keys(cfg, {"problem", "network"}, "config");
    if (!cfg.contains("problem") || !cfg.contains("network"))
        throw SchemaError("config: network needs \"problem\" and \"network\"");
    RadialProblem p = problem_from_json(cfg["problem"], "problem");

    json nsec = cfg["network"];
    expect_keys(nsec, {"R", "K", "A", "schedule", "export_edges"}, "network");
    if (!nsec.contains("R")) throw SchemaError("network: missing \"R\"");
    double R = nsec["R"].get<double>();

    std::vector<std::pair<int, int>> schedule;
    if (nsec.contains("schedule")) {
        for (const auto& item : nsec["schedule"]) {
            if (!item.is_array() || item.size() != 2)
                throw SchemaError("network: schedule entries must be [K, A]");
            schedule.emplace_back(item[0].get<int>(), item[1].get<int>());
        }
    } else {
        schedule.emplace_back(nsec.value("K", 64), nsec.value("A", 64));
    }

    if (nsec.contains("export_edges")) {
        auto [K, A] = schedule.back();
        RadialNetwork net = build_network(p.m, p.w, p.rho, R, K, A);
        std::ofstream os(nsec["export_edges"].get<std::string>());
        if (!os) throw IoError("cannot write edge list");
        export_edge_list(net, os);
    }

    auto records = convergence_study(p.m, p.w, p.rho, R, schedule, opts.tolerance);
    AnnulusSpec spec = annulus_from_problem(p, R);
    spec.h = RadialProfile::zero();
    spec.g.reset();
    CapacityEstimate reference = drifted_capacity(spec, opts.tolerance);

    json j;
    j["reference_capacity"] = capacity_to_json(reference);
    json recs = json::array();
    for (const auto& r : records)
        recs.push_back(json{{"K", r.K}, {"A", r.A}, {"conductance", r.conductance},
                            {"relative_gap", r.relative_gap}});
    j["records"] = recs;
    emit(j, opts.out_path,
         "network: final gap " + format_double(records.back().relative_gap));
    return kExitOk;
}

int run_catalog(const std::string& name, const CommonOpts& opts) {
    CatalogEntry entry = catalog_entry(name);
    json j;
    j["name"] = entry.name;
    j["description"] = entry.description;
    int code = kExitOk;
    if (entry.has_problem) {
        j["problem"] = problem_to_json(entry.problem);
        TypeVerdict v = classify_submanifold(entry.problem, opts.tolerance);
        j["verdict"] = verdict_to_json(v);
        if (v.outcome == Outcome::Inconclusive) code = kExitInconclusive;
        if (!opts.out_path.empty()) {
            // Profile table for plotting: r, h(r), g(r).
            std::ofstream os(opts.out_path);
            if (!os) throw IoError("cannot write " + opts.out_path);
            std::vector<std::vector<double>> rows;
            auto grid = log_grid(entry.problem.rho, 100.0 * entry.problem.rho, 101);
            for (double r : grid) {
                std::vector<double> row{r, entry.problem.h.value(r)};
                if (entry.problem.g) row.push_back(entry.problem.g->value(r));
                rows.push_back(row);
            }
            std::vector<std::string> header{"r", "h"};
            if (entry.problem.g) header.push_back("g");
            write_csv(os, header, rows);
        }
    }
    std::cout << j.dump(2) << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parabolicity/hyperbolicity toolkit for radially controlled "
                 "submanifolds of warped-product model spaces"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string catalog_name;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config_path, "problem config (JSON)");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out_path, "output file (default: stdout)");
        sub->add_option("--tolerance", opts.tolerance, "quadrature tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", opts.seed, "seed override")
            ->each([&](const std::string&) { opts.seed_set = true; });
        sub->add_option("--threads", opts.threads, "worker threads (speed only)")
            ->check(CLI::PositiveNumber);
    };

    auto* classify = app.add_subcommand("classify", "type verdict with certificate");
    add_common(classify, true);
    auto* capacity = app.add_subcommand("capacity", "drifted annulus capacity");
    add_common(capacity, true);
    auto* potential = app.add_subcommand("potential", "Dirichlet potential CSV");
    add_common(potential, true);
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo hitting oracle");
    add_common(simulate, true);
    auto* network = app.add_subcommand("network", "discrete network oracle");
    add_common(network, true);
    auto* catalog = app.add_subcommand("catalog", "worked examples");
    catalog->add_option("name", catalog_name, "catalog entry, e.g. cone:0.7854")
        ->required();
    add_common(catalog, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify) return run_classify(opts);
        if (*capacity) return run_capacity(opts);
        if (*potential) return run_potential(opts);
        if (*simulate) return run_simulate(opts);
        if (*network) return run_network(opts);
        if (*catalog) return run_catalog(catalog_name, opts);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
