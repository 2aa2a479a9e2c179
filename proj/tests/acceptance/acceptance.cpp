// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Needs the CLI binary and the sample configs for the end-to-end
// determinism checks:
//   parhyp_acceptance --cli <path> --configs <dir> --scratch <dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "parhyp/classifier.hpp"
#include "parhyp/network.hpp"
#include "parhyp/serialization.hpp"
#include "parhyp/stochastic.hpp"

using namespace parhyp;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
              << detail << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Deterministic generator for the randomized criteria (xorshift128+).
struct Rng {
    std::uint64_t s0, s1;
    explicit Rng(std::uint64_t seed)
        : s0(seed * 0x9E3779B97F4A7C15ull + 1), s1(seed ^ 0xD1B54A32D192ED03ull) {
        next();
        next();
    }
    std::uint64_t next() {
        std::uint64_t x = s0, y = s1;
        s0 = y;
        x ^= x << 23;
        s1 = x ^ y ^ (x >> 17) ^ (y >> 26);
        return s1 + y;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

AnnulusSpec intrinsic_annulus(int m, double b, double rho, double R) {
    AnnulusSpec spec;
    spec.m = m;
    spec.w = WarpingDescriptor::space_form(b);
    spec.h = RadialProfile::zero();
    spec.rho = rho;
    spec.R = R;
    return spec;
}

// ---- criterion 1: Ahlfors reproduction -----------------------------------

void criterion_ahlfors() {
    struct Case {
        double b;
        int n;
        Outcome expect;
    };
    std::vector<Case> cases = {{0.0, 2, Outcome::Parabolic},
                               {0.0, 3, Outcome::Hyperbolic},
                               {-1.0, 2, Outcome::Hyperbolic}};
    bool ok = true;
    std::ostringstream detail;
    detail << "Ahlfors verdicts";
    for (const auto& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        ModelSpace model{c.n, WarpingDescriptor::space_form(c.b)};
        TypeVerdict v = classify_model(model, c.n, 1.0);
        double dt = seconds_since(t0);
        detail << " [b=" << c.b << ",n=" << c.n << ": " << to_string(v.outcome)
               << ", " << dt << "s]";
        if (v.outcome != c.expect || dt >= 1.0) ok = false;
    }
    report(1, ok, detail.str());
}

// ---- criterion 2: closed form vs BVP --------------------------------------

void criterion_bvp() {
    struct Case {
        int m;
        double b;
        const char* name;
    };
    std::vector<Case> cases = {{2, 0.0, "plane"}, {3, 0.0, "R^3"}, {2, -1.0, "H^2"}};
    bool ok = true;
    std::ostringstream detail;
    detail << "max |psi_closed - psi_fd| at 4096 nodes";
    for (const auto& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        AnnulusSpec spec = intrinsic_annulus(c.m, c.b, 1.0, 4.0);
        PotentialSolution fd = potential_bvp(spec, 4096);
        PotentialSolution cf = potential_closed_form_solution(spec, fd.grid, 1e-12);
        double gap = 0.0;
        for (std::size_t i = 0; i < fd.grid.size(); ++i)
            gap = std::max(gap, std::fabs(fd.values[i] - cf.values[i]));
        double dt = seconds_since(t0);
        detail << " [" << c.name << ": " << gap << ", " << dt << "s]";
        if (!(gap <= 1e-6) || dt >= 1.0) ok = false;
    }
    report(2, ok, detail.str());
}

// ---- criterion 3: capacity identity ----------------------------------------

void criterion_capacity_identity() {
    Rng rng(1003);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        int m = rng.uniform_int(2, 4);
        double b = rng.uniform(-2.0, 0.5);
        double rho = rng.uniform(0.4, 1.8);
        double R = rho + rng.uniform(0.8, 5.0);
        auto w = WarpingDescriptor::space_form(b);
        if (b > 0.0) {
            rho = std::min(rho, 0.3 * w.domain_end());
            R = std::min(R, 0.92 * w.domain_end());
        }
        AnnulusSpec spec;
        spec.m = m;
        spec.w = w;
        spec.h = RadialProfile::zero();
        spec.rho = rho;
        spec.R = R;
        CapacityEstimate cap = drifted_capacity(spec, 1e-12);

        Integrand f{[&](double t) { return std::pow(w.value(t), 1.0 - m); }};
        QuadResult q = integrate(f, rho, R, 1e-12);
        double expect = unit_sphere_volume(m) / q.value;
        double rel = std::fabs(cap.value - expect) / expect;
        worst = std::max(worst, rel);
        if (!(rel <= 1e-9)) ok = false;
    }
    std::ostringstream detail;
    detail << "20 randomized (m, b, rho, R) configs, worst relative gap " << worst;
    report(3, ok, detail.str());
}

// ---- criterion 4: Monte Carlo agreement ------------------------------------

void criterion_monte_carlo() {
    struct Case {
        double drift_dim;
        double psi;
        const char* name;
    };
    // psi(2) on [1,4]: plane ln2/ln4, R^3 (1-1/2)/(1-1/4).
    std::vector<Case> cases = {{1.0, std::log(2.0) / std::log(4.0), "plane"},
                               {2.0, 2.0 / 3.0, "R^3"}};
    bool ok = true;
    std::ostringstream detail;
    detail << "|p_hat - psi| vs 3 std_err at n = 1e5";
    for (const auto& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        double k = c.drift_dim;
        SimConfig cfg;
        cfg.rho = 1.0;
        cfg.R = 4.0;
        cfg.r0 = 2.0;
        cfg.n_paths = 100000;
        cfg.dt_max = 5e-5;
        cfg.seed = 1;
        cfg.threads = static_cast<int>(std::thread::hardware_concurrency());
        if (cfg.threads < 1) cfg.threads = 1;
        HittingEstimate est =
            simulate_hitting_with([k](double r) { return k / r; }, cfg);
        double dt = seconds_since(t0);
        double gap = std::fabs(est.p_hat - c.psi);
        detail << " [" << c.name << ": gap " << gap << ", 3se "
               << 3.0 * est.std_err << ", limits " << est.step_limit_hits << ", "
               << dt << "s]";
        if (!(gap <= 3.0 * est.std_err) || est.step_limit_hits != 0 || dt >= 60.0)
            ok = false;
    }
    report(4, ok, detail.str());
}

// ---- criterion 5: network convergence --------------------------------------

void criterion_network() {
    bool ok = true;
    std::ostringstream detail;

    auto flat = WarpingDescriptor::space_form(0.0);
    {
        RadialNetwork net = build_network(2, flat, 1.0, std::exp(1.0), 256, 256);
        double c = effective_conductance(net).conductance;
        double rel = std::fabs(c - 2.0 * kPi) / (2.0 * kPi);
        detail << "flat 256x256 gap " << rel;
        if (!(rel <= 0.02)) ok = false;
    }
    {
        RadialNetwork net = build_network(3, flat, 1.0, 4.0, 128, 64);
        double c = effective_conductance(net).conductance;
        double classical = 4.0 * kPi / (1.0 - 0.25);
        double rel = std::fabs(c - classical) / classical;
        detail << "; shell 128x(64x128) gap " << rel;
        if (!(rel <= 0.05)) ok = false;
    }
    {
        RadialNetwork base = build_network(2, flat, 1.0, 3.0, 12, 12);
        double base_c = effective_conductance(base).conductance;
        Rng rng(55);
        int violations = 0, tested = 0;
        while (tested < 100) {
            RadialNetwork cut = base;
            std::size_t victim = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(cut.edges.size()) - 1));
            cut.edges.erase(cut.edges.begin() + victim);
            if (!cut.connected()) continue;
            double c = effective_conductance(cut).conductance;
            if (c > base_c * (1.0 + 1e-8)) ++violations;
            ++tested;
        }
        detail << "; Rayleigh violations " << violations << "/100";
        if (violations != 0) ok = false;
    }
    report(5, ok, detail.str());
}

// ---- criterion 6: theorem dispatch ------------------------------------------

void criterion_dispatch() {
    bool ok = true;
    std::ostringstream detail;

    TypeVerdict cone = classify_submanifold(catalog_entry("cone:0.7853981633974483").problem);
    detail << "cone: " << to_string(cone.outcome) << "/" << to_string(cone.certificate.rule);
    if (cone.outcome != Outcome::Parabolic || cone.certificate.rule != Rule::T1A)
        ok = false;

    TypeVerdict cmc = classify_submanifold(catalog_entry("cmc-h3:0.4").problem);
    detail << "; cmc-h3 0.4: " << to_string(cmc.outcome) << "/"
           << to_string(cmc.certificate.rule);
    if (cmc.outcome != Outcome::Hyperbolic || cmc.certificate.rule != Rule::T2B)
        ok = false;

    RadialProblem cor3;
    cor3.m = 2;
    cor3.w = WarpingDescriptor::space_form(0.0);
    cor3.curvature = CurvatureBound::Both;
    cor3.h = RadialProfile::eta_of_model(cor3.w);
    cor3.h_direction = ConvexityBound::Equal;
    cor3.rho = 1.0;
    TypeVerdict c3 = classify_submanifold(cor3);
    detail << "; Cor3(w=r): " << to_string(c3.outcome) << "/"
           << to_string(c3.certificate.rule);
    if (c3.outcome != Outcome::Parabolic || c3.certificate.rule != Rule::Cor3)
        ok = false;

    TypeVerdict border = classify_submanifold(catalog_entry("cmc-h3:0.5").problem);
    detail << "; cmc-h3 0.5: " << to_string(border.outcome);
    if (border.outcome != Outcome::Inconclusive) ok = false;

    report(6, ok, detail.str());
}

// ---- criterion 7: weight ordering -------------------------------------------

void criterion_weight_ordering() {
    Rng rng(1007);
    bool ok = true;
    long checks = 0, violations = 0;
    for (int cfg = 0; cfg < 50; ++cfg) {
        double b = rng.uniform(-1.5, 0.0);
        auto w = WarpingDescriptor::space_form(b);
        double rho = rng.uniform(0.4, 1.5);
        double gv = rng.uniform(0.25, 1.0);
        auto g = RadialProfile::constant(gv, ProfileRole::GBound);

        bool want_nonneg = (cfg % 2 == 0);
        RadialProfile h = RadialProfile::zero();
        if (want_nonneg) {
            double eta_inf = b < 0.0 ? std::sqrt(-b) : 0.0;
            double cap = std::min(w.eta(rho), eta_inf > 0.0 ? eta_inf : w.eta(rho));
            h = RadialProfile::constant(rng.uniform(-0.5, 0.9) * cap, ProfileRole::HBound);
        } else {
            h = RadialProfile::eta_of_model(WarpingDescriptor::space_form(b - rng.uniform(0.5, 2.0)));
        }
        BalanceReport M = balance(2, w, h);
        DriftWeight plain(M, std::nullopt, rho);
        DriftWeight tang(M, g, rho);
        bool nonneg = M.cls == SignClass::NonNegative || M.cls == SignClass::IdenticallyZero;
        bool nonpos = M.cls == SignClass::NonPositive || M.cls == SignClass::IdenticallyZero;
        if (!nonneg && !nonpos) continue;
        for (int i = 0; i < 1000; ++i) {
            double r = rho * std::exp(rng.uniform(0.0, 6.0));
            double lg = tang.log_value(r), lp = plain.log_value(r);
            ++checks;
            if (nonneg && lg > lp + 1e-9) ++violations;
            if (nonpos && lg < lp - 1e-9) ++violations;
        }
    }
    if (violations != 0 || checks < 40000) ok = false;
    std::ostringstream detail;
    detail << "Lambda_g vs Lambda ordering: " << violations << " violations in "
           << checks << " samples";
    report(7, ok, detail.str());
}

// ---- criterion 8: MP2 equivalence -------------------------------------------

void criterion_mp2() {
    std::vector<RadialProblem> problems;
    {
        RadialProblem plane;
        plane.m = 2;
        plane.w = WarpingDescriptor::space_form(0.0);
        plane.h = RadialProfile::zero();
        problems.push_back(plane);

        for (double H : {0.1, 0.4, 0.5, 0.7, 1.0, 1.5}) {
            RadialProblem p;
            p.m = 2;
            p.w = WarpingDescriptor::space_form(-1.0);
            p.h = RadialProfile::constant(H, ProfileRole::HBound);
            problems.push_back(p);
        }
        for (double b : {0.0, -0.5, -2.0}) {
            RadialProblem p;
            p.m = 3;
            p.w = WarpingDescriptor::space_form(b);
            p.h = RadialProfile::eta_of_model(p.w);
            problems.push_back(p);
        }
        RadialProblem pt;
        pt.m = 2;
        pt.w = WarpingDescriptor::power_tail(2.0, 1.0);
        pt.h = RadialProfile::power_law(0.25, -1.0);
        problems.push_back(pt);

        RadialProblem et;
        et.m = 2;
        et.w = WarpingDescriptor::exp_tail(1.0, 0.0);
        et.h = RadialProfile::constant(0.3, ProfileRole::HBound);
        problems.push_back(et);
    }
    int failures = 0;
    for (const auto& p : problems) {
        auto eq = mp2_equivalence_check(p);
        if (!eq.has_value() || !*eq) ++failures;
    }
    std::ostringstream detail;
    detail << "MP2 equivalence on " << problems.size()
           << " closed-family configs, failures " << failures;
    report(8, failures == 0, detail.str());
}

// ---- criterion 9: CLI determinism -------------------------------------------

struct CliRun {
    int exit_code;
    std::string stdout_text;
};

CliRun run_cli(const std::string& cli, const std::string& args,
               const fs::path& scratch, const std::string& tag) {
    fs::path out = scratch / (tag + ".stdout");
    std::string cmd = cli + " " + args + " > " + out.string() + " 2> " +
                      (scratch / (tag + ".stderr")).string();
    int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = -1;
    if (rc != -1) code = WEXITSTATUS(rc);
    return {code, ss.str()};
}

void criterion_cli_determinism(const std::string& cli, const fs::path& configs,
                               const fs::path& scratch) {
    bool ok = true;
    std::ostringstream detail;
    fs::create_directories(scratch);

    struct Job {
        const char* name;
        std::string args;
        int expect_code;
    };
    std::vector<Job> jobs = {
        {"classify", "classify --config " + (configs / "cmc-h3.json").string(), 0},
        {"simulate", "simulate --config " + (configs / "plane-simulate.json").string(), 0},
        {"capacity", "capacity --config " + (configs / "r3-capacity.json").string(), 0},
    };
    for (const auto& job : jobs) {
        std::vector<std::string> outputs;
        for (int threads : {1, 4, 16}) {
            std::string tag = std::string(job.name) + "-t" + std::to_string(threads);
            CliRun run = run_cli(cli, job.args + " --threads " + std::to_string(threads),
                                 scratch, tag);
            if (run.exit_code != job.expect_code) ok = false;
            outputs.push_back(run.stdout_text);
        }
        // Repeat at the base thread count.
        CliRun again = run_cli(cli, job.args + " --threads 1", scratch,
                               std::string(job.name) + "-repeat");
        bool identical = outputs[0] == outputs[1] && outputs[0] == outputs[2] &&
                         outputs[0] == again.stdout_text && !outputs[0].empty();
        detail << (detail.tellp() > 0 ? "; " : "") << job.name
               << (identical ? " byte-identical" : " MISMATCH");
        if (!identical) ok = false;
    }

    // Exit-code contract: the fitted boundary config refuses with 2,
    // a broken config reports 1.
    CliRun border = run_cli(
        cli, "classify --config " + (configs / "fitted-boundary.json").string(),
        scratch, "boundary");
    detail << "; boundary exit " << border.exit_code;
    if (border.exit_code != 2) ok = false;

    fs::path bad = scratch / "bad-config.json";
    {
        std::ofstream os(bad);
        os << "{\"problem\": {\"m\": 2, \"warping\": {\"family\": \"space_form\", "
              "\"b\": 0.0}, \"typo_key\": 1}}";
    }
    CliRun broken = run_cli(cli, "classify --config " + bad.string(), scratch, "broken");
    detail << "; schema-error exit " << broken.exit_code;
    if (broken.exit_code != 1) ok = false;

    report(9, ok, detail.str());
}

} // namespace

int main(int argc, char** argv) {
    std::string cli, configs, scratch;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string key = argv[i];
        if (key == "--cli") cli = argv[i + 1];
        if (key == "--configs") configs = argv[i + 1];
        if (key == "--scratch") scratch = argv[i + 1];
    }
    if (cli.empty() || configs.empty() || scratch.empty()) {
        std::cerr << "usage: parhyp_acceptance --cli PATH --configs DIR --scratch DIR\n";
        return 2;
    }

    criterion_ahlfors();
    criterion_bvp();
    criterion_capacity_identity();
    criterion_monte_carlo();
    criterion_network();
    criterion_dispatch();
    criterion_weight_ordering();
    criterion_mp2();
    criterion_cli_determinism(cli, configs, scratch);

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria failed\n";
    return 1;
}
