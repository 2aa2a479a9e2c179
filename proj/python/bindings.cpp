#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parhyp/serialization.hpp"

namespace py = pybind11;
using namespace parhyp;

namespace {

RadialProblem problem_from_json_str(const std::string& text) {
    return problem_from_json(json::parse(text), "problem");
}

AnnulusSpec make_annulus(int m, const WarpingDescriptor& w, const RadialProfile& h,
                         std::optional<RadialProfile> g, double rho, double R) {
    AnnulusSpec spec;
    spec.m = m;
    spec.w = w;
    spec.h = h;
    spec.g = std::move(g);
    spec.rho = rho;
    spec.R = R;
    return spec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Parabolicity/hyperbolicity toolkit: model-space weights, drifted "
              "capacities, and the stochastic / network oracles";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<SchemaError>(m, "SchemaError");
    py::register_exception<UnknownExampleError>(m, "UnknownExampleError");

    py::class_<WarpingDescriptor>(m, "WarpingDescriptor")
        .def_static("space_form", &WarpingDescriptor::space_form, py::arg("b"))
        .def_static("power_tail", &WarpingDescriptor::power_tail, py::arg("p"),
                    py::arg("r0"))
        .def_static("exp_tail", &WarpingDescriptor::exp_tail, py::arg("a"),
                    py::arg("q"))
        .def_static(
            "tabulated",
            [](const std::vector<std::pair<double, double>>& samples, double rate,
               double power, double log_power, double accuracy) {
                return WarpingDescriptor::tabulated(
                    samples, TailModel{1.0, rate, power, log_power}, accuracy);
            },
            py::arg("samples"), py::arg("rate") = 0.0, py::arg("power") = 0.0,
            py::arg("log_power") = 0.0, py::arg("accuracy") = 1e-8)
        .def("value", &WarpingDescriptor::value)
        .def("derivative", &WarpingDescriptor::derivative)
        .def("second_derivative", &WarpingDescriptor::second_derivative)
        .def("eta", &WarpingDescriptor::eta)
        .def("log_value", &WarpingDescriptor::log_value)
        .def_property_readonly("domain_end", &WarpingDescriptor::domain_end);

    py::class_<RadialProfile>(m, "RadialProfile")
        .def_static("zero", &RadialProfile::zero)
        .def_static(
            "constant",
            [](double v, const std::string& role) {
                return RadialProfile::constant(v, role == "g" ? ProfileRole::GBound
                                                              : ProfileRole::HBound);
            },
            py::arg("value"), py::arg("role") = "h")
        .def_static("eta_of_model", &RadialProfile::eta_of_model)
        .def_static("power_law", &RadialProfile::power_law, py::arg("coefficient"),
                    py::arg("exponent"))
        .def_static(
            "tabulated",
            [](const std::vector<std::pair<double, double>>& samples, double rate,
               double power, const std::string& role, double accuracy) {
                return RadialProfile::tabulated(
                    samples, TailModel{1.0, rate, power, 0.0},
                    role == "g" ? ProfileRole::GBound : ProfileRole::HBound, accuracy);
            },
            py::arg("samples"), py::arg("rate") = 0.0, py::arg("power") = 0.0,
            py::arg("role") = "h", py::arg("accuracy") = 1e-6)
        .def("value", &RadialProfile::value);

    m.def("eval_warping", &eval_warping);
    m.def("eta", py::overload_cast<const WarpingDescriptor&, double>(&eta));
    m.def("radial_curvature", &radial_curvature);
    m.def("hessian_radial", &hessian_radial);
    m.def("unit_sphere_volume", &unit_sphere_volume);
    m.def(
        "sphere_volume",
        [](int m_dim, const WarpingDescriptor& w, double r) {
            return sphere_volume(ModelSpace{m_dim, w}, r);
        },
        py::arg("m"), py::arg("w"), py::arg("r"));

    m.def(
        "balance",
        [](int m_dim, const WarpingDescriptor& w, const RadialProfile& h) {
            BalanceReport rep = balance(m_dim, w, h);
            py::dict out;
            out["class"] = to_string(rep.cls);
            out["grade"] = to_string(rep.grade);
            out["witness"] = rep.witness ? py::object(py::float_(*rep.witness))
                                         : py::object(py::none());
            return out;
        },
        py::arg("m"), py::arg("w"), py::arg("h"));

    m.def(
        "lambda_plain",
        [](int m_dim, const WarpingDescriptor& w, const RadialProfile& h, double rho,
           double r, double tol) {
            return lambda_plain(balance(m_dim, w, h), rho, r, tol);
        },
        py::arg("m"), py::arg("w"), py::arg("h"), py::arg("rho"), py::arg("r"),
        py::arg("tol") = 1e-10);
    m.def(
        "lambda_tangency",
        [](int m_dim, const WarpingDescriptor& w, const RadialProfile& h,
           const RadialProfile& g, double rho, double r, double tol) {
            return lambda_tangency(balance(m_dim, w, h), g, rho, r, tol);
        },
        py::arg("m"), py::arg("w"), py::arg("h"), py::arg("g"), py::arg("rho"),
        py::arg("r"), py::arg("tol") = 1e-10);

    m.def(
        "classify_model",
        [](int m_dim, const WarpingDescriptor& w, int n_exponent, double rho,
           double tol) {
            TypeVerdict v = classify_model(ModelSpace{m_dim, w}, n_exponent, rho, tol);
            return verdict_to_json(v).dump();
        },
        py::arg("m"), py::arg("w"), py::arg("n_exponent"), py::arg("rho") = 1.0,
        py::arg("tol") = 1e-10);

    m.def(
        "classify_submanifold",
        [](const std::string& problem_json, double tol) {
            TypeVerdict v = classify_submanifold(problem_from_json_str(problem_json), tol);
            return verdict_to_json(v).dump();
        },
        py::arg("problem_json"), py::arg("tol") = 1e-10,
        "Classify a problem given as the JSON object used by the CLI config.");

    m.def(
        "potential_closed_form",
        [](int m_dim, const WarpingDescriptor& w, const RadialProfile& h,
           std::optional<RadialProfile> g, double rho, double R, double r, double tol) {
            return potential_closed_form(make_annulus(m_dim, w, h, std::move(g), rho, R),
                                         r, tol);
        },
        py::arg("m"), py::arg("w"), py::arg("h"), py::arg("g"), py::arg("rho"),
        py::arg("R"), py::arg("r"), py::arg("tol") = 1e-10);

    m.def(
        "potential_bvp",
        [](int m_dim, const WarpingDescriptor& w, const RadialProfile& h,
           std::optional<RadialProfile> g, double rho, double R, int n_nodes) {
            PotentialSolution sol =
                potential_bvp(make_annulus(m_dim, w, h, std::move(g), rho, R), n_nodes);
            return py::make_tuple(sol.grid, sol.values);
        },
        py::arg("m"), py::arg("w"), py::arg("h"), py::arg("g"), py::arg("rho"),
        py::arg("R"), py::arg("n_nodes") = 4096);

    m.def(
        "drifted_capacity",
        [](int m_dim, const WarpingDescriptor& w, const RadialProfile& h,
           std::optional<RadialProfile> g, double rho, double R, double tol) {
            CapacityEstimate cap =
                drifted_capacity(make_annulus(m_dim, w, h, std::move(g), rho, R), tol);
            return py::make_tuple(cap.value, cap.abs_error);
        },
        py::arg("m"), py::arg("w"), py::arg("h"), py::arg("g"), py::arg("rho"),
        py::arg("R"), py::arg("tol") = 1e-10);

    m.def(
        "capacity_limit",
        [](int m_dim, const WarpingDescriptor& w, const RadialProfile& h,
           std::optional<RadialProfile> g, double rho, double tol) {
            CapacityLimit lim =
                capacity_limit(make_annulus(m_dim, w, h, std::move(g), rho, 2.0 * rho), tol);
            py::dict out;
            out["integral"] = to_string(lim.integral.outcome);
            if (lim.capacity) {
                out["value"] = lim.capacity->value;
                out["abs_error"] = lim.capacity->abs_error;
            }
            return out;
        },
        py::arg("m"), py::arg("w"), py::arg("h"), py::arg("g"), py::arg("rho"),
        py::arg("tol") = 1e-10);

    m.def(
        "simulate_hitting",
        [](const std::function<double(double)>& drift, double rho, double R, double r0,
           long n_paths, std::uint64_t seed, double dt_max, int threads) {
            SimConfig c;
            c.rho = rho;
            c.R = R;
            c.r0 = r0;
            c.n_paths = n_paths;
            c.seed = seed;
            c.dt_max = dt_max;
            c.threads = threads;
            HittingEstimate est = simulate_hitting(DiffusionSpec{drift}, c);
            py::dict out;
            out["p_hat"] = est.p_hat;
            out["std_err"] = est.std_err;
            out["n_paths"] = est.n_paths;
            out["step_limit_hits"] = est.step_limit_hits;
            return out;
        },
        py::arg("drift"), py::arg("rho"), py::arg("R"), py::arg("r0"),
        py::arg("n_paths") = 10000, py::arg("seed") = 0, py::arg("dt_max") = 1e-3,
        py::arg("threads") = 1);

    m.def(
        "effective_conductance",
        [](int m_dim, const WarpingDescriptor& w, double rho, double R, int K, int A) {
            RadialNetwork net = build_network(m_dim, w, rho, R, K, A);
            ConductanceResult res = effective_conductance(net);
            py::dict out;
            out["conductance"] = res.conductance;
            out["iterations"] = res.iterations;
            out["residual_norm"] = res.residual_norm;
            return out;
        },
        py::arg("m"), py::arg("w"), py::arg("rho"), py::arg("R"), py::arg("K"),
        py::arg("A"));

    m.def(
        "catalog",
        [](const std::string& name, double tol) {
            CatalogEntry entry = catalog_entry(name);
            json j;
            j["name"] = entry.name;
            j["description"] = entry.description;
            if (entry.has_problem) {
                j["problem"] = problem_to_json(entry.problem);
                j["verdict"] = verdict_to_json(classify_submanifold(entry.problem, tol));
            }
            return j.dump();
        },
        py::arg("name"), py::arg("tol") = 1e-10);
}
