#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "parhyp/classifier.hpp"
#include "parhyp/network.hpp"
#include "parhyp/stochastic.hpp"

namespace parhyp {

using json = nlohmann::json;

// Strict object access: unknown keys are schema violations.
void expect_keys(const json& obj, const std::vector<std::string>& allowed,
                 const std::string& context);

json warping_to_json(const WarpingDescriptor& w);
WarpingDescriptor warping_from_json(const json& j, const std::string& context);

json profile_to_json(const RadialProfile& p);
RadialProfile profile_from_json(const json& j, ProfileRole role,
                                const std::string& context);

json problem_to_json(const RadialProblem& p);
RadialProblem problem_from_json(const json& j, const std::string& context);

json tail_class_to_json(const TailClass& tc);
json integral_verdict_to_json(const IntegralVerdict& v);
json verdict_to_json(const TypeVerdict& v);
json capacity_to_json(const CapacityEstimate& c);
json hitting_to_json(const HittingEstimate& h);

/// Two-column CSV (strictly increasing first column).
std::vector<std::pair<double, double>> load_table_csv(const std::string& path);
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::string format_double(double v); // shortest round-trip

/// Catalog of worked examples: "cone:<half angle>", "paraboloid:<a>",
/// "cmc-h3:<H>", "schwarz-p" (a documentation note).
struct CatalogEntry {
    std::string name;
    std::string description;
    bool has_problem = false;
    RadialProblem problem;
};
CatalogEntry catalog_entry(const std::string& name);
std::vector<std::string> catalog_names();

} // namespace parhyp
