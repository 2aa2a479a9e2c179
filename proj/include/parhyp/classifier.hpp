#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parhyp/dirichlet.hpp"
#include "parhyp/weights.hpp"

namespace parhyp {

/// Direction of the ambient radial curvature bound against -w''/w.
/// These are facts about an ambient manifold the toolkit never sees; they
/// enter certificates as "asserted" hypotheses.
enum class CurvatureBound { Lower, Upper, Both };

/// Direction of the convexity bound: Lower means C(x) >= h(r(x)),
/// Upper means C(x) <= h(r(x)), Equal means both (C = h).
enum class ConvexityBound { Lower, Upper, Equal };

struct RadialProblem {
    int m = 2;
    WarpingDescriptor w;
    CurvatureBound curvature = CurvatureBound::Lower;
    RadialProfile h;
    ConvexityBound h_direction = ConvexityBound::Lower;
    std::optional<RadialProfile> g;
    double rho = 1.0;
    bool intrinsic = false;
    // Volume exponent for the intrinsic (Ahlfors) route; defaults to m.
    std::optional<int> n_exponent;
};

enum class Outcome { Parabolic, Hyperbolic, Inconclusive };
enum class Rule { TheoremA, T1A, T1B, T2A, T2B, Cor3, None };

std::string to_string(Outcome o);
std::string to_string(Rule r);
std::string to_string(SignClass c);
std::string to_string(CertGrade g);
std::string to_string(IntegralOutcome o);

struct HypothesisCheck {
    std::string name;
    std::string status; // "pass" | "fail" | "asserted"
    std::string detail;
};

struct Certificate {
    Rule rule = Rule::None;
    std::optional<SignClass> balance_class;
    std::optional<CertGrade> balance_grade;
    std::optional<double> balance_witness;
    std::optional<IntegralVerdict> integral_plain;
    std::optional<IntegralVerdict> integral_tangency;
    std::vector<HypothesisCheck> checks;
};

struct TypeVerdict {
    Outcome outcome = Outcome::Inconclusive;
    Certificate certificate;
};

/// Ahlfors criterion: a non-compact model is parabolic iff
/// int_rho^inf w^{1-n} diverges. Exact iff for models.
TypeVerdict classify_model(const ModelSpace& model, int n_exponent, double rho,
                           double tol = 1e-10);

/// Theorem dispatch over the parabolicity/hyperbolicity branches; emits a
/// certificate with one entry per hypothesis. ConsistencyError when
/// contradictory branches both fire.
TypeVerdict classify_submanifold(const RadialProblem& p, double tol = 1e-10);

struct Obligation {
    enum class Status { Holds, Fails, NotEvaluable };
    std::string description;
    Status status = Status::NotEvaluable;
    std::optional<IntegralVerdict> evidence;
};

/// Contrapositive obligations implied by a known type, under the corollary
/// whose hypothesis pattern the problem matches. HypothesisMismatchError
/// when the bound directions do not fit.
std::vector<Obligation> necessary_conditions(const RadialProblem& p, Outcome known,
                                             double tol = 1e-10);

/// Checks that int G^m / w^{m-1} and int Lambda share one convergence
/// verdict, where G = exp(int_rho^r h). nullopt when either side is
/// inconclusive.
std::optional<bool> mp2_equivalence_check(const RadialProblem& p, double tol = 1e-10);

} // namespace parhyp
