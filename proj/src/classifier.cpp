#include "parhyp/classifier.hpp"

#include <cmath>

namespace parhyp {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Parabolic: return "parabolic";
        case Outcome::Hyperbolic: return "hyperbolic";
        case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(Rule r) {
    switch (r) {
        case Rule::TheoremA: return "TheoremA";
        case Rule::T1A: return "T1A";
        case Rule::T1B: return "T1B";
        case Rule::T2A: return "T2A";
        case Rule::T2B: return "T2B";
        case Rule::Cor3: return "Cor3";
        case Rule::None: return "none";
    }
    return "?";
}

std::string to_string(SignClass c) {
    switch (c) {
        case SignClass::NonNegative: return "non_negative";
        case SignClass::NonPositive: return "non_positive";
        case SignClass::IdenticallyZero: return "identically_zero";
        case SignClass::Indefinite: return "indefinite";
    }
    return "?";
}

std::string to_string(CertGrade g) {
    return g == CertGrade::Exact ? "exact" : "empirical";
}

std::string to_string(IntegralOutcome o) {
    switch (o) {
        case IntegralOutcome::Finite: return "finite";
        case IntegralOutcome::Divergent: return "divergent";
        case IntegralOutcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

TypeVerdict classify_model(const ModelSpace& model, int n_exponent, double rho,
                           double tol) {
    if (model.dimension < 2) throw DomainError("classify_model: m must be >= 2");
    if (n_exponent < 2) throw DomainError("classify_model: volume exponent must be >= 2");
    if (model.warping.domain_end() != std::numeric_limits<double>::infinity())
        throw DomainError("classify_model: model must be non-compact");
    if (!(rho > 0.0)) throw DomainError("classify_model: rho must be positive");

    RadialWeight weight = power_weight(model.warping, 1.0 - n_exponent, rho);
    IntegralVerdict verdict = classify_improper(weight, ClassifyOptions{tol});

    TypeVerdict out;
    out.certificate.rule = Rule::TheoremA;
    out.certificate.integral_plain = verdict;
    out.certificate.checks.push_back(
        {"model_non_compact", "pass", "domain extends to infinity"});
    out.certificate.checks.push_back(
        {"ahlfors_integral", to_string(verdict.outcome),
         "int w^(1-n) from rho, n = " + std::to_string(n_exponent)});
    switch (verdict.outcome) {
        case IntegralOutcome::Divergent: out.outcome = Outcome::Parabolic; break;
        case IntegralOutcome::Finite: out.outcome = Outcome::Hyperbolic; break;
        case IntegralOutcome::Inconclusive: out.outcome = Outcome::Inconclusive; break;
    }
    return out;
}

namespace {

bool curvature_has_lower(CurvatureBound c) {
    return c == CurvatureBound::Lower || c == CurvatureBound::Both;
}
bool curvature_has_upper(CurvatureBound c) {
    return c == CurvatureBound::Upper || c == CurvatureBound::Both;
}
bool convexity_has_lower(ConvexityBound c) { // C >= h
    return c == ConvexityBound::Lower || c == ConvexityBound::Equal;
}
bool convexity_has_upper(ConvexityBound c) { // C <= h
    return c == ConvexityBound::Upper || c == ConvexityBound::Equal;
}

bool balance_non_negative(SignClass c) {
    return c == SignClass::NonNegative || c == SignClass::IdenticallyZero;
}
bool balance_non_positive(SignClass c) {
    return c == SignClass::NonPositive || c == SignClass::IdenticallyZero;
}

} // namespace

TypeVerdict classify_submanifold(const RadialProblem& p, double tol) {
    if (p.m < 2) throw DomainError("classify: m must be >= 2");
    if (!(p.rho > 0.0)) throw DomainError("classify: rho must be positive");

    if (p.intrinsic) {
        ModelSpace model{p.m, p.w};
        TypeVerdict v =
            classify_model(model, p.n_exponent.value_or(p.m), p.rho, tol);
        v.certificate.checks.insert(
            v.certificate.checks.begin(),
            {"intrinsic_model", "pass", "h and g ignored, Ahlfors route"});
        return v;
    }

    TypeVerdict out;
    Certificate& cert = out.certificate;

    bool can_t1 = curvature_has_lower(p.curvature) && convexity_has_lower(p.h_direction);
    bool can_t2 = curvature_has_upper(p.curvature) && convexity_has_upper(p.h_direction);
    cert.checks.push_back({"curvature_lower_bound",
                           curvature_has_lower(p.curvature) ? "asserted" : "absent",
                           "K_{o,N} >= -w''/w (user-supplied fact)"});
    cert.checks.push_back({"curvature_upper_bound",
                           curvature_has_upper(p.curvature) ? "asserted" : "absent",
                           "K_{o,N} <= -w''/w (user-supplied fact)"});
    cert.checks.push_back({"convexity_lower_bound",
                           convexity_has_lower(p.h_direction) ? "asserted" : "absent",
                           "C(x) >= h(r(x)) (user-supplied fact)"});
    cert.checks.push_back({"convexity_upper_bound",
                           convexity_has_upper(p.h_direction) ? "asserted" : "absent",
                           "C(x) <= h(r(x)) (user-supplied fact)"});

    BalanceReport M = balance(p.m, p.w, p.h);
    cert.balance_class = M.cls;
    cert.balance_grade = M.grade;
    cert.balance_witness = M.witness;
    cert.checks.push_back({"balance_sign", to_string(M.cls),
                           std::string("grade ") + to_string(M.grade)});

    if (p.g) {
        cert.checks.push_back(
            {"tangency_condition", "pass", "g supplied with values in (0, 1]"});
    }

    auto weight_plain = std::make_shared<DriftWeight>(M, std::nullopt, p.rho, tol);
    std::shared_ptr<DriftWeight> weight_g;
    if (p.g) weight_g = std::make_shared<DriftWeight>(M, p.g, p.rho, tol);

    std::optional<IntegralVerdict> verdict_plain, verdict_g;
    auto plain = [&]() -> const IntegralVerdict& {
        if (!verdict_plain)
            verdict_plain =
                classify_improper(as_weight(weight_plain, "lambda"), ClassifyOptions{tol});
        return *verdict_plain;
    };
    auto tangency = [&]() -> const IntegralVerdict& {
        if (!verdict_g)
            verdict_g =
                classify_improper(as_weight(weight_g, "lambda_g"), ClassifyOptions{tol});
        return *verdict_g;
    };

    struct Fired {
        Rule rule;
        Outcome outcome;
    };
    std::vector<Fired> fired;

    // T1(A): tangency condition, M >= 0, int Lambda_g divergent -> parabolic.
    if (can_t1 && p.g && balance_non_negative(M.cls) &&
        tangency().outcome == IntegralOutcome::Divergent)
        fired.push_back({Rule::T1A, Outcome::Parabolic});
    // T1(B): M <= 0, int Lambda divergent -> parabolic.
    if (can_t1 && balance_non_positive(M.cls) &&
        plain().outcome == IntegralOutcome::Divergent)
        fired.push_back({Rule::T1B, Outcome::Parabolic});
    // T2(A): tangency condition, M <= 0, int Lambda_g finite -> hyperbolic.
    if (can_t2 && p.g && balance_non_positive(M.cls) &&
        tangency().outcome == IntegralOutcome::Finite)
        fired.push_back({Rule::T2A, Outcome::Hyperbolic});
    // T2(B): M >= 0, int Lambda finite -> hyperbolic.
    if (can_t2 && balance_non_negative(M.cls) &&
        plain().outcome == IntegralOutcome::Finite)
        fired.push_back({Rule::T2B, Outcome::Hyperbolic});

    cert.integral_plain = verdict_plain;
    cert.integral_tangency = verdict_g;

    if (!fired.empty()) {
        for (std::size_t i = 1; i < fired.size(); ++i) {
            if (fired[i].outcome != fired[0].outcome)
                throw ConsistencyError(
                    "classify: rules " + to_string(fired[0].rule) + " and " +
                    to_string(fired[i].rule) +
                    " both fire with opposite outcomes; the input hypotheses are inconsistent");
        }
        out.outcome = fired[0].outcome;
        cert.rule = fired[0].rule;
        // C = eta_w exactly: the characterization route.
        if (M.cls == SignClass::IdenticallyZero &&
            p.h.kind() == ProfileKind::EtaOfModel &&
            p.h_direction == ConvexityBound::Equal)
            cert.rule = Rule::Cor3;
        cert.checks.push_back({"integral_condition", "pass",
                               "decisive weight integral for rule " +
                                   to_string(cert.rule)});
        return out;
    }

    out.outcome = Outcome::Inconclusive;
    cert.rule = Rule::None;
    std::string why;
    if (!can_t1 && !can_t2)
        why = "no theorem branch matches the supplied bound directions";
    else if (M.cls == SignClass::Indefinite)
        why = "balance function changes sign";
    else
        why = "no decisive weight integral (conditions evaluated but not met)";
    cert.checks.push_back({"integral_condition", "fail", why});
    return out;
}

std::vector<Obligation> necessary_conditions(const RadialProblem& p, Outcome known,
                                             double tol) {
    if (known == Outcome::Inconclusive)
        throw DomainError("necessary_conditions: known type must be definite");

    BalanceReport M = balance(p.m, p.w, p.h);
    bool m_nonneg = balance_non_negative(M.cls);
    bool m_nonpos = balance_non_positive(M.cls);
    if (!m_nonneg && !m_nonpos)
        throw HypothesisMismatchError(
            "necessary_conditions: balance function has no definite sign");

    std::vector<Obligation> out;
    auto eval_weight = [&](bool with_g) -> IntegralVerdict {
        auto w = std::make_shared<DriftWeight>(M, with_g ? p.g : std::nullopt,
                                               p.rho, tol);
        return classify_improper(as_weight(w, with_g ? "lambda_g" : "lambda"),
                                 ClassifyOptions{tol});
    };

    if (known == Outcome::Hyperbolic) {
        // Cor. 2 pattern: curvature bounded below, C >= h.
        if (!curvature_has_lower(p.curvature) || !convexity_has_lower(p.h_direction))
            throw HypothesisMismatchError(
                "necessary_conditions: hyperbolic obligations need the lower "
                "curvature bound and C >= h");
        if (m_nonneg) {
            Obligation o;
            o.description =
                "either no positive radial tangency bound g exists, or for the "
                "supplied g: int Lambda_g < infinity";
            if (p.g) {
                IntegralVerdict v = eval_weight(true);
                o.evidence = v;
                o.status = v.outcome == IntegralOutcome::Finite ? Obligation::Status::Holds
                           : v.outcome == IntegralOutcome::Divergent
                               ? Obligation::Status::Fails
                               : Obligation::Status::NotEvaluable;
            }
            out.push_back(std::move(o));
        } else {
            Obligation o;
            o.description = "int Lambda < infinity";
            IntegralVerdict v = eval_weight(false);
            o.evidence = v;
            o.status = v.outcome == IntegralOutcome::Finite ? Obligation::Status::Holds
                       : v.outcome == IntegralOutcome::Divergent
                           ? Obligation::Status::Fails
                           : Obligation::Status::NotEvaluable;
            out.push_back(std::move(o));
        }
        return out;
    }

    // known == Parabolic: Cor. 1 pattern: curvature bounded above, C <= h.
    if (!curvature_has_upper(p.curvature) || !convexity_has_upper(p.h_direction))
        throw HypothesisMismatchError(
            "necessary_conditions: parabolic obligations need the upper "
            "curvature bound and C <= h");
    if (m_nonneg) {
        Obligation o;
        o.description = "int Lambda = infinity";
        IntegralVerdict v = eval_weight(false);
        o.evidence = v;
        o.status = v.outcome == IntegralOutcome::Divergent ? Obligation::Status::Holds
                   : v.outcome == IntegralOutcome::Finite ? Obligation::Status::Fails
                                                          : Obligation::Status::NotEvaluable;
        out.push_back(std::move(o));
    } else {
        Obligation o;
        o.description =
            "either no positive radial tangency bound g exists, or for the "
            "supplied g: int Lambda_g = infinity";
        if (p.g) {
            IntegralVerdict v = eval_weight(true);
            o.evidence = v;
            o.status = v.outcome == IntegralOutcome::Divergent ? Obligation::Status::Holds
                       : v.outcome == IntegralOutcome::Finite
                           ? Obligation::Status::Fails
                           : Obligation::Status::NotEvaluable;
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::optional<bool> mp2_equivalence_check(const RadialProblem& p, double tol) {
    if (!p.h.has_closed_antiderivative())
        throw DomainError("mp2_equivalence_check: h must be in a closed family");
    if (!p.w.closed_form())
        throw DomainError("mp2_equivalence_check: w must be in a closed family");

    BalanceReport M = balance(p.m, p.w, p.h);
    auto lambda = std::make_shared<DriftWeight>(M, std::nullopt, p.rho, tol);
    IntegralVerdict v1 =
        classify_improper(as_weight(lambda, "lambda"), ClassifyOptions{tol});

    // G^m / w^{m-1} with G = exp(int_rho^r h).
    RadialWeight mp2;
    WarpingDescriptor w = p.w;
    RadialProfile h = p.h;
    double m = p.m, rho = p.rho;
    double h_rho = h.antiderivative(rho);
    mp2.log_value = [w, h, m, h_rho](double r) {
        return m * (h.antiderivative(r) - h_rho) - (m - 1.0) * w.log_value(r);
    };
    mp2.rho = rho;
    mp2.exact = true;
    mp2.tail = w.log_tail().scaled(1.0 - m);
    mp2.tail.add(h.antiderivative_tail(), m);
    mp2.label = "G^m/w^(m-1)";
    IntegralVerdict v2 = classify_improper(mp2, ClassifyOptions{tol});

    if (v1.outcome == IntegralOutcome::Inconclusive ||
        v2.outcome == IntegralOutcome::Inconclusive)
        return std::nullopt;
    return v1.outcome == v2.outcome;
}

} // namespace parhyp
