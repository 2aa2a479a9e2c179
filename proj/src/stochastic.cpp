#include "parhyp/stochastic.hpp"

namespace parhyp {

HittingEstimate simulate_hitting(const DiffusionSpec& d, const SimConfig& c,
                                 std::vector<PathExit>* exit_log) {
    return simulate_hitting_with(d.drift, c, exit_log);
}

double estimate_escape(const ModelSpace& model, const SimConfig& c, double R_far) {
    if (!(R_far > c.rho)) throw DomainError("estimate_escape: R_far must exceed rho");
    WarpingDescriptor w = model.warping;
    double mm = model.dimension;
    SimConfig cfg = c;
    cfg.R = R_far;
    return simulate_hitting_with(
               [&](double r) { return (mm - 1.0) * w.eta(r); }, cfg)
        .p_hat;
}

} // namespace parhyp
