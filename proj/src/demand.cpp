#include "lendsim/demand.hpp"

#include <cmath>
#include <stdexcept>

namespace lendsim {

DemandCurve make_demand_curve(double steepness, double reference_spread) {
    if (!(steepness < 0.0) || !std::isfinite(steepness)) {
        throw std::invalid_argument("demand steepness (phi) must be negative");
    }
    if (reference_spread < 0.0 || !std::isfinite(reference_spread)) {
        throw std::invalid_argument("reference spread must be non-negative");
    }
    return DemandCurve{steepness, reference_spread};
}

double reference_anticipation(const ReceivableSchedule& schedule, double default_prob,
                              double base_rate, const DemandCurve& curve) {
    return anticipation(schedule, default_prob,
                        RateSet{base_rate, curve.reference_spread});
}

double acceptance_probability(const DemandCurve& curve, double offer,
                              double reference_offer) {
    if (!(reference_offer > 0.0)) {
        throw std::invalid_argument("reference offer must be positive");
    }
    if (!std::isfinite(offer)) {
        throw std::invalid_argument("offer must be finite");
    }
    const double x = curve.steepness * (offer - reference_offer) / reference_offer;
    return 1.0 / (1.0 + std::exp(x));
}

}  // namespace lendsim
