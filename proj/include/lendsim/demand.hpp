#pragma once

#include "lendsim/pricing.hpp"

namespace lendsim {

// Logistic price-sensitivity curve anchored at the reference offer priced at
// the reference spread. steepness must be negative so that better offers are
// accepted more often.
struct DemandCurve {
    double steepness = -30.0;       // phi
    double reference_spread = 0.0;  // s0, per period
};

DemandCurve make_demand_curve(double steepness, double reference_spread);

// Reference offer: the plain anticipation priced at the reference spread.
double reference_anticipation(const ReceivableSchedule& schedule, double default_prob,
                              double base_rate, const DemandCurve& curve);

// f(A) = 1 / (1 + e^(phi (A - A0) / A0)).
double acceptance_probability(const DemandCurve& curve, double offer,
                              double reference_offer);

}  // namespace lendsim
