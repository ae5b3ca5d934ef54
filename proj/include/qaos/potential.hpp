#pragma once

#include "qaos/group.hpp"

namespace qaos {

/// Parameters of the spatially symmetric quartic potential
///   V(x) = (1/2) [ (b1 + b2|x| + b3 x^2/2)^2 + alpha (b2 + b3|x|) ].
struct PotentialParams {
    double alpha = 0.0;
    BetaVector beta;
};

/// Monomial coefficients of the same potential,
///   V(x) = v0 + a1 |x| + b2 x^2 + c3 |x|^3 + d4 x^4.
struct MonomialForm {
    double v0 = 0.0;
    double a1 = 0.0;
    double b2 = 0.0;
    double c3 = 0.0;
    double d4 = 0.0;

    double eval(double x) const;
};

double eval_potential(const PotentialParams& p, double x);
MonomialForm to_monomial(const PotentialParams& p);

/// One-sided slope dV/dx as x -> 0+ (equals the |x| coefficient a1); the
/// x -> 0- slope is its negation.
double slope_at_zero_plus(const PotentialParams& p);

enum class WellClass { SingleWell, DoubleWell, MultiWell };

struct WellReport {
    WellClass wells = WellClass::SingleWell;
    int minima = 0;
    bool plateau_warning = false;
};

/// Counts strict local minima of V on [-scan_range, scan_range] with a dense
/// grid scan plus local refinement; flat plateaus are flagged and reported as
/// MultiWell.
WellReport classify_well(const PotentialParams& p, double scan_range);

}  // namespace qaos
