#pragma once

#include "qaos/group.hpp"
#include "qaos/qes.hpp"

namespace qaos {

/// Closed-form eigenfunction assembled from a solved level:
///   Psi(x) = sign(x)^parity * sum_n a_n (b2 + b3|x|)^n
///            * exp(-(b1|x| + b2 x^2/2 + b3 |x|^3/6)),
/// parity exponent 0 (even) or 1 (odd).
struct WavefunctionSpec {
    QESSolution solution;
    BetaVector beta;              // labels with the solved beta2
    double normalization = 1.0;   // multiplies the raw closed form

    static WavefunctionSpec from_solution(const QESSolution& sol, double beta1,
                                          double beta3);
};

double eval_psi(const WavefunctionSpec& w, double x);

/// Analytic first derivative dPsi/dx (one-sided at x = 0).
double eval_psi_deriv(const WavefunctionSpec& w, double x);

/// |  -Psi'' + 2V Psi - 2E Psi  | with analytic derivatives of the
/// polynomial-times-exponential form; x must be nonzero (the kink at the
/// origin is the matching condition's business, not the ODE's).
double schrodinger_residual(const WavefunctionSpec& w, double x);

/// Same residual divided by the sum of the magnitudes of its constituent
/// terms; measures pure cancellation quality.
double schrodinger_residual_relative(const WavefunctionSpec& w, double x);

struct NodeCount {
    int nodes = 0;
    bool tangential_flag = false;  // even-order touching zeros seen (not counted)
};

/// Sign changes of Psi on (-range, range) over a midpoint grid with one
/// bisection refinement per bracket; requires samples >= 1000.
NodeCount count_nodes(const WavefunctionSpec& w, double range, int samples);

/// Computes and stores the constant kappa with
/// int_{-pi/2}^{pi/2} (kappa Psi(tan y))^2 dy = 1 by composite Simpson
/// quadrature on grid_points panels (>= 100).  Returns kappa.
double normalize_arctan(WavefunctionSpec& w, int grid_points);

}  // namespace qaos
