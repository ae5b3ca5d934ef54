#include "qaos/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qaos {

double eval_potential(const PotentialParams& p, double x) {
    const double ax = std::abs(x);
    const double x1 = p.beta.beta1 + p.beta.beta2 * ax + 0.5 * p.beta.beta3 * x * x;
    const double x2 = p.beta.beta2 + p.beta.beta3 * ax;
    return 0.5 * (x1 * x1 + p.alpha * x2);
}

double MonomialForm::eval(double x) const {
    const double ax = std::abs(x);
    return v0 + a1 * ax + b2 * x * x + c3 * ax * ax * ax + d4 * x * x * x * x;
}

MonomialForm to_monomial(const PotentialParams& p) {
    const double b1 = p.beta.beta1, b2 = p.beta.beta2, b3 = p.beta.beta3;
    MonomialForm m;
    m.v0 = 0.5 * (b1 * b1 + p.alpha * b2);
    m.a1 = b1 * b2 + 0.5 * p.alpha * b3;
    m.b2 = 0.5 * (b2 * b2 + b1 * b3);
    m.c3 = 0.5 * b2 * b3;
    m.d4 = b3 * b3 / 8.0;
    return m;
}

double slope_at_zero_plus(const PotentialParams& p) {
    return p.beta.beta1 * p.beta.beta2 + 0.5 * p.alpha * p.beta.beta3;
}

WellReport classify_well(const PotentialParams& p, double scan_range) {
    if (!(scan_range > 0.0))
        throw std::invalid_argument("classify_well: scan_range must be positive");

    const int n = 10000;
    const double h = 2.0 * scan_range / n;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = eval_potential(p, -scan_range + i * h);

    // Plateau detection: consecutive equal samples away from roundoff noise.
    const double scale = [&] {
        double s = 0.0;
        for (double vi : v) s = std::max(s, std::abs(vi));
        return std::max(s, 1.0);
    }();
    const double flat_tol = 1e-13 * scale;

    WellReport report;
    int plateau_run = 0;
    for (int i = 1; i <= n; ++i) {
        if (std::abs(v[i] - v[i - 1]) <= flat_tol)
            ++plateau_run;
        else
            plateau_run = 0;
        if (plateau_run >= 3) report.plateau_warning = true;
    }

    // Strict interior minima, refined by ternary search in the bracketing cell.
    auto refine = [&](double lo, double hi) {
        for (int it = 0; it < 80; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (eval_potential(p, m1) < eval_potential(p, m2))
                hi = m2;
            else
                lo = m1;
        }
        return 0.5 * (lo + hi);
    };

    double last_min_x = -2.0 * scan_range;
    for (int i = 1; i < n; ++i) {
        if (v[i] < v[i - 1] - flat_tol && v[i] < v[i + 1] - flat_tol) {
            const double xm =
                refine(-scan_range + (i - 1) * h, -scan_range + (i + 1) * h);
            if (xm - last_min_x > 2.0 * h) {
                ++report.minima;
                last_min_x = xm;
            }
        }
    }

    if (report.plateau_warning || report.minima >= 3)
        report.wells = WellClass::MultiWell;
    else if (report.minima == 2)
        report.wells = WellClass::DoubleWell;
    else
        report.wells = WellClass::SingleWell;
    return report;
}

}  // namespace qaos
