#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace qaos {

/// Coefficients (ascending, monic) of det(lambda I - M) via the
/// Faddeev-LeVerrier recurrence.  Sized for the small matrices that occur
/// here (dimension <= a few dozen).
std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& m);

struct RealRoots {
    std::vector<double> roots;   // ascending, deduplicated
    int complex_count = 0;       // discarded non-real roots (conjugates counted)
};

/// Real roots of a polynomial given by ascending coefficients.  Roots come
/// from the companion-matrix eigenvalues, polished by one Newton step;
/// non-real values are filtered at |Im| <= 1e-9 (1 + |Re|) and near-equal
/// real roots merged at 1e-9 spacing.
RealRoots real_polynomial_roots(std::span<const double> ascending_coeffs);

/// Polynomial evaluation, ascending coefficients.
double polynomial_eval(std::span<const double> ascending_coeffs, double x);

}  // namespace qaos
