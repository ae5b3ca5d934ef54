#pragma once

#include <Eigen/Dense>

namespace qaos {

/// Element (a, b1, b2, b3) of the quartic nilpotent group, realized as the
/// 4x4 unipotent upper-triangular matrix
///   [1  a  a^2/2  b3]
///   [0  1  a      b2]
///   [0  0  1      b1]
///   [0  0  0      1 ]
struct GroupElement {
    double a = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
inline GroupElement identity_element() { return {}; }

/// Heisenberg subgroup embedding: (a, b1, b2)_H -> (a, 0, b1, b2).
GroupElement embed_heisenberg(double a, double b1h, double b2h);

/// 4x4 matrix representative of a group element.
Eigen::Matrix4d matrix_of(const GroupElement& g);

/// Irreducible representation labels (beta1, beta2, beta3); physical
/// potentials require beta3 > 0.
struct BetaVector {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double beta3 = 0.0;
};

/// Value of the quadratic Casimir, c = 2 beta1 beta3 - beta2^2.
double casimir_c(const BetaVector& beta);

/// Labels of the translate-equivalent representation,
/// (beta1 + a beta2 + a^2 beta3 / 2, beta2 + a beta3, beta3).
BetaVector translate_beta(const BetaVector& beta, double a);

/// Dilation action on labels, (t beta1, t^2 beta2, t^3 beta3); t must be > 0.
BetaVector scale_beta(const BetaVector& beta, double t);

/// Lie-algebra automorphism with the constrained triangular shape: the free
/// entries are the first two rows; rows 2 and 3 are determined by them.
struct AutomorphismMatrix {
    double g00 = 1.0, g01 = 0.0, g02 = 0.0, g03 = 0.0;
    double g11 = 1.0, g12 = 0.0, g13 = 0.0;

    Eigen::Matrix4d matrix() const;
};

/// Max deviation of the transformed generators from the bracket relations
/// [X0,X1] = iX2, [X0,X2] = iX3 (all other brackets zero); 0 for a genuine
/// automorphism.
double automorphism_structure_defect(const AutomorphismMatrix& aut);

}  // namespace qaos
