#include "qaos/group.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qaos {

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    // Coordinate form of the matrix product of the two representatives.
    return {
        g.a + h.a,
        g.b1 + h.b1,
        g.b2 + h.b2 + g.a * h.b1,
        g.b3 + h.b3 + g.a * h.b2 + 0.5 * g.a * g.a * h.b1,
    };
}

GroupElement inverse(const GroupElement& g) {
    return {
        -g.a,
        -g.b1,
        -g.b2 + g.a * g.b1,
        -g.b3 + g.a * g.b2 - 0.5 * g.a * g.a * g.b1,
    };
}

GroupElement embed_heisenberg(double a, double b1h, double b2h) {
    return {a, 0.0, b1h, b2h};
}

Eigen::Matrix4d matrix_of(const GroupElement& g) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 1) = g.a;
    m(0, 2) = 0.5 * g.a * g.a;
    m(0, 3) = g.b3;
    m(1, 2) = g.a;
    m(1, 3) = g.b2;
    m(2, 3) = g.b1;
    return m;
}

double casimir_c(const BetaVector& beta) {
    return 2.0 * beta.beta1 * beta.beta3 - beta.beta2 * beta.beta2;
}

BetaVector translate_beta(const BetaVector& beta, double a) {
    return {
        beta.beta1 + a * beta.beta2 + 0.5 * a * a * beta.beta3,
        beta.beta2 + a * beta.beta3,
        beta.beta3,
    };
}

BetaVector scale_beta(const BetaVector& beta, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("scale_beta: t must be positive");
    return {t * beta.beta1, t * t * beta.beta2, t * t * t * beta.beta3};
}

Eigen::Matrix4d AutomorphismMatrix::matrix() const {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = g00;
    m(0, 1) = g01;
    m(0, 2) = g02;
    m(0, 3) = g03;
    m(1, 1) = g11;
    m(1, 2) = g12;
    m(1, 3) = g13;
    m(2, 2) = g00 * g11;
    m(2, 3) = g00 * g12;
    m(3, 3) = g00 * g00 * g11;
    return m;
}

double automorphism_structure_defect(const AutomorphismMatrix& aut) {
    const Eigen::Matrix4d g = aut.matrix();

    // Structure constants: [X_j, X_k] = i f_{jk}^m X_m with
    // f_{01}^2 = 1, f_{02}^3 = 1 (antisymmetric), all others zero.
    auto bracket = [](int j, int k, std::array<double, 4>& out) {
        out = {0, 0, 0, 0};
        if (j == 0 && k == 1) out[2] = 1;
        if (j == 1 && k == 0) out[2] = -1;
        if (j == 0 && k == 2) out[3] = 1;
        if (j == 2 && k == 0) out[3] = -1;
    };

    double defect = 0.0;
    for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) {
            // [Y_p, Y_q] expanded on the X basis, where Y_p = g(p,j) X_j.
            std::array<double, 4> lhs = {0, 0, 0, 0};
            std::array<double, 4> br;
            for (int j = 0; j < 4; ++j) {
                for (int k = 0; k < 4; ++k) {
                    if (g(p, j) == 0.0 || g(q, k) == 0.0) continue;
                    bracket(j, k, br);
                    for (int m = 0; m < 4; ++m) lhs[m] += g(p, j) * g(q, k) * br[m];
                }
            }
            // Expected: i Y_2 for (0,1), i Y_3 for (0,2), zero otherwise.
            std::array<double, 4> rhs = {0, 0, 0, 0};
            if (p == 0 && q == 1)
                for (int m = 0; m < 4; ++m) rhs[m] = g(2, m);
            if (p == 0 && q == 2)
                for (int m = 0; m < 4; ++m) rhs[m] = g(3, m);
            for (int m = 0; m < 4; ++m)
                defect = std::max(defect, std::abs(lhs[m] - rhs[m]));
        }
    }
    return defect;
}

}  // namespace qaos
