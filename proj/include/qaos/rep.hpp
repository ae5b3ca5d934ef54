#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qaos/group.hpp"

namespace qaos {

using Complex = std::complex<double>;

/// Polynomial with complex coefficients, f(x) = sum_k coeffs[k] x^k.
/// An empty coefficient list is the zero polynomial.
struct PolyFunction {
    std::vector<Complex> coeffs;

    PolyFunction() = default;
    explicit PolyFunction(std::vector<Complex> c) : coeffs(std::move(c)) {}

    static PolyFunction monomial(int k, Complex scale = 1.0);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Complex eval(double x) const;
    /// Largest coefficient magnitude (0 for the zero polynomial).
    double coeff_norm() const;
};

PolyFunction operator+(const PolyFunction& f, const PolyFunction& g);
PolyFunction operator-(const PolyFunction& f, const PolyFunction& g);
PolyFunction operator*(Complex s, const PolyFunction& f);

enum class GeneratorId { X0, X1, X2, X3 };

/// Generator action on polynomial coefficients (exact):
///   X0 f = i f',  X1 f = (b1 + b2 x + b3 x^2/2) f,
///   X2 f = (b2 + b3 x) f,  X3 f = b3 f.
PolyFunction apply_generator(GeneratorId id, const BetaVector& beta,
                             const PolyFunction& f);

/// Max coefficient norm of ([X_A, X_B] - expected) over the monomial basis
/// 1, x, ..., x^degree; expected bracket values are iX2, iX3 or 0.
double commutator_defect(GeneratorId a, GeneratorId b, const BetaVector& beta,
                         int degree);

/// Unitary irreducible representation acting on a sampled function:
///   (U_g phi)(x) = exp(-i [b1 beta1 + beta2 (b2 + b1 x)
///                          + beta3 (b3 + b2 x + b1 x^2 / 2)]) phi(x + a).
Complex irrep_apply(const GroupElement& g, const BetaVector& beta,
                    const std::function<Complex(double)>& phi, double x);

/// Max coefficient deviation of S_t X_k(beta) S_t^{-1} - t^{-w_k} X_k(beta_t)
/// on the monomial basis, with weights (w0..w3) = (1,1,2,3) and
/// (S_t f)(x) = sqrt(t) f(t x).  Zero for every generator.
double scale_conjugate_defect(GeneratorId id, const BetaVector& beta, double t,
                              int degree);

}  // namespace qaos
