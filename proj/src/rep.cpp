#include "qaos/rep.hpp"

#include <cmath>
#include <stdexcept>

namespace qaos {

namespace {
constexpr Complex kI{0.0, 1.0};
}

PolyFunction PolyFunction::monomial(int k, Complex scale) {
    PolyFunction f;
    f.coeffs.assign(static_cast<size_t>(k) + 1, Complex{0.0, 0.0});
    f.coeffs.back() = scale;
    return f;
}

Complex PolyFunction::eval(double x) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double PolyFunction::coeff_norm() const {
    double m = 0.0;
    for (const auto& ck : coeffs) m = std::max(m, std::abs(ck));
    return m;
}

PolyFunction operator+(const PolyFunction& f, const PolyFunction& g) {
    PolyFunction out;
    out.coeffs.resize(std::max(f.coeffs.size(), g.coeffs.size()), Complex{0.0, 0.0});
    for (size_t k = 0; k < f.coeffs.size(); ++k) out.coeffs[k] += f.coeffs[k];
    for (size_t k = 0; k < g.coeffs.size(); ++k) out.coeffs[k] += g.coeffs[k];
    return out;
}

PolyFunction operator-(const PolyFunction& f, const PolyFunction& g) {
    return f + (Complex{-1.0, 0.0} * g);
}

PolyFunction operator*(Complex s, const PolyFunction& f) {
    PolyFunction out = f;
    for (auto& ck : out.coeffs) ck *= s;
    return out;
}

namespace {

PolyFunction differentiate(const PolyFunction& f) {
    PolyFunction out;
    if (f.coeffs.size() <= 1) return out;
    out.coeffs.resize(f.coeffs.size() - 1);
    for (size_t k = 1; k < f.coeffs.size(); ++k)
        out.coeffs[k - 1] = static_cast<double>(k) * f.coeffs[k];
    return out;
}

// Multiply by a real quadratic q0 + q1 x + q2 x^2.
PolyFunction mul_quadratic(const PolyFunction& f, double q0, double q1, double q2) {
    PolyFunction out;
    if (f.coeffs.empty()) return out;
    out.coeffs.assign(f.coeffs.size() + 2, Complex{0.0, 0.0});
    for (size_t k = 0; k < f.coeffs.size(); ++k) {
        out.coeffs[k] += q0 * f.coeffs[k];
        out.coeffs[k + 1] += q1 * f.coeffs[k];
        out.coeffs[k + 2] += q2 * f.coeffs[k];
    }
    return out;
}

}  // namespace

PolyFunction apply_generator(GeneratorId id, const BetaVector& beta,
                             const PolyFunction& f) {
    switch (id) {
        case GeneratorId::X0:
            return kI * differentiate(f);
        case GeneratorId::X1:
            return mul_quadratic(f, beta.beta1, beta.beta2, 0.5 * beta.beta3);
        case GeneratorId::X2:
            return mul_quadratic(f, beta.beta2, beta.beta3, 0.0);
        case GeneratorId::X3:
            return mul_quadratic(f, beta.beta3, 0.0, 0.0);
    }
    throw std::logic_error("apply_generator: bad id");
}

double commutator_defect(GeneratorId a, GeneratorId b, const BetaVector& beta,
                         int degree) {
    if (degree < 0) throw std::invalid_argument("commutator_defect: degree >= 0");

    auto expected = [&](const PolyFunction& f) -> PolyFunction {
        if (a == GeneratorId::X0 && b == GeneratorId::X1)
            return kI * apply_generator(GeneratorId::X2, beta, f);
        if (a == GeneratorId::X1 && b == GeneratorId::X0)
            return Complex{-1.0, 0.0} * (kI * apply_generator(GeneratorId::X2, beta, f));
        if (a == GeneratorId::X0 && b == GeneratorId::X2)
            return kI * apply_generator(GeneratorId::X3, beta, f);
        if (a == GeneratorId::X2 && b == GeneratorId::X0)
            return Complex{-1.0, 0.0} * (kI * apply_generator(GeneratorId::X3, beta, f));
        return PolyFunction{};
    };

    double defect = 0.0;
    for (int k = 0; k <= degree; ++k) {
        const PolyFunction f = PolyFunction::monomial(k);
        const PolyFunction ab = apply_generator(a, beta, apply_generator(b, beta, f));
        const PolyFunction ba = apply_generator(b, beta, apply_generator(a, beta, f));
        defect = std::max(defect, ((ab - ba) - expected(f)).coeff_norm());
    }
    return defect;
}

Complex irrep_apply(const GroupElement& g, const BetaVector& beta,
                    const std::function<Complex(double)>& phi, double x) {
    const double phase = beta.beta1 * g.b1 + beta.beta2 * (g.b2 + g.b1 * x) +
                         beta.beta3 * (g.b3 + g.b2 * x + 0.5 * g.b1 * x * x);
    return std::exp(-kI * phase) * phi(x + g.a);
}

namespace {

// Coefficient action of S_t: (S_t f)(x) = sqrt(t) f(t x) => c_k -> sqrt(t) t^k c_k.
PolyFunction dilate(const PolyFunction& f, double t) {
    PolyFunction out = f;
    double factor = std::sqrt(t);
    for (auto& ck : out.coeffs) {
        ck *= factor;
        factor *= t;
    }
    return out;
}

}  // namespace

double scale_conjugate_defect(GeneratorId id, const BetaVector& beta, double t,
                              int degree) {
    if (!(t > 0.0)) throw std::invalid_argument("scale_conjugate_defect: t > 0");
    if (degree < 0) throw std::invalid_argument("scale_conjugate_defect: degree >= 0");

    const BetaVector beta_t = scale_beta(beta, t);
    const double weight[4] = {1.0, 1.0, 2.0, 3.0};
    const int w = static_cast<int>(weight[static_cast<int>(id)]);

    double defect = 0.0;
    for (int k = 0; k <= degree; ++k) {
        const PolyFunction f = PolyFunction::monomial(k);
        const PolyFunction lhs =
            dilate(apply_generator(id, beta, dilate(f, 1.0 / t)), t);
        const PolyFunction rhs =
            Complex{std::pow(t, -w), 0.0} * apply_generator(id, beta_t, f);
        defect = std::max(defect, (lhs - rhs).coeff_norm());
    }
    return defect;
}

}  // namespace qaos
