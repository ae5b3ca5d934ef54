#include "qaos/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qaos {

std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("characteristic_polynomial: square matrix");

    // Faddeev-LeVerrier: p(l) = l^n + c_{n-1} l^{n-1} + ... + c_0.
    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    c[n] = 1.0;
    Eigen::MatrixXd mk = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        mk = m * mk;
        const double ck = -mk.trace() / static_cast<double>(k);
        c[n - k] = ck;
        mk.diagonal().array() += ck;
    }
    return c;
}

double polynomial_eval(std::span<const double> a, double x) {
    double acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

double polynomial_deriv_eval(std::span<const double> a, double x) {
    double acc = 0.0;
    for (size_t k = a.size(); k-- > 1;)
        acc = acc * x + static_cast<double>(k) * a[k];
    return acc;
}

}  // namespace

RealRoots real_polynomial_roots(std::span<const double> coeffs) {
    // Strip trailing (near-)zero leading coefficients.
    size_t deg = coeffs.size();
    double scale = 0.0;
    for (double ck : coeffs) scale = std::max(scale, std::abs(ck));
    if (scale == 0.0) throw std::invalid_argument("real_polynomial_roots: zero polynomial");
    while (deg > 1 && std::abs(coeffs[deg - 1]) <= 1e-300 * scale) --deg;
    RealRoots out;
    if (deg <= 1) return out;  // constant: no roots

    const size_t n = deg - 1;  // polynomial degree
    const double lead = coeffs[n];
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                      static_cast<Eigen::Index>(n));
    for (size_t k = 0; k + 1 < n; ++k) companion(static_cast<Eigen::Index>(k) + 1,
                                                 static_cast<Eigen::Index>(k)) = 1.0;
    for (size_t k = 0; k < n; ++k)
        companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n) - 1) =
            -coeffs[k] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("real_polynomial_roots: eigensolver failed");

    std::vector<double> reals;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const auto z = es.eigenvalues()[k];
        if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z.real()))) {
            ++out.complex_count;
            continue;
        }
        double r = z.real();
        // One Newton polish step (guarded against tiny derivatives).
        const double d = polynomial_deriv_eval(coeffs.subspan(0, deg), r);
        if (d != 0.0) {
            const double step = polynomial_eval(coeffs.subspan(0, deg), r) / d;
            if (std::abs(step) < 1.0 + std::abs(r)) r -= step;
        }
        reals.push_back(r);
    }
    std::sort(reals.begin(), reals.end());
    for (double r : reals) {
        if (!out.roots.empty() && std::abs(r - out.roots.back()) <= 1e-9 * (1.0 + std::abs(r)))
            continue;
        out.roots.push_back(r);
    }
    return out;
}

}  // namespace qaos
