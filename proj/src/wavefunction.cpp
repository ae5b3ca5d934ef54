#include "qaos/wavefunction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qaos {

namespace {

struct Pieces {
    double poly;     // p(T) with T = b2 + b3|x|
    double dpoly;    // p'(T)
    double ddpoly;   // p''(T)
    double expo;     // g(|x|) = b1|x| + b2 x^2/2 + b3 |x|^3/6
    double x1;       // b1 + b2|x| + b3 x^2 / 2
    double x2;       // b2 + b3|x|
};

Pieces assemble(const WavefunctionSpec& w, double ax) {
    const double b1 = w.beta.beta1, b2 = w.beta.beta2, b3 = w.beta.beta3;
    const double t = b2 + b3 * ax;
    double p = 0.0, dp = 0.0, ddp = 0.0;
    for (size_t k = w.solution.coeffs.size(); k-- > 0;) {
        ddp = ddp * t + 2.0 * dp;
        dp = dp * t + p;
        p = p * t + w.solution.coeffs[k];
    }
    return {p, dp, ddp,
            b1 * ax + 0.5 * b2 * ax * ax + b3 * ax * ax * ax / 6.0,
            b1 + b2 * ax + 0.5 * b3 * ax * ax, t};
}

double parity_sign(const WavefunctionSpec& w, double x) {
    if (w.solution.parity == Parity::Even) return 1.0;
    return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

}  // namespace

WavefunctionSpec WavefunctionSpec::from_solution(const QESSolution& sol, double beta1,
                                                 double beta3) {
    WavefunctionSpec w;
    w.solution = sol;
    w.beta = {beta1, sol.beta2, beta3};
    return w;
}

double eval_psi(const WavefunctionSpec& w, double x) {
    const double sign = parity_sign(w, x);
    if (sign == 0.0) return 0.0;
    const Pieces pc = assemble(w, std::abs(x));
    if (pc.expo > 600.0) {
        // Underflow-safe tail: log |Psi| = log|p| - g.
        const double lp = std::log(std::max(std::abs(pc.poly),
                                            std::numeric_limits<double>::min()));
        if (lp - pc.expo < -745.0) return 0.0;
        return sign * w.normalization * std::copysign(std::exp(lp - pc.expo), pc.poly);
    }
    return sign * w.normalization * pc.poly * std::exp(-pc.expo);
}

double eval_psi_deriv(const WavefunctionSpec& w, double x) {
    const double ax = std::abs(x);
    const Pieces pc = assemble(w, ax);
    const double b3 = w.beta.beta3;
    // d/dx [p(T) e^{-g}] = (b3 p'(T) - X1 p(T)) e^{-g} for x > 0.
    const double half_line = (b3 * pc.dpoly - pc.x1 * pc.poly) * std::exp(-pc.expo);
    if (x > 0.0) return w.normalization * half_line;
    if (x < 0.0)
        return w.normalization *
               (w.solution.parity == Parity::Even ? -half_line : half_line);
    // One-sided limit at 0: even specs report the x->0+ value; odd specs are
    // differentiable with Psi'(0) = that same value.
    return w.normalization * half_line;
}

namespace {

double residual_terms(const WavefunctionSpec& w, double x, double* scale_out) {
    const double ax = std::abs(x);
    const Pieces pc = assemble(w, ax);
    const double b3 = w.beta.beta3;
    const int n = static_cast<int>(w.solution.coeffs.size()) - 1;
    const double alpha = -(static_cast<double>(n) + 1.0);
    const double e = w.solution.energy;
    const double weight = std::exp(-pc.expo);

    const double t1 = -b3 * b3 * pc.ddpoly;
    const double t2 = 2.0 * pc.x1 * b3 * pc.dpoly;
    const double t3 = ((1.0 + alpha) * pc.x2 - 2.0 * e) * pc.poly;
    if (scale_out)
        *scale_out = (std::abs(t1) + std::abs(t2) + std::abs(t3)) * weight +
                     std::numeric_limits<double>::min();
    return std::abs((t1 + t2 + t3) * weight) * w.normalization;
}

}  // namespace

double schrodinger_residual(const WavefunctionSpec& w, double x) {
    if (x == 0.0)
        throw std::invalid_argument("schrodinger_residual: x = 0 is the matching point");
    return residual_terms(w, x, nullptr);
}

double schrodinger_residual_relative(const WavefunctionSpec& w, double x) {
    if (x == 0.0)
        throw std::invalid_argument("schrodinger_residual: x = 0 is the matching point");
    double scale = 0.0;
    const double r = residual_terms(w, x, &scale);
    return r / (scale * std::max(w.normalization, std::numeric_limits<double>::min()));
}

NodeCount count_nodes(const WavefunctionSpec& w, double range, int samples) {
    if (samples < 1000)
        throw std::invalid_argument("count_nodes: need at least 1000 samples");
    if (!(range > 0.0)) throw std::invalid_argument("count_nodes: range must be positive");

    const double step = 2.0 * range / samples;
    double peak = 0.0;
    std::vector<double> vals(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        // Midpoint grid: never lands exactly on x = 0.
        vals[static_cast<size_t>(i)] = eval_psi(w, -range + (i + 0.5) * step);
        peak = std::max(peak, std::abs(vals[static_cast<size_t>(i)]));
    }
    NodeCount out;
    if (peak == 0.0) return out;

    const double touch_tol = 1e-10 * peak;
    int last_sign = 0;
    double last_x = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = -range + (i + 0.5) * step;
        const double v = vals[static_cast<size_t>(i)];
        const int s = v > touch_tol ? 1 : (v < -touch_tol ? -1 : 0);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) {
            // Refine the crossing once by bisection for a well-separated count.
            double lo = last_x, hi = x;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (eval_psi(w, mid) * static_cast<double>(last_sign) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            ++out.nodes;
        }
        last_sign = s;
        last_x = x;
    }

    // Even-order touching: a local minimum of |Psi| that reaches ~0 without a
    // sign change.  Refine each same-sign dip before judging it.
    auto abs_at = [&](double x) { return std::abs(eval_psi(w, x)); };
    for (int i = 1; i + 1 < samples; ++i) {
        const double a = std::abs(vals[static_cast<size_t>(i) - 1]);
        const double b = std::abs(vals[static_cast<size_t>(i)]);
        const double c = std::abs(vals[static_cast<size_t>(i) + 1]);
        if (!(b < a && b <= c) || b <= touch_tol) continue;
        if (vals[static_cast<size_t>(i) - 1] * vals[static_cast<size_t>(i) + 1] <= 0.0)
            continue;
        double lo = -range + (i - 0.5) * step, hi = -range + (i + 1.5) * step;
        for (int it = 0; it < 100; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (abs_at(m1) < abs_at(m2))
                hi = m2;
            else
                lo = m1;
        }
        if (abs_at(0.5 * (lo + hi)) <= 1e-8 * peak) out.tangential_flag = true;
    }
    return out;
}

double normalize_arctan(WavefunctionSpec& w, int grid_points) {
    if (grid_points < 100)
        throw std::invalid_argument("normalize_arctan: need at least 100 panels");
    int panels = grid_points;
    if (panels % 2 != 0) ++panels;

    const double saved = w.normalization;
    w.normalization = 1.0;
    const double half_pi = std::asin(1.0);
    const double h = 2.0 * half_pi / panels;
    auto f = [&](double y) {
        const double psi = eval_psi(w, std::tan(y));
        return psi * psi;
    };
    double integral = f(-half_pi) + f(half_pi);
    for (int i = 1; i < panels; ++i)
        integral += (i % 2 == 1 ? 4.0 : 2.0) * f(-half_pi + i * h);
    integral *= h / 3.0;
    if (!(integral > 0.0)) {
        w.normalization = saved;
        throw std::invalid_argument("normalize_arctan: wavefunction is not normalizable");
    }
    w.normalization = 1.0 / std::sqrt(integral);
    return w.normalization;
}

}  // namespace qaos
