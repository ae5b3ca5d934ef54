#include "qaos/qes.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace qaos {

double alpha_for(int n) {
    if (n < 0) throw std::invalid_argument("alpha_for: N must be nonnegative");
    return -(static_cast<double>(n) + 1.0);
}

Eigen::MatrixXd build_matrix(int n, double c, double beta3) {
    if (n < 0) throw std::invalid_argument("build_matrix: N must be nonnegative");
    if (!(beta3 > 0.0)) throw std::invalid_argument("build_matrix: beta3 must be positive");
    const int dim = n + 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int row = 0; row < dim; ++row) {
        if (row - 1 >= 0) m(row, row - 1) = -0.5 * (n + 1 - row);
        if (row + 1 < dim) m(row, row + 1) = 0.5 * c * (row + 1);
        if (row + 2 < dim) m(row, row + 2) = -0.5 * beta3 * beta3 * (row + 2) * (row + 1);
    }
    return m;
}

EnergyRoots energy_roots(const Eigen::MatrixXd& m) {
    const std::vector<double> poly = characteristic_polynomial(m);
    const RealRoots rr = real_polynomial_roots(poly);
    return {rr.roots, rr.complex_count};
}

std::vector<double> eigen_coefficients(const Eigen::MatrixXd& m, double energy) {
    const int dim = static_cast<int>(m.rows());
    const int n = dim - 1;

    // Row N couples only a_{N-1}; each row below determines the next lower
    // coefficient since the subdiagonal entries -(N+1-row)/2 never vanish.
    std::vector<double> a(static_cast<size_t>(dim), 0.0);
    a[n] = 1.0;
    for (int row = n; row >= 1; --row) {
        double rhs = energy * a[row];
        if (row + 1 <= n) rhs -= m(row, row + 1) * a[row + 1];
        if (row + 2 <= n) rhs -= m(row, row + 2) * a[row + 2];
        a[row - 1] = rhs / m(row, row - 1);
    }

    // Row 0 is the eigenvalue condition; check it.
    double r0 = -energy * a[0];
    if (1 <= n) r0 += m(0, 1) * a[1];
    if (2 <= n) r0 += m(0, 2) * a[2];
    double amax = 0.0;
    for (double ak : a) amax = std::max(amax, std::abs(ak));
    const double scale = amax * (1.0 + std::abs(energy)) +
                         m.cwiseAbs().maxCoeff() * amax;
    if (std::abs(r0) > 1e-9 * std::max(1.0, scale)) {
        int multiplicity = 0;
        for (double root : energy_roots(m).roots)
            if (std::abs(root - energy) <= 1e-6 * (1.0 + std::abs(energy))) ++multiplicity;
        throw EigenvectorError(fmt::format(
            "eigen_coefficients: E={} is not an eigenvalue (residual {}, nearby root multiplicity {})",
            energy, r0, multiplicity));
    }
    return a;
}

double continuity_residual(std::span<const double> coeffs, const BetaVector& beta,
                           Parity parity) {
    const double b1 = beta.beta1, b2 = beta.beta2, b3 = beta.beta3;
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (parity == Parity::Odd) {
        double s = 0.0, p = 1.0;
        for (int k = 0; k <= n; ++k) {
            s += coeffs[k] * p;
            p *= b2;
        }
        return s;
    }
    double s = coeffs.empty() ? 0.0 : coeffs[0] * b1;
    double p = 1.0;  // b2^{k-1}
    for (int k = 1; k <= n; ++k) {
        s -= coeffs[k] * (k * b3 - b1 * b2) * p;
        p *= b2;
    }
    return s;
}

namespace {

double recursion_defect(std::span<const double> a, int n, double c, double beta3,
                        double energy) {
    // Four-term recursion with alpha = -(N+1), checked for every row
    // 0..N+1 with a_{-1} = a_{N+1} = a_{N+2} = 0.
    const double alpha = -(static_cast<double>(n) + 1.0);
    auto at = [&](int k) -> double {
        return (k >= 0 && k <= n) ? a[static_cast<size_t>(k)] : 0.0;
    };
    double worst = 0.0;
    for (int k = 0; k <= n + 1; ++k) {
        const double r = -(k + 2.0) * (k + 1.0) * beta3 * beta3 * at(k + 2) +
                         (k + 1.0) * c * at(k + 1) - 2.0 * energy * at(k) +
                         (alpha + k) * at(k - 1);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double matrix_residual_of(const Eigen::MatrixXd& m, std::span<const double> a,
                          double energy) {
    Eigen::VectorXd v(m.rows());
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = a[static_cast<size_t>(k)];
    const double num = (m * v - energy * v).cwiseAbs().maxCoeff();
    const double den = std::max(v.cwiseAbs().maxCoeff() * (1.0 + std::abs(energy)), 1e-300);
    return num / den;
}

}  // namespace

QESSolution make_solution(const QESProblem& prob, double energy, double beta2) {
    const BetaVector beta{prob.beta1, beta2, prob.beta3};
    const double c = casimir_c(beta);
    const Eigen::MatrixXd m = build_matrix(prob.n, c, prob.beta3);
    QESSolution sol;
    sol.energy = energy;
    sol.beta2 = beta2;
    sol.parity = prob.parity;
    sol.casimir = c;
    sol.coeffs = eigen_coefficients(m, energy);
    sol.matrix_residual = matrix_residual_of(m, sol.coeffs, energy);
    sol.continuity = continuity_residual(sol.coeffs, beta, prob.parity);
    sol.recursion_residual = recursion_defect(sol.coeffs, prob.n, c, prob.beta3, energy);
    return sol;
}

namespace {

struct BranchSample {
    std::vector<double> residuals;  // residual of the k-th ascending root
    std::vector<double> energies;
    int root_count = 0;
};

BranchSample sample_branches(const QESProblem& prob, double beta2) {
    const BetaVector beta{prob.beta1, beta2, prob.beta3};
    const Eigen::MatrixXd m = build_matrix(prob.n, casimir_c(beta), prob.beta3);
    BranchSample s;
    const EnergyRoots roots = energy_roots(m);
    s.root_count = static_cast<int>(roots.roots.size());
    for (double e : roots.roots) {
        std::vector<double> a;
        try {
            a = eigen_coefficients(m, e);
        } catch (const EigenvectorError&) {
            s.energies.push_back(e);
            s.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        s.energies.push_back(e);
        s.residuals.push_back(continuity_residual(a, beta, prob.parity));
    }
    return s;
}

}  // namespace

SolveResult solve_qes(const QESProblem& prob, const SolveOptions& opts) {
    if (!(prob.beta3 > 0.0)) throw std::invalid_argument("solve_qes: beta3 must be positive");
    if (prob.n < 0) throw std::invalid_argument("solve_qes: N must be nonnegative");

    SolveResult result;
    const double half_width = 10.0 * prob.beta1 * prob.beta1 + 10.0;
    result.beta2_min = opts.bracket_override ? opts.beta2_min : -half_width;
    result.beta2_max = opts.bracket_override ? opts.beta2_max : half_width;
    const int samples = std::max(opts.samples, 8);
    const double step = (result.beta2_max - result.beta2_min) / samples;

    std::vector<BranchSample> grid(static_cast<size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i)
        grid[static_cast<size_t>(i)] = sample_branches(prob, result.beta2_min + i * step);

    int max_branches = 0;
    for (const auto& s : grid) max_branches = std::max(max_branches, s.root_count);

    // A residual that sits at zero along a stretch of the bracket marks a
    // one-parameter family (e.g. the N=0 even and N=1 odd sectors at b1=0,
    // where the matching holds identically on a half line of beta2 values).
    std::vector<std::pair<int, int>> family_members;  // (sample index, branch)
    for (int k = 0; k < max_branches; ++k) {
        int run = 0;
        for (int i = 0; i <= samples; ++i) {
            const auto& s = grid[static_cast<size_t>(i)];
            const bool zero = k < s.root_count &&
                              std::abs(s.residuals[static_cast<size_t>(k)]) < 1e-12;
            run = zero ? run + 1 : 0;
            if (run >= std::max(samples / 20, 4)) {
                result.family_detected = true;
                family_members.emplace_back(i, k);
                run = 0;
            }
        }
    }
    if (result.family_detected) {
        // A handful of representative members, spread over the family.
        const size_t stride = std::max<size_t>(1, family_members.size() / 5);
        for (size_t j = 0; j < family_members.size(); j += stride) {
            const auto [i, k] = family_members[j];
            const BranchSample& s = grid[static_cast<size_t>(i)];
            result.solutions.push_back(make_solution(
                prob, s.energies[static_cast<size_t>(k)], result.beta2_min + i * step));
        }
        return result;
    }

    auto residual_at = [&](double b2, int k) -> std::optional<std::pair<double, double>> {
        const BranchSample s = sample_branches(prob, b2);
        if (k >= s.root_count || std::isnan(s.residuals[static_cast<size_t>(k)]))
            return std::nullopt;
        return std::make_pair(s.residuals[static_cast<size_t>(k)],
                              s.energies[static_cast<size_t>(k)]);
    };

    auto bisect_branch = [&](double lo, double hi, double flo, int k) {
        for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const auto rm = residual_at(mid, k);
            if (!rm) return;
            if (flo * rm->first <= 0.0)
                hi = mid;
            else {
                lo = mid;
                flo = rm->first;
            }
        }
        const double b2 = 0.5 * (lo + hi);
        const auto rb = residual_at(b2, k);
        if (!rb) return;
        QESSolution sol = make_solution(prob, rb->second, b2);
        if (std::abs(sol.continuity) <= opts.residual_tol)
            result.solutions.push_back(std::move(sol));
    };

    // Scans one interval given both endpoint samples.  Where the count of
    // real roots changes inside (a complex pair turning real, or vice versa)
    // the interval is subdivided so crossings hiding next to the transition
    // are still bracketed.
    auto scan_interval = [&](auto&& self, double lo, double hi, const BranchSample& sl,
                             const BranchSample& sr, int depth) -> void {
        const int shared = std::min(sl.root_count, sr.root_count);
        for (int k = 0; k < shared; ++k) {
            const double fl = sl.residuals[static_cast<size_t>(k)];
            const double fr = sr.residuals[static_cast<size_t>(k)];
            if (std::isnan(fl) || std::isnan(fr)) continue;
            if (fl == 0.0) {
                result.solutions.push_back(
                    make_solution(prob, sl.energies[static_cast<size_t>(k)], lo));
                continue;
            }
            if (fl * fr < 0.0) bisect_branch(lo, hi, fl, k);
        }
        if (sl.root_count != sr.root_count && depth < 2) {
            const int pieces = 16;
            BranchSample left = sl;
            for (int j = 1; j <= pieces; ++j) {
                const double m = lo + (hi - lo) * j / pieces;
                BranchSample right = j == pieces ? sr : sample_branches(prob, m);
                self(self, lo + (hi - lo) * (j - 1) / pieces, m, left, right, depth + 1);
                left = std::move(right);
            }
        }
    };

    for (int i = 0; i < samples; ++i)
        scan_interval(scan_interval, result.beta2_min + i * step,
                      result.beta2_min + (i + 1) * step, grid[static_cast<size_t>(i)],
                      grid[static_cast<size_t>(i) + 1], 0);

    std::sort(result.solutions.begin(), result.solutions.end(),
              [](const QESSolution& a, const QESSolution& b) {
                  return a.beta2 != b.beta2 ? a.beta2 < b.beta2 : a.energy < b.energy;
              });
    // Merge duplicates found from adjacent cells.
    std::vector<QESSolution> unique;
    for (auto& s : result.solutions) {
        if (!unique.empty() &&
            std::abs(s.beta2 - unique.back().beta2) < 1e-8 * (1.0 + std::abs(s.beta2)) &&
            std::abs(s.energy - unique.back().energy) < 1e-8 * (1.0 + std::abs(s.energy)))
            continue;
        unique.push_back(std::move(s));
    }
    result.solutions = std::move(unique);
    result.bracket_exhausted = result.solutions.empty();
    return result;
}

ClosedForm closed_form_n1_even(double beta1, double beta3) {
    if (beta1 == 0.0)
        throw std::invalid_argument("closed_form_n1_even: beta1 must be nonzero");
    return {0.5 * beta1 * beta1 - beta3 / (4.0 * beta1),
            beta1 * beta1 + beta3 / (2.0 * beta1)};
}

ClosedForm closed_form_n1_odd(double beta2) { return {0.5 * beta2, beta2}; }

ClosedForm closed_form_n2_even(double beta1, double beta3, Branch branch) {
    if (beta1 == 0.0)
        throw std::invalid_argument("closed_form_n2_even: beta1 must be nonzero");
    const double b13 = beta1 * beta1 * beta1;
    const double radicand = b13 * b13 - 6.0 * b13 * beta3 + 4.0 * beta3 * beta3;
    if (radicand < 0.0)
        throw NoRealSolution(fmt::format(
            "closed_form_n2_even: negative radicand {} at beta1={}, beta3={}",
            radicand, beta1, beta3));
    const double root = std::sqrt(radicand);
    const double energy =
        (b13 - 3.0 * beta3 + (branch == Branch::Minus ? -root : root)) / (5.0 * beta1);
    const double den = energy * beta1 + beta3;
    if (den == 0.0)
        throw NoRealSolution("closed_form_n2_even: degenerate matching (E b1 + b3 = 0)");
    const double beta2 =
        (energy * energy * beta1 + beta1 * beta1 * beta3 + energy * beta3) / den;
    return {energy, beta2};
}

ClosedForm closed_form_n2_odd(double beta1, double beta3) {
    if (beta1 == 0.0)
        throw std::invalid_argument("closed_form_n2_odd: beta1 must be nonzero");
    return {2.0 * beta1 * beta1,
            (4.0 * beta1 * beta1 * beta1 + beta3) / (2.0 * beta1)};
}

double simultaneous_n2_beta3(double beta1) {
    if (beta1 == 0.0)
        throw std::invalid_argument("simultaneous_n2_beta3: beta1 must be nonzero");
    const double sign = beta1 > 0.0 ? 1.0 : -1.0;
    return (4.0 / 7.0) * (2.0 + sign * 3.0 * std::sqrt(2.0)) * beta1 * beta1 * beta1;
}

std::vector<QESSolution> czero_solutions(int n, double beta1, Parity parity) {
    if (n < 0) throw std::invalid_argument("czero_solutions: N must be nonnegative");
    if (!(beta1 > 0.0)) throw std::invalid_argument("czero_solutions: beta1 must be positive");
    if (n % 3 == 2)
        throw NoZeroEnergySolution(
            fmt::format("czero_solutions: N={} is of the form 2+3k; the zero-energy "
                        "kernel is trivial", n));

    // Coefficients a_m are polynomials in beta2 along the chain m = N, N-3, ...
    // Each step multiplies by -[m(m-1)/(N-m+3)] beta3^2 with
    // beta3^2 = beta2^4/(4 b1^2), i.e. a scalar times beta2^4.
    struct ChainTerm {
        int index;      // m
        int b2_power;   // power of beta2 carried by the recursion
        double scale;
    };
    std::vector<ChainTerm> chain;
    chain.push_back({n, 0, 1.0});
    {
        int m = n;
        double scale = 1.0;
        int power = 0;
        while (m - 3 >= 0) {
            scale *= -(static_cast<double>(m) * (m - 1)) / (n - m + 3) /
                     (4.0 * beta1 * beta1);
            power += 4;
            m -= 3;
            chain.push_back({m, power, scale});
        }
    }

    // Matching condition as a polynomial in beta2 (ascending coefficients).
    //   odd :  sum_m a_m(beta2) beta2^m
    //   even:  2 b1^2 a_0(beta2) - sum_{m>=1} a_m(beta2) beta2^m (m beta2 - 2 b1^2)
    // (the even form is Eq.-(47)-style matching times 2 b1, with
    //  beta3 = beta2^2 / (2 b1) substituted).
    std::vector<double> poly;
    auto add_term = [&poly](int power, double value) {
        if (power >= static_cast<int>(poly.size())) poly.resize(static_cast<size_t>(power) + 1, 0.0);
        poly[static_cast<size_t>(power)] += value;
    };
    for (const ChainTerm& t : chain) {
        if (parity == Parity::Odd) {
            add_term(t.b2_power + t.index, t.scale);
        } else {
            if (t.index == 0)
                add_term(t.b2_power, 2.0 * beta1 * beta1 * t.scale);
            else {
                add_term(t.b2_power + t.index + 1, -t.scale * t.index);
                add_term(t.b2_power + t.index, t.scale * 2.0 * beta1 * beta1);
            }
        }
    }

    // Strip the common beta2^k factor (beta2 = 0 is the trivial solution).
    size_t shift = 0;
    while (shift < poly.size() && poly[shift] == 0.0) ++shift;
    std::vector<double> reduced(poly.begin() + static_cast<std::ptrdiff_t>(shift), poly.end());

    std::vector<QESSolution> out;
    if (reduced.size() <= 1) return out;
    for (double b2 : real_polynomial_roots(reduced).roots) {
        if (!(b2 > 1e-12)) continue;
        const double b3 = b2 * b2 / (2.0 * beta1);
        QESSolution sol = make_solution({n, parity, beta1, b3}, 0.0, b2);
        out.push_back(std::move(sol));
    }
    return out;
}

double scaled_energy_check(const QESProblem& prob, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("scaled_energy_check: t > 0");
    const SolveResult base = solve_qes(prob);
    if (base.solutions.empty())
        throw std::runtime_error("scaled_energy_check: no solution at the base point");

    QESProblem scaled = prob;
    scaled.beta1 = t * prob.beta1;
    scaled.beta3 = t * t * t * prob.beta3;
    const SolveResult other = solve_qes(scaled);

    double worst = 0.0;
    for (const QESSolution& s : base.solutions) {
        // The matching scaled solution carries beta2 -> t^2 beta2.
        const double want_b2 = t * t * s.beta2;
        const QESSolution* match = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const QESSolution& o : other.solutions) {
            const double d = std::abs(o.beta2 - want_b2);
            if (d < best) {
                best = d;
                match = &o;
            }
        }
        if (!match || best > 1e-5 * (1.0 + std::abs(want_b2)))
            throw std::runtime_error("scaled_energy_check: scaled twin not found");
        const double want_e = t * t * s.energy;
        const double defect = std::abs(match->energy - want_e) /
                              std::max(std::abs(want_e), 1e-12);
        worst = std::max(worst, defect);
    }
    return worst;
}

}  // namespace qaos
