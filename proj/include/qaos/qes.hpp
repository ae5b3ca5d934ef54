#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qaos/group.hpp"
#include "qaos/roots.hpp"

namespace qaos {

enum class Parity { Even, Odd };

/// One quasi-exactly-solvable problem: polynomial order N (the potential
/// steepness parameter is implied, alpha = -(N+1)), parity sector, and the
/// two free labels (beta1, beta3).  beta2 is determined by matching at x=0.
struct QESProblem {
    int n = 0;
    Parity parity = Parity::Even;
    double beta1 = 0.0;
    double beta3 = 1.0;
};

/// alpha = -(N+1); the only value admitting a degree-N polynomial factor.
double alpha_for(int n);

/// The (N+1)x(N+1) recursion matrix with bands
///   M[n][n-1] = -(N+1-n)/2,  M[n][n+1] = c (n+1)/2,
///   M[n][n+2] = -beta3^2 (n+2)(n+1)/2,
/// everything else (including the diagonal) zero.
Eigen::MatrixXd build_matrix(int n, double c, double beta3);

struct EnergyRoots {
    std::vector<double> roots;   // real eigenvalues, ascending, deduplicated
    int complex_count = 0;
};

/// Real roots of det(M - E I) = 0 via the companion-matrix method with one
/// Newton polish step.
EnergyRoots energy_roots(const Eigen::MatrixXd& m);

struct EigenvectorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficient vector a with a_N = 1 solving (M - E I) a = 0 by back
/// substitution down the subdiagonal.  E must be an eigenvalue to ~1e-9;
/// throws EigenvectorError otherwise (reporting the residual and the root
/// multiplicity seen in the characteristic polynomial).
std::vector<double> eigen_coefficients(const Eigen::MatrixXd& m, double energy);

/// Matching residual at x = 0:
///   even:  a0 b1 - sum_{n>=1} a_n (n b3 - b1 b2) b2^{n-1}   (derivative)
///   odd :  sum_n a_n b2^n                                    (value)
double continuity_residual(std::span<const double> coeffs, const BetaVector& beta,
                           Parity parity);

/// A fully determined analytic level.
struct QESSolution {
    double energy = 0.0;
    double beta2 = 0.0;
    std::vector<double> coeffs;  // a_0 .. a_N, normalized a_N = 1
    Parity parity = Parity::Even;
    double casimir = 0.0;        // c = 2 b1 b3 - b2^2

    // Diagnostics filled by the solver.
    double matrix_residual = 0.0;      // ||M a - E a||_inf / ||a||_inf
    double continuity = 0.0;           // residual of the parity matching
    double recursion_residual = 0.0;   // max termwise four-term recursion defect
};

struct SolveOptions {
    double beta2_min = 0.0;      // used only if bracket_override
    double beta2_max = 0.0;
    bool bracket_override = false;
    int samples = 2000;
    double residual_tol = 1e-10;
};

struct SolveResult {
    std::vector<QESSolution> solutions;
    bool family_detected = false;   // a continuum of beta2 values solves the sector
    bool bracket_exhausted = false; // no crossing found anywhere in the bracket
    double beta2_min = 0.0, beta2_max = 0.0;
};

/// Scans beta2 over a bracket (default [-10 b1^2 - 10, 10 b1^2 + 10]), follows
/// each ascending-ordered real energy branch, and bisects every sign change of
/// the parity-matching residual.  Deterministic for a fixed configuration.
SolveResult solve_qes(const QESProblem& prob, const SolveOptions& opts = {});

/// Builds the validated QESSolution for known (E, beta2) at the given problem.
QESSolution make_solution(const QESProblem& prob, double energy, double beta2);

struct ClosedForm {
    double energy = 0.0;
    double beta2 = 0.0;
};

/// N=1 even level: E = b1^2/2 - b3/(4 b1), beta2 = b1^2 + b3/(2 b1).
/// Requires beta1 != 0.
ClosedForm closed_form_n1_even(double beta1, double beta3);

/// N=1 odd level: beta1 = 0 is forced by matching; beta2 stays free and
/// E = beta2 / 2.
ClosedForm closed_form_n1_odd(double beta2);

enum class Branch { Minus, Plus };  // sign in front of the radical in E

struct NoRealSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// N=2 even pair: E = (b1^3 - 3 b3 -+ sqrt(b1^6 - 6 b1^3 b3 + 4 b3^2))/(5 b1),
/// beta2 recovered from the derivative-matching identity
/// beta2 = (E^2 b1 + b1^2 b3 + E b3)/(E b1 + b3).  Throws NoRealSolution for a
/// negative radicand and reports the degenerate E b1 + b3 = 0 case.
ClosedForm closed_form_n2_even(double beta1, double beta3, Branch branch);

/// N=2 odd level: E = 2 b1^2, beta2 = (4 b1^3 + b3)/(2 b1).
ClosedForm closed_form_n2_odd(double beta1, double beta3);

/// The beta3 > 0 making the N=2 even and odd sectors share one beta2:
/// (4/7)(2 + 3 sqrt 2) b1^3 for b1 > 0 and (4/7)(2 - 3 sqrt 2) b1^3 for b1 < 0.
double simultaneous_n2_beta3(double beta1);

struct NoZeroEnergySolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// E = 0 levels on the vanishing-Casimir branch (c = 0, beta3 = beta2^2/(2 b1),
/// beta1 > 0): coefficients from the three-term downward recursion
/// a_{m-3} = -[m(m-1)/(N-m+3)] beta3^2 a_m, beta2 from the real positive roots
/// of the parity matching condition.  Throws NoZeroEnergySolution when
/// N = 2 + 3k (no kernel).
std::vector<QESSolution> czero_solutions(int n, double beta1, Parity parity);

/// Relative defect of the two-Casimir scaling law E(t^3 b3, t^4 c) = t^2 E:
/// solves the problem at (b1, b3) and at (t b1, t^3 b3) and compares matched
/// levels.  Requires t > 0 and at least one solution at the base point.
double scaled_energy_check(const QESProblem& prob, double t);

}  // namespace qaos
