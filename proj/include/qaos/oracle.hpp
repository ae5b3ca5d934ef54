#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "qaos/potential.hpp"

namespace qaos {

/// Settings for the compactified finite-difference eigensolver.
/// grid_points counts total nodes including the two Dirichlet boundary rows,
/// so doubling follows n -> 2n - 1 and halves the mesh width exactly.
struct OracleConfig {
    int grid_points = 2001;
    double y_min = -1.5707963267948966;  // -pi/2
    double y_max = 1.5707963267948966;   //  pi/2
    int eigen_count = 6;
    int refinement_levels = 3;
};

struct SpectrumResult {
    std::vector<double> energies;       // finest level, ascending
    std::vector<double> extrapolated;   // Richardson-extrapolated values
    /// Grid-orthonormal eigenvectors phi of the symmetrized operator
    /// (sum phi^2 h = 1), finest level, one per energy.
    std::vector<std::vector<double>> eigenvectors;
    /// Wavefunction samples u_i = Psi(tan y_i) = phi_i cos y_i, normalized
    /// to sum u^2 h = 1 with a positive peak.
    std::vector<std::vector<double>> wavefunctions;
    std::vector<double> y_grid;         // interior nodes, finest level
    std::vector<int> grid_points_per_level;
    std::vector<double> convergence_estimate;  // max level-to-level shift
    bool converged = true;
};

/// Dense symmetric discretization of 2H = -d^2/dx^2 + 2V(x) on the y grid
/// (x = tan y), with Dirichlet boundaries; interior nodes only.  The change
/// of variables gives -cos^2 y (cos^2 y u')' in divergence form, made
/// symmetric through the similarity phi = sec(y) u.
Eigen::MatrixXd discretize_hamiltonian(const PotentialParams& p, const OracleConfig& cfg);

/// The cfg.eigen_count lowest levels of H at each refinement level, plus
/// h^2 Richardson extrapolation across levels.
SpectrumResult lowest_eigenvalues(const PotentialParams& p, const OracleConfig& cfg);

/// Cross-check mode: plain uniform-x grid on [-L, L], Dirichlet walls, with
/// L grown until V(L) clears the highest requested level by a margin of 50.
SpectrumResult lowest_eigenvalues_box(const PotentialParams& p, const OracleConfig& cfg);

struct NoMatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AmbiguousMatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Index of the unique extrapolated level within tol of E.
int rank_of_energy(const SpectrumResult& result, double energy, double tol);

}  // namespace qaos
