#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qaos/wavefunction.hpp"

namespace qaos {

/// Field content of the reducible-representation Hamiltonian
///   2H = -d^2/dx^2 + (i d/dy + b2 x + b3 x^2/2)^2 + alpha (b2 + b3 x):
/// scalar potential Phi = alpha (b2 + b3 x), vector potential A_y = b2 + b3 x,
/// hence a constant electric field E_x = b3 and magnetic field B_z = b2 + b3 x.
struct EMFieldSpec {
    double alpha = 0.0;
    double beta2 = 0.0;
    double beta3 = 1.0;
};

struct FieldComponents {
    double phi = 0.0;
    double a_y = 0.0;
    double e_x = 0.0;
    double b_z = 0.0;
};

FieldComponents field_components(const EMFieldSpec& spec, double x);

/// Complex values on a rectangular grid, row-major over y then x
/// (values[iy * x.size() + ix]).
struct Grid2D {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::complex<double>> values;

    std::complex<double>& at(size_t ix, size_t iy) { return values[iy * x.size() + ix]; }
    std::complex<double> at(size_t ix, size_t iy) const { return values[iy * x.size() + ix]; }
};

/// Applies the 2D operator with second-order differences: Dirichlet in x,
/// periodic wrap in y.  Grids must be uniform.
Grid2D reducible_hamiltonian_apply(const EMFieldSpec& spec, const Grid2D& f);

/// One sampled member of the superposition: a solved 1D level at beta1 plus
/// its quadrature weight.  The synthesized function is
///   Psi(x, y) = sum_j w_j e^{i beta1_j y} g_j(x)
/// (doubled with the conjugate phase when conjugate_symmetrize is set).
struct SynthesisMode {
    double beta1 = 0.0;
    double weight = 1.0;
    WavefunctionSpec wf;
};

struct SynthesisSpec {
    double alpha = 0.0;
    double beta3 = 1.0;
    std::vector<SynthesisMode> modes;
    std::vector<double> x_grid;
    std::vector<double> y_grid;
    bool conjugate_symmetrize = false;
    double mode_residual_tol = 1e-8;
    /// Optional restriction to an approximate level set |E(beta1) - E*| <= eps.
    std::optional<double> level_energy;
    double level_epsilon = 0.0;
};

struct SynthesisResult {
    Grid2D psi;
    std::vector<double> mode_energies;     // per retained mode
    std::vector<double> mode_beta1;
    double energy_min = 0.0, energy_max = 0.0;  // spread across retained modes
};

struct InvalidModeError : std::runtime_error {
    double beta1;
    InvalidModeError(double b1, const std::string& what)
        : std::runtime_error(what), beta1(b1) {}
};

/// Fixed-order accumulation of the phase-weighted 1D closed forms over the
/// sampled beta1 values; throws InvalidModeError if any mode fails its 1D
/// Schrodinger residual check.
SynthesisResult synthesize_psi(const SynthesisSpec& spec);

/// Builds the 11-point (or n-point) even N=1 family over a beta1 interval
/// with the level-matching beta2(beta1) = beta1^2 + beta3/(2 beta1) map and
/// trapezoidal weights.
SynthesisSpec make_n1_even_family(double beta1_lo, double beta1_hi, int mode_count,
                                  double beta3, std::vector<double> x_grid,
                                  std::vector<double> y_grid);

/// CSV rows (x, y, Re, Im) and a JSON sidecar with modes and energies.
void write_synthesis_csv(const std::string& path, const SynthesisResult& result);
void write_synthesis_json(const std::string& path, const SynthesisSpec& spec,
                          const SynthesisResult& result);

}  // namespace qaos
