#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qaos/em_field.hpp"
#include "qaos/oracle.hpp"
#include "qaos/potential.hpp"
#include "qaos/qes.hpp"
#include "qaos/rep.hpp"
#include "qaos/wavefunction.hpp"

namespace py = pybind11;
using namespace qaos;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quartic-group quasi-exactly-solvable oscillator toolkit";

    // ----------------------------------------------------------- group
    py::class_<GroupElement>(m, "GroupElement")
        .def(py::init<>())
        .def(py::init([](double a, double b1, double b2, double b3) {
                 return GroupElement{a, b1, b2, b3};
             }),
             py::arg("a"), py::arg("b1"), py::arg("b2"), py::arg("b3"))
        .def_readwrite("a", &GroupElement::a)
        .def_readwrite("b1", &GroupElement::b1)
        .def_readwrite("b2", &GroupElement::b2)
        .def_readwrite("b3", &GroupElement::b3)
        .def("__repr__", [](const GroupElement& g) {
            return "GroupElement(a=" + std::to_string(g.a) + ", b1=" + std::to_string(g.b1) +
                   ", b2=" + std::to_string(g.b2) + ", b3=" + std::to_string(g.b3) + ")";
        });
    m.def("compose", &compose);
    m.def("inverse", &inverse);
    m.def("identity_element", &identity_element);
    m.def("embed_heisenberg", &embed_heisenberg, py::arg("a"), py::arg("b1"), py::arg("b2"));
    m.def("matrix_of", &matrix_of);

    py::class_<BetaVector>(m, "BetaVector")
        .def(py::init<>())
        .def(py::init([](double b1, double b2, double b3) {
                 return BetaVector{b1, b2, b3};
             }),
             py::arg("beta1"), py::arg("beta2"), py::arg("beta3"))
        .def_readwrite("beta1", &BetaVector::beta1)
        .def_readwrite("beta2", &BetaVector::beta2)
        .def_readwrite("beta3", &BetaVector::beta3)
        .def("__repr__", [](const BetaVector& b) {
            return "BetaVector(" + std::to_string(b.beta1) + ", " + std::to_string(b.beta2) +
                   ", " + std::to_string(b.beta3) + ")";
        });
    m.def("casimir_c", &casimir_c);
    m.def("translate_beta", &translate_beta, py::arg("beta"), py::arg("a"));
    m.def("scale_beta", &scale_beta, py::arg("beta"), py::arg("t"));

    py::class_<AutomorphismMatrix>(m, "AutomorphismMatrix")
        .def(py::init<>())
        .def_readwrite("g00", &AutomorphismMatrix::g00)
        .def_readwrite("g01", &AutomorphismMatrix::g01)
        .def_readwrite("g02", &AutomorphismMatrix::g02)
        .def_readwrite("g03", &AutomorphismMatrix::g03)
        .def_readwrite("g11", &AutomorphismMatrix::g11)
        .def_readwrite("g12", &AutomorphismMatrix::g12)
        .def_readwrite("g13", &AutomorphismMatrix::g13)
        .def("matrix", &AutomorphismMatrix::matrix);
    m.def("automorphism_structure_defect", &automorphism_structure_defect);

    // ----------------------------------------------------------- rep
    py::enum_<GeneratorId>(m, "GeneratorId")
        .value("X0", GeneratorId::X0)
        .value("X1", GeneratorId::X1)
        .value("X2", GeneratorId::X2)
        .value("X3", GeneratorId::X3);
    py::class_<PolyFunction>(m, "PolyFunction")
        .def(py::init<>())
        .def(py::init<std::vector<Complex>>(), py::arg("coeffs"))
        .def_readwrite("coeffs", &PolyFunction::coeffs)
        .def("degree", &PolyFunction::degree)
        .def("eval", &PolyFunction::eval)
        .def("coeff_norm", &PolyFunction::coeff_norm)
        .def_static("monomial", &PolyFunction::monomial, py::arg("k"),
                    py::arg("scale") = Complex{1.0, 0.0});
    m.def("apply_generator", &apply_generator);
    m.def("commutator_defect", &commutator_defect);
    m.def("irrep_apply", &irrep_apply, py::arg("g"), py::arg("beta"), py::arg("phi"),
          py::arg("x"));
    m.def("scale_conjugate_defect", &scale_conjugate_defect);

    // ----------------------------------------------------------- potential
    py::class_<PotentialParams>(m, "PotentialParams")
        .def(py::init<>())
        .def(py::init([](double alpha, const BetaVector& beta) {
                 return PotentialParams{alpha, beta};
             }),
             py::arg("alpha"), py::arg("beta"))
        .def_readwrite("alpha", &PotentialParams::alpha)
        .def_readwrite("beta", &PotentialParams::beta);
    py::class_<MonomialForm>(m, "MonomialForm")
        .def_readonly("v0", &MonomialForm::v0)
        .def_readonly("a1", &MonomialForm::a1)
        .def_readonly("b2", &MonomialForm::b2)
        .def_readonly("c3", &MonomialForm::c3)
        .def_readonly("d4", &MonomialForm::d4)
        .def("eval", &MonomialForm::eval);
    py::enum_<WellClass>(m, "WellClass")
        .value("SingleWell", WellClass::SingleWell)
        .value("DoubleWell", WellClass::DoubleWell)
        .value("MultiWell", WellClass::MultiWell);
    py::class_<WellReport>(m, "WellReport")
        .def_readonly("wells", &WellReport::wells)
        .def_readonly("minima", &WellReport::minima)
        .def_readonly("plateau_warning", &WellReport::plateau_warning);
    m.def("eval_potential", &eval_potential, py::arg("params"), py::arg("x"));
    m.def("to_monomial", &to_monomial);
    m.def("slope_at_zero_plus", &slope_at_zero_plus);
    m.def("classify_well", &classify_well, py::arg("params"), py::arg("scan_range"));

    // ----------------------------------------------------------- qes
    py::enum_<Parity>(m, "Parity").value("Even", Parity::Even).value("Odd", Parity::Odd);
    py::enum_<Branch>(m, "Branch").value("Minus", Branch::Minus).value("Plus", Branch::Plus);
    py::class_<QESProblem>(m, "QESProblem")
        .def(py::init([](int n, Parity parity, double beta1, double beta3) {
                 return QESProblem{n, parity, beta1, beta3};
             }),
             py::arg("n"), py::arg("parity"), py::arg("beta1"), py::arg("beta3"))
        .def_readwrite("n", &QESProblem::n)
        .def_readwrite("parity", &QESProblem::parity)
        .def_readwrite("beta1", &QESProblem::beta1)
        .def_readwrite("beta3", &QESProblem::beta3);
    py::class_<QESSolution>(m, "QESSolution")
        .def_readonly("energy", &QESSolution::energy)
        .def_readonly("beta2", &QESSolution::beta2)
        .def_readonly("coeffs", &QESSolution::coeffs)
        .def_readonly("parity", &QESSolution::parity)
        .def_readonly("casimir", &QESSolution::casimir)
        .def_readonly("matrix_residual", &QESSolution::matrix_residual)
        .def_readonly("continuity", &QESSolution::continuity)
        .def_readonly("recursion_residual", &QESSolution::recursion_residual);
    py::class_<SolveOptions>(m, "SolveOptions")
        .def(py::init<>())
        .def_readwrite("beta2_min", &SolveOptions::beta2_min)
        .def_readwrite("beta2_max", &SolveOptions::beta2_max)
        .def_readwrite("bracket_override", &SolveOptions::bracket_override)
        .def_readwrite("samples", &SolveOptions::samples)
        .def_readwrite("residual_tol", &SolveOptions::residual_tol);
    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("solutions", &SolveResult::solutions)
        .def_readonly("family_detected", &SolveResult::family_detected)
        .def_readonly("bracket_exhausted", &SolveResult::bracket_exhausted)
        .def_readonly("beta2_min", &SolveResult::beta2_min)
        .def_readonly("beta2_max", &SolveResult::beta2_max);
    py::class_<ClosedForm>(m, "ClosedForm")
        .def_readonly("energy", &ClosedForm::energy)
        .def_readonly("beta2", &ClosedForm::beta2);
    py::class_<EnergyRoots>(m, "EnergyRoots")
        .def_readonly("roots", &EnergyRoots::roots)
        .def_readonly("complex_count", &EnergyRoots::complex_count);

    m.def("alpha_for", &alpha_for);
    m.def("build_matrix", &build_matrix, py::arg("n"), py::arg("c"), py::arg("beta3"));
    m.def("characteristic_polynomial", &characteristic_polynomial);
    m.def("energy_roots", &energy_roots);
    m.def("eigen_coefficients", &eigen_coefficients, py::arg("matrix"), py::arg("energy"));
    m.def("continuity_residual",
          [](const std::vector<double>& coeffs, const BetaVector& beta, Parity parity) {
              return continuity_residual(coeffs, beta, parity);
          });
    m.def("solve_qes", &solve_qes, py::arg("problem"), py::arg("options") = SolveOptions{});
    m.def("make_solution", &make_solution, py::arg("problem"), py::arg("energy"),
          py::arg("beta2"));
    m.def("closed_form_n1_even", &closed_form_n1_even, py::arg("beta1"), py::arg("beta3"));
    m.def("closed_form_n1_odd", &closed_form_n1_odd, py::arg("beta2"));
    m.def("closed_form_n2_even", &closed_form_n2_even, py::arg("beta1"), py::arg("beta3"),
          py::arg("branch"));
    m.def("closed_form_n2_odd", &closed_form_n2_odd, py::arg("beta1"), py::arg("beta3"));
    m.def("simultaneous_n2_beta3", &simultaneous_n2_beta3, py::arg("beta1"));
    m.def("czero_solutions", &czero_solutions, py::arg("n"), py::arg("beta1"),
          py::arg("parity"));
    m.def("scaled_energy_check", &scaled_energy_check, py::arg("problem"), py::arg("t"));

    // ----------------------------------------------------------- wavefunction
    py::class_<WavefunctionSpec>(m, "WavefunctionSpec")
        .def_static("from_solution", &WavefunctionSpec::from_solution, py::arg("solution"),
                    py::arg("beta1"), py::arg("beta3"))
        .def_readwrite("solution", &WavefunctionSpec::solution)
        .def_readwrite("beta", &WavefunctionSpec::beta)
        .def_readwrite("normalization", &WavefunctionSpec::normalization);
    py::class_<NodeCount>(m, "NodeCount")
        .def_readonly("nodes", &NodeCount::nodes)
        .def_readonly("tangential_flag", &NodeCount::tangential_flag);
    m.def("eval_psi", &eval_psi, py::arg("spec"), py::arg("x"));
    m.def("eval_psi_deriv", &eval_psi_deriv, py::arg("spec"), py::arg("x"));
    m.def("schrodinger_residual", &schrodinger_residual, py::arg("spec"), py::arg("x"));
    m.def("schrodinger_residual_relative", &schrodinger_residual_relative, py::arg("spec"),
          py::arg("x"));
    m.def("count_nodes", &count_nodes, py::arg("spec"), py::arg("range"), py::arg("samples"));
    m.def("normalize_arctan", &normalize_arctan, py::arg("spec"), py::arg("grid_points"));

    // ----------------------------------------------------------- oracle
    py::class_<OracleConfig>(m, "OracleConfig")
        .def(py::init<>())
        .def_readwrite("grid_points", &OracleConfig::grid_points)
        .def_readwrite("y_min", &OracleConfig::y_min)
        .def_readwrite("y_max", &OracleConfig::y_max)
        .def_readwrite("eigen_count", &OracleConfig::eigen_count)
        .def_readwrite("refinement_levels", &OracleConfig::refinement_levels);
    py::class_<SpectrumResult>(m, "SpectrumResult")
        .def_readonly("energies", &SpectrumResult::energies)
        .def_readonly("extrapolated", &SpectrumResult::extrapolated)
        .def_readonly("eigenvectors", &SpectrumResult::eigenvectors)
        .def_readonly("wavefunctions", &SpectrumResult::wavefunctions)
        .def_readonly("y_grid", &SpectrumResult::y_grid)
        .def_readonly("grid_points_per_level", &SpectrumResult::grid_points_per_level)
        .def_readonly("convergence_estimate", &SpectrumResult::convergence_estimate)
        .def_readonly("converged", &SpectrumResult::converged);
    m.def("discretize_hamiltonian", &discretize_hamiltonian, py::arg("params"),
          py::arg("config"));
    m.def("lowest_eigenvalues", &lowest_eigenvalues, py::arg("params"), py::arg("config"));
    m.def("lowest_eigenvalues_box", &lowest_eigenvalues_box, py::arg("params"),
          py::arg("config"));
    m.def("rank_of_energy", &rank_of_energy, py::arg("result"), py::arg("energy"),
          py::arg("tol"));

    // ----------------------------------------------------------- em field
    py::class_<EMFieldSpec>(m, "EMFieldSpec")
        .def(py::init([](double alpha, double beta2, double beta3) {
                 return EMFieldSpec{alpha, beta2, beta3};
             }),
             py::arg("alpha"), py::arg("beta2"), py::arg("beta3"))
        .def_readwrite("alpha", &EMFieldSpec::alpha)
        .def_readwrite("beta2", &EMFieldSpec::beta2)
        .def_readwrite("beta3", &EMFieldSpec::beta3);
    py::class_<FieldComponents>(m, "FieldComponents")
        .def_readonly("phi", &FieldComponents::phi)
        .def_readonly("a_y", &FieldComponents::a_y)
        .def_readonly("e_x", &FieldComponents::e_x)
        .def_readonly("b_z", &FieldComponents::b_z);
    py::class_<Grid2D>(m, "Grid2D")
        .def(py::init<>())
        .def_readwrite("x", &Grid2D::x)
        .def_readwrite("y", &Grid2D::y)
        .def_readwrite("values", &Grid2D::values);
    py::class_<SynthesisMode>(m, "SynthesisMode")
        .def(py::init<>())
        .def_readwrite("beta1", &SynthesisMode::beta1)
        .def_readwrite("weight", &SynthesisMode::weight)
        .def_readwrite("wf", &SynthesisMode::wf);
    py::class_<SynthesisSpec>(m, "SynthesisSpec")
        .def(py::init<>())
        .def_readwrite("alpha", &SynthesisSpec::alpha)
        .def_readwrite("beta3", &SynthesisSpec::beta3)
        .def_readwrite("modes", &SynthesisSpec::modes)
        .def_readwrite("x_grid", &SynthesisSpec::x_grid)
        .def_readwrite("y_grid", &SynthesisSpec::y_grid)
        .def_readwrite("conjugate_symmetrize", &SynthesisSpec::conjugate_symmetrize)
        .def_readwrite("mode_residual_tol", &SynthesisSpec::mode_residual_tol)
        .def_readwrite("level_energy", &SynthesisSpec::level_energy)
        .def_readwrite("level_epsilon", &SynthesisSpec::level_epsilon);
    py::class_<SynthesisResult>(m, "SynthesisResult")
        .def_readonly("psi", &SynthesisResult::psi)
        .def_readonly("mode_energies", &SynthesisResult::mode_energies)
        .def_readonly("mode_beta1", &SynthesisResult::mode_beta1)
        .def_readonly("energy_min", &SynthesisResult::energy_min)
        .def_readonly("energy_max", &SynthesisResult::energy_max);
    m.def("field_components", &field_components, py::arg("spec"), py::arg("x"));
    m.def("reducible_hamiltonian_apply", &reducible_hamiltonian_apply, py::arg("spec"),
          py::arg("f"));
    m.def("synthesize_psi", &synthesize_psi, py::arg("spec"));
    m.def("make_n1_even_family", &make_n1_even_family, py::arg("beta1_lo"),
          py::arg("beta1_hi"), py::arg("mode_count"), py::arg("beta3"), py::arg("x_grid"),
          py::arg("y_grid"));
    m.def("write_synthesis_csv", &write_synthesis_csv, py::arg("path"), py::arg("result"));
    m.def("write_synthesis_json", &write_synthesis_json, py::arg("path"), py::arg("spec"),
          py::arg("result"));

    py::register_exception<NoRealSolution>(m, "NoRealSolution");
    py::register_exception<NoZeroEnergySolution>(m, "NoZeroEnergySolution");
    py::register_exception<EigenvectorError>(m, "EigenvectorError");
    py::register_exception<NoMatchError>(m, "NoMatchError");
    py::register_exception<AmbiguousMatchError>(m, "AmbiguousMatchError");
    py::register_exception<InvalidModeError>(m, "InvalidModeError");
}
