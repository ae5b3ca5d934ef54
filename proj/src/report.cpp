#include "qaos/report.hpp"

#include <fmt/format.h>
#include <stdexcept>

#include "qaos/wavefunction.hpp"

namespace qaos {

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parity_from_name(const std::string& name) {
    if (name == "even") return Parity::Even;
    if (name == "odd") return Parity::Odd;
    throw std::invalid_argument("parity must be 'even' or 'odd': " + name);
}

namespace {

double solution_schrodinger_residual(const QESSolution& sol, double beta1, double beta3) {
    const WavefunctionSpec wf = WavefunctionSpec::from_solution(sol, beta1, beta3);
    double worst = 0.0;
    for (double x : {0.25, 0.5, 1.0, 2.0, 4.0})
        worst = std::max({worst, schrodinger_residual_relative(wf, x),
                          schrodinger_residual_relative(wf, -x)});
    return worst;
}

int solution_nodes(const QESSolution& sol, double beta1, double beta3) {
    const WavefunctionSpec wf = WavefunctionSpec::from_solution(sol, beta1, beta3);
    return count_nodes(wf, 30.0, 20000).nodes;
}

}  // namespace

nlohmann::json solution_to_json(const QESSolution& sol, double beta1, double beta3) {
    nlohmann::json j;
    j["energy"] = sol.energy;
    j["beta2"] = sol.beta2;
    j["casimir"] = sol.casimir;
    j["parity"] = parity_name(sol.parity);
    j["coefficients"] = sol.coeffs;
    j["checks"] = {{"matrix_residual", sol.matrix_residual},
                   {"continuity_residual", sol.continuity},
                   {"recursion_residual", sol.recursion_residual},
                   {"schrodinger_residual", solution_schrodinger_residual(sol, beta1, beta3)},
                   {"node_count", solution_nodes(sol, beta1, beta3)}};
    return j;
}

std::string solution_csv_header() {
    return "energy,beta2,casimir,parity,matrix_residual,continuity_residual,"
           "recursion_residual,schrodinger_residual,node_count";
}

std::string solution_csv_row(const QESSolution& sol, double beta1, double beta3) {
    return fmt::format("{},{},{},{},{},{},{},{},{}", format_double(sol.energy),
                       format_double(sol.beta2), format_double(sol.casimir),
                       parity_name(sol.parity), format_double(sol.matrix_residual),
                       format_double(sol.continuity),
                       format_double(sol.recursion_residual),
                       format_double(solution_schrodinger_residual(sol, beta1, beta3)),
                       solution_nodes(sol, beta1, beta3));
}

nlohmann::json spectrum_to_json(const SpectrumResult& result) {
    nlohmann::json j;
    j["energies"] = result.energies;
    j["extrapolated"] = result.extrapolated;
    j["grid_points_per_level"] = result.grid_points_per_level;
    j["convergence_estimate"] = result.convergence_estimate;
    j["converged"] = result.converged;
    return j;
}

}  // namespace qaos
