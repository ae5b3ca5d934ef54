#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qaos/oracle.hpp"
#include "qaos/qes.hpp"

namespace qaos {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double v);

std::string parity_name(Parity p);
Parity parity_from_name(const std::string& name);

/// Full per-solution record: energy, beta2, casimir, coefficients, and the
/// invariant checks (matrix / continuity / Schrodinger residuals, node count).
nlohmann::json solution_to_json(const QESSolution& sol, double beta1, double beta3);

/// One CSV row matching solution_csv_header().
std::string solution_csv_row(const QESSolution& sol, double beta1, double beta3);
std::string solution_csv_header();

nlohmann::json spectrum_to_json(const SpectrumResult& result);

}  // namespace qaos
