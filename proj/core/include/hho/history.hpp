#pragma once

#include "hho/adapt.hpp"

#include <string>

namespace hho {

/// CSV with the fixed header
///   level,cells,dofs,error_energy,eta_total,eta1,eta2,eta3,eta_pos,
///   eta_contact,efficiency,pdas_iters,seconds
/// Floating values are printed with 17 significant digits; error_energy and
/// efficiency are left empty when no exact solution is available.
std::string history_to_csv(const ConvergenceHistory& history);
ConvergenceHistory history_from_csv(const std::string& csv);

void write_history(const ConvergenceHistory& history, const std::string& path);
ConvergenceHistory read_history(const std::string& path);

}  // namespace hho
