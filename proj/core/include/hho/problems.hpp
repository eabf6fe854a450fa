#pragma once

#include "hho/basis.hpp"
#include "hho/mesh.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hho {

using GradientFn = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

struct ExactSolution {
  ScalarFn value;
  GradientFn gradient;
};

/// Benchmark data: load, obstacle, Dirichlet data, initial mesh and, when
/// known, the exact solution. interface_radii lists circles (centered at
/// interface_center) across which the exact solution or the load changes
/// analytic form; cells straddling one are integrated with subdivided
/// quadrature when measuring the energy error. corner_singularity marks a
/// problem whose solution has unbounded gradient at interface_center.
struct ProblemSpec {
  std::string name;
  Mesh initial_mesh;
  ScalarFn f;
  ScalarFn chi;
  GradientFn chi_gradient;  // zero for the constant obstacles shipped here
  ScalarFn g;
  std::optional<ExactSolution> exact;
  std::vector<double> interface_radii;
  Eigen::Vector2d interface_center = Eigen::Vector2d::Zero();
  bool corner_singularity = false;
};

/// Square (-1,1)^2, chi = 0, contact disc of radius 0.7 around the origin;
/// exact solution ((r^2 - r0^2)^+)^2 with its trace as boundary data.
ProblemSpec example1();

/// L-shaped domain (-2,2)^2 minus the fourth quadrant, chi = 0; exact
/// solution r^(2/3) sin(2 theta / 3) gamma1(r) with a corner singularity.
ProblemSpec example2();

/// Unit square, u = sin(pi x) sin(pi y), obstacle far below; the smooth
/// baseline for a priori convergence rates.
ProblemSpec smooth_unconstrained();

/// chi = -1, f = 1, g = 0 on the unit square: constraints never activate.
ProblemSpec flat_obstacle();

/// Lookup by CLI name; throws std::invalid_argument for unknown names.
ProblemSpec problem_by_name(const std::string& name);
std::vector<std::string> problem_names();

}  // namespace hho
