#include "hho/pdas.hpp"

#include "hho/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hho {

namespace {

// Solve with the active cells pinned to their bounds.
Eigen::VectorXd solve_pinned(const ReducedSystem& red, const std::vector<double>& chi_bar,
                             const std::vector<char>& active) {
  const int n = static_cast<int>(red.A.rows());
  const int nc = red.n_cells;

  std::vector<int> to_inner(n, -1);
  std::vector<int> inner_to_outer;
  inner_to_outer.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (i < nc && active[i]) continue;
    to_inner[i] = static_cast<int>(inner_to_outer.size());
    inner_to_outer.push_back(i);
  }
  const int m = static_cast<int>(inner_to_outer.size());

  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = red.b[inner_to_outer[i]];

  std::vector<Eigen::Triplet<double>> triplets;
  for (int col = 0; col < red.A.outerSize(); ++col) {
    const bool col_active = col < nc && active[col];
    for (Eigen::SparseMatrix<double>::InnerIterator it(red.A, col); it; ++it) {
      int ir = to_inner[static_cast<int>(it.row())];
      if (ir < 0) continue;
      if (col_active)
        rhs[ir] -= it.value() * chi_bar[col];
      else
        triplets.emplace_back(ir, to_inner[col], it.value());
    }
  }
  Eigen::SparseMatrix<double> Aii(m, m);
  Aii.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::VectorXd ui = solve_spd(Aii, rhs);
  Eigen::VectorXd u(n);
  for (int i = 0; i < nc; ++i) u[i] = active[i] ? chi_bar[i] : 0.0;
  for (int i = 0; i < m; ++i) u[inner_to_outer[i]] = ui[i];
  return u;
}

}  // namespace

PdasResult solve_pdas(const ReducedSystem& red, const std::vector<double>& chi_bar,
                      const Mesh& mesh, const PdasOptions& opts) {
  const int nc = red.n_cells;
  if (static_cast<int>(chi_bar.size()) != nc)
    throw std::invalid_argument("solve_pdas: obstacle size mismatch");
  if (mesh.cell_count() != nc) throw std::invalid_argument("solve_pdas: mesh mismatch");

  PdasResult result;
  result.active = opts.initial_active.empty() ? std::vector<char>(nc, 0) : opts.initial_active;
  if (static_cast<int>(result.active.size()) != nc)
    throw std::invalid_argument("solve_pdas: warm-start size mismatch");

  const double c = opts.complementarity_weight;
  std::set<std::vector<char>> visited;
  visited.insert(result.active);

  for (int it = 1; it <= opts.max_iter; ++it) {
    result.iterations = it;
    result.u = solve_pinned(red, chi_bar, result.active);

    Eigen::VectorXd residual = red.b - red.A * result.u;
    result.lambda = Eigen::VectorXd::Zero(nc);
    for (int i = 0; i < nc; ++i)
      if (result.active[i]) result.lambda[i] = residual[i];

    std::vector<char> next(nc, 0);
    for (int i = 0; i < nc; ++i) {
      double indicator = c * mesh.cell_area(i) * (chi_bar[i] - result.u[i]) - result.lambda[i];
      next[i] = indicator > 0.0 ? 1 : 0;
    }

    if (next == result.active) {
      result.converged = true;
      return result;
    }
    if (!visited.insert(next).second) {
      result.cycled = true;
      result.active = next;
      return result;
    }
    result.active = next;
  }
  return result;  // max_iter exceeded, best iterate returned non-converged
}

double KktResiduals::max() const {
  return std::max({stationarity, feasibility, sign, complementarity});
}

KktResiduals kkt_residual(const ReducedSystem& red, const std::vector<double>& chi_bar,
                          const Eigen::VectorXd& u, const Eigen::VectorXd& lambda) {
  KktResiduals res;
  Eigen::VectorXd stat = red.A * u - red.b;
  for (int i = 0; i < red.n_cells; ++i) stat[i] += lambda[i];
  res.stationarity = stat.lpNorm<Eigen::Infinity>();
  for (int i = 0; i < red.n_cells; ++i) {
    res.feasibility = std::max(res.feasibility, chi_bar[i] - u[i]);
    res.sign = std::max(res.sign, lambda[i]);
    res.complementarity =
        std::max(res.complementarity, std::abs(lambda[i] * (u[i] - chi_bar[i])));
  }
  res.feasibility = std::max(res.feasibility, 0.0);
  res.sign = std::max(res.sign, 0.0);
  return res;
}

}  // namespace hho
