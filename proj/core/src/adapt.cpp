#include "hho/adapt.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace hho {

MarkResult dorfler_mark(const Eigen::VectorXd& eta_sq, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("dorfler_mark: theta must be in (0,1)");
  for (int i = 0; i < eta_sq.size(); ++i)
    if (eta_sq[i] < 0.0 || !std::isfinite(eta_sq[i]))
      throw std::invalid_argument("dorfler_mark: invalid indicator");

  MarkResult result;
  const double total = eta_sq.sum();
  if (total <= 0.0) {
    result.converged = true;
    return result;
  }
  std::vector<int> order(eta_sq.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return eta_sq[a] > eta_sq[b]; });
  double acc = 0.0;
  for (int t : order) {
    result.marked.push_back(t);
    acc += eta_sq[t];
    if (acc >= theta * total) break;
  }
  return result;
}

ConvergenceHistory adaptive_loop(const ProblemSpec& problem, const AdaptOptions& opts,
                                 const LevelObserver& observer) {
  ConvergenceHistory history;
  Mesh mesh = problem.initial_mesh;
  std::vector<char> warm_active;

  for (int level = 0; level < opts.max_levels; ++level) {
    auto t0 = std::chrono::steady_clock::now();

    DofMap map = build_dof_map(mesh, opts.k);
    GlobalSystem system = assemble_global(mesh, map, problem.f);
    ReducedSystem reduced = apply_boundary_data(system, map, mesh, problem.g);
    std::vector<double> chi_bar = obstacle_averages(mesh, problem.chi);

    PdasOptions pdas_opts = opts.pdas;
    if (opts.warm_start && !warm_active.empty()) pdas_opts.initial_active = warm_active;
    PdasResult pdas = solve_pdas(reduced, chi_bar, mesh, pdas_opts);
    if (!pdas.converged) {
      history.completed = false;
      history.abort_reason = pdas.cycled ? "pdas cycling detected" : "pdas max_iter exceeded";
      return history;
    }

    Eigen::VectorXd u_full = expand_solution(reduced, pdas.u);
    Multiplier mult = compute_multiplier(mesh, map, system, u_full);
    PiecewiseField rec = reconstruct_field(mesh, map, u_full);
    ConformingField ustar = node_average(mesh, rec, problem.g);
    EstimatorBreakdown est =
        estimate(mesh, map, u_full, rec, mult, pdas.active, ustar, problem);

    LevelRecord rec_row;
    rec_row.level = level;
    rec_row.cells = mesh.cell_count();
    rec_row.dofs = static_cast<int>(reduced.free_to_global.size());
    rec_row.eta_total = est.eta();
    rec_row.eta1 = std::sqrt(est.eta1_sq);
    rec_row.eta2 = std::sqrt(est.eta2_sq);
    rec_row.eta3 = std::sqrt(est.eta3_sq);
    rec_row.eta_pos = std::sqrt(est.epos_sq);
    rec_row.eta_contact = std::sqrt(std::max(est.econ_sum, 0.0));
    rec_row.pdas_iters = pdas.iterations;
    rec_row.active_cells =
        static_cast<int>(std::count(pdas.active.begin(), pdas.active.end(), 1));
    if (problem.exact) {
      double err = exact_energy_error(mesh, rec, problem);
      rec_row.error_energy = err;
      if (err > 0.0) rec_row.efficiency = est.eta() / err;
    }

    if (observer) {
      LevelState state{mesh, map, u_full, system, pdas, mult, rec, ustar, est};
      observer(level, state);
    }

    rec_row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    history.levels.push_back(rec_row);

    if (rec_row.dofs >= opts.max_dofs || level + 1 >= opts.max_levels) return history;

    std::vector<int> marked;
    if (opts.strategy == Strategy::adaptive) {
      MarkResult mark = dorfler_mark(est.total, opts.theta);
      if (mark.converged) return history;
      marked = std::move(mark.marked);
    }

    Mesh next = opts.strategy == Strategy::adaptive ? refine_nvb(mesh, marked)
                                                    : uniform_refine(mesh);
    warm_active.assign(next.cell_count(), 0);
    if (opts.warm_start)
      for (int t = 0; t < next.cell_count(); ++t)
        warm_active[t] = pdas.active[next.parent_cell(t)];
    mesh = std::move(next);
  }
  return history;
}

}  // namespace hho
