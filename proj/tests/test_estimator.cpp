#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hho/adapt.hpp"
#include "hho/estimator.hpp"
#include "hho/solver.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <random>

using hho::build_dof_map;
using hho::Mesh;

namespace {

hho::ScalarFn zero_fn() {
  return [](const Eigen::Vector2d&) { return 0.0; };
}

struct Solved {
  Mesh mesh;
  hho::DofMap map;
  hho::GlobalSystem sys;
  Eigen::VectorXd u_full;
  hho::PdasResult pdas;
  hho::Multiplier mult;
  hho::PiecewiseField rec;
  hho::ConformingField ustar;
};

Solved solve_problem(const hho::ProblemSpec& problem, Mesh mesh, int k) {
  hho::DofMap map = build_dof_map(mesh, k);
  hho::GlobalSystem sys = hho::assemble_global(mesh, map, problem.f);
  hho::ReducedSystem red = hho::apply_boundary_data(sys, map, mesh, problem.g);
  auto chi_bar = hho::obstacle_averages(mesh, problem.chi);
  hho::PdasResult pdas = hho::solve_pdas(red, chi_bar, mesh);
  REQUIRE(pdas.converged);
  Eigen::VectorXd u_full = hho::expand_solution(red, pdas.u);
  hho::Multiplier mult = hho::compute_multiplier(mesh, map, sys, u_full);
  hho::PiecewiseField rec = hho::reconstruct_field(mesh, map, u_full);
  hho::ConformingField ustar = hho::node_average(mesh, rec, problem.g);
  return {std::move(mesh), map,       std::move(sys), std::move(u_full),
          std::move(pdas), std::move(mult), std::move(rec), std::move(ustar)};
}

// Synthetic affine-patch problem: zero load, affine boundary data, obstacle
// far below. The discrete solution is exact, the estimator must vanish.
hho::ProblemSpec affine_patch() {
  hho::ProblemSpec spec;
  spec.name = "affine_patch";
  spec.initial_mesh =
      hho::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1, 2}}, {{0, 2, 3}}});
  spec.f = zero_fn();
  spec.chi = [](const Eigen::Vector2d&) { return -1e9; };
  spec.chi_gradient = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero(); };
  spec.g = [](const Eigen::Vector2d& p) { return 0.3 + 1.4 * p.x() - 0.8 * p.y(); };
  return spec;
}

}  // namespace

TEST_CASE("estimator vanishes on the affine patch") {
  hho::ProblemSpec problem = affine_patch();
  Mesh mesh = hho::uniform_refine(problem.initial_mesh);
  for (int k = 0; k <= 1; ++k) {
    Solved s = solve_problem(problem, mesh, k);
    hho::EstimatorBreakdown est =
        hho::estimate(s.mesh, s.map, s.u_full, s.rec, s.mult, s.pdas.active, s.ustar, problem);
    CHECK(est.eta() <= 1e-10);
  }
}

TEST_CASE("estimator components against hand values on a synthetic state") {
  // Mesh of (-1,1)^2, k = 0; u = 0, sigma = -2 everywhere, all cells active,
  // reconstruction = 0, ustar = -x, chi = 0, f = 0. Then per cell:
  //   e1 = |T|, e2 = 0, e3 = 0,
  //   epos = area of {x > 0} in T, econ = 2 * int_{x<0 in T} |x|.
  Mesh mesh = hho::build_mesh({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}},
                              {{{0, 1, 2}}, {{0, 2, 3}}});
  hho::DofMap map = build_dof_map(mesh, 0);
  Eigen::VectorXd u_full = Eigen::VectorXd::Zero(map.total());
  hho::PiecewiseField rec(mesh, 1, Eigen::MatrixXd::Zero(2, 3));

  hho::Multiplier mult;
  mult.sigma_cell = Eigen::VectorXd::Constant(2, -2.0);
  mult.sigma_face = Eigen::MatrixXd::Zero(map.n_faces, 1);

  hho::LagrangeNodes nodes = hho::LagrangeNodes::create(mesh, 1);
  Eigen::VectorXd node_values(nodes.count);
  for (int n = 0; n < nodes.count; ++n) node_values[n] = -nodes.coordinate(mesh, n).x();
  hho::ConformingField ustar(1, node_values);

  hho::ProblemSpec problem = affine_patch();
  problem.chi = zero_fn();
  problem.f = zero_fn();

  hho::EstimatorBreakdown est = hho::estimate(mesh, map, u_full, rec, mult,
                                              {1, 1}, ustar, problem);
  // Cell 0 = {(-1,-1),(1,-1),(1,1)}: area 2, {x<0} part 0.5, int_{x<0}|x| = 1/6.
  CHECK(est.e1[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(est.e2[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(est.e3[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(est.epos[0] == doctest::Approx(1.5).epsilon(0.02));
  CHECK(est.econ[0] == doctest::Approx(1.0 / 3.0).epsilon(0.02));
  // Cell 1 is the mirror image.
  CHECK(est.epos[1] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(est.econ[1] == doctest::Approx(2.0 * (2.0 / 3.0 - 1.0 / 6.0)).epsilon(0.02));
  CHECK(est.eta_sq() ==
        doctest::Approx(est.eta1_sq + est.epos_sq + est.econ_sum).epsilon(1e-12));
}

TEST_CASE("volume residual reduces to the data oscillation") {
  hho::ProblemSpec problem = hho::example1();
  Mesh mesh = hho::refine_nvb(problem.initial_mesh,
                              {0, 1, 2, 3});
  for (int k = 0; k <= 1; ++k) {
    Solved s = solve_problem(problem, mesh, k);
    hho::EstimatorBreakdown est =
        hho::estimate(s.mesh, s.map, s.u_full, s.rec, s.mult, s.pdas.active, s.ustar, problem);
    for (int t = 0; t < s.mesh.cell_count(); ++t) {
      double osc = hho::data_oscillation_sq(s.mesh, t, problem.f);
      CHECK(est.e2[t] == doctest::Approx(osc).epsilon(1e-12));
    }
  }
}

TEST_CASE("positive part vanishes when the obstacle stays below") {
  hho::ProblemSpec problem = hho::flat_obstacle();
  Solved s = solve_problem(problem, hho::uniform_refine(problem.initial_mesh), 1);
  hho::EstimatorBreakdown est =
      hho::estimate(s.mesh, s.map, s.u_full, s.rec, s.mult, s.pdas.active, s.ustar, problem);
  CHECK(est.epos_sq == 0.0);
  CHECK(est.econ_sum == 0.0);
}

TEST_CASE("stabilization sum matches the assembled stabilization form") {
  hho::ProblemSpec problem = hho::example1();
  Mesh mesh = hho::uniform_refine(problem.initial_mesh);
  for (int k = 0; k <= 1; ++k) {
    Solved s = solve_problem(problem, mesh, k);
    hho::EstimatorBreakdown est =
        hho::estimate(s.mesh, s.map, s.u_full, s.rec, s.mult, s.pdas.active, s.ustar, problem);

    double sh = 0.0;
    Eigen::VectorXd local(hho::local_dof_count(k));
    for (int t = 0; t < s.mesh.cell_count(); ++t) {
      Eigen::MatrixXd R = hho::gradient_reconstruction(s.mesh, t, k);
      Eigen::MatrixXd S = hho::stabilization(s.mesh, t, k, R);
      local[0] = s.u_full[s.map.cell_dof(t)];
      for (int e = 0; e < 3; ++e)
        for (int j = 0; j <= k; ++j)
          local[hho::local_face_offset(e, k) + j] =
              s.u_full[s.map.face_dof(s.mesh.cell_face(t, e), j)];
      sh += local.dot(S * local);
    }
    CHECK(est.eta3_sq == doctest::Approx(sh).epsilon(1e-12));
  }
}

TEST_CASE("all estimator components are essentially nonnegative") {
  hho::ProblemSpec problem = hho::example1();
  Solved s = solve_problem(problem, hho::uniform_refine(problem.initial_mesh), 1);
  hho::EstimatorBreakdown est =
      hho::estimate(s.mesh, s.map, s.u_full, s.rec, s.mult, s.pdas.active, s.ustar, problem);
  for (int t = 0; t < s.mesh.cell_count(); ++t) {
    CHECK(est.e1[t] >= -1e-14);
    CHECK(est.e2[t] >= -1e-14);
    CHECK(est.e3[t] >= -1e-14);
    CHECK(est.epos[t] >= -1e-14);
    CHECK(est.econ[t] >= -1e-14);
  }
}

TEST_CASE("energy error vanishes for reproduced quadratics") {
  // u = x^2 - y^2 is harmonic: f = 0, obstacle far below, g the exact trace.
  hho::ProblemSpec problem;
  problem.name = "harmonic_quadratic";
  problem.initial_mesh =
      hho::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1, 2}}, {{0, 2, 3}}});
  problem.f = zero_fn();
  problem.chi = [](const Eigen::Vector2d&) { return -1e9; };
  problem.chi_gradient = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero(); };
  auto u = [](const Eigen::Vector2d& p) { return p.x() * p.x() - p.y() * p.y(); };
  problem.g = u;
  problem.exact = hho::ExactSolution{
      u, [](const Eigen::Vector2d& p) { return Eigen::Vector2d(2.0 * p.x(), -2.0 * p.y()); }};

  Solved s = solve_problem(problem, hho::uniform_refine(problem.initial_mesh), 1);
  double err = hho::exact_energy_error(s.mesh, s.rec, problem);
  CHECK(err <= 1e-11);
}

TEST_CASE("energy error agrees with a subdivided high-degree oracle") {
  hho::ProblemSpec problem = hho::example1();
  Mesh mesh = hho::refine_nvb(problem.initial_mesh, {0, 1, 2, 3});
  REQUIRE(mesh.cell_count() == 8);
  Solved s = solve_problem(problem, mesh, 1);

  double production = hho::exact_energy_error(s.mesh, s.rec, problem);

  // Oracle: degree-10 rule on 4 levels of subdivision, every cell.
  const auto& rule = hho::triangle_rule(10);
  double oracle_sq = 0.0;
  for (int t = 0; t < s.mesh.cell_count(); ++t) {
    const auto& c = s.mesh.cell(t);
    std::function<double(Eigen::Vector2d, Eigen::Vector2d, Eigen::Vector2d, int)> rec_int =
        [&](Eigen::Vector2d a, Eigen::Vector2d b, Eigen::Vector2d cc, int depth) -> double {
      if (depth == 0) {
        double jac = (b.x() - a.x()) * (cc.y() - a.y()) - (cc.x() - a.x()) * (b.y() - a.y());
        double sum = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          Eigen::Vector2d p = rule.bary(q, 0) * a + rule.bary(q, 1) * b + rule.bary(q, 2) * cc;
          sum += rule.weights[q] * jac *
                 (problem.exact->gradient(p) - s.rec.gradient(s.mesh, t, p)).squaredNorm();
        }
        return sum;
      }
      Eigen::Vector2d ab = 0.5 * (a + b), bc = 0.5 * (b + cc), ca = 0.5 * (cc + a);
      return rec_int(a, ab, ca, depth - 1) + rec_int(b, bc, ab, depth - 1) +
             rec_int(cc, ca, bc, depth - 1) + rec_int(ab, bc, ca, depth - 1);
    };
    oracle_sq += rec_int(s.mesh.vertex(c[0]), s.mesh.vertex(c[1]), s.mesh.vertex(c[2]), 4);
  }
  double reference = std::sqrt(oracle_sq);
  CHECK(std::abs(production - reference) <= 1e-6 * reference);
}

TEST_CASE("efficiency index") {
  CHECK(hho::efficiency_index(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(hho::efficiency_index(1.0, 2.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(hho::efficiency_index(0.0, 1.0), std::domain_error);
}

TEST_CASE("local efficiency ratios stay bounded on a short adaptive run") {
  hho::ProblemSpec problem = hho::example1();
  hho::AdaptOptions opts;
  opts.k = 1;
  opts.max_dofs = 2500;

  std::vector<double> p95;
  hho::LevelObserver observer = [&](int, const hho::LevelState& state) {
    Eigen::VectorXd ratios = hho::local_efficiency_ratios(
        state.mesh, state.map, state.u_full, state.reconstruction, state.estimator, problem);
    std::vector<double> sorted(ratios.data(), ratios.data() + ratios.size());
    std::sort(sorted.begin(), sorted.end());
    p95.push_back(sorted[static_cast<size_t>(0.95 * (sorted.size() - 1))]);
  };
  hho::ConvergenceHistory history = hho::adaptive_loop(problem, opts, observer);
  REQUIRE(history.completed);
  REQUIRE(p95.size() >= 3);
  for (size_t i = 1; i < p95.size(); ++i) CHECK(p95[i] <= 2.0 * p95[0]);
}
