#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hho/adapt.hpp"
#include "support/oracles.hpp"

#include <random>

using hho::adaptive_loop;
using hho::AdaptOptions;
using hho::dorfler_mark;

namespace {

hho::ProblemSpec affine_patch() {
  hho::ProblemSpec spec;
  spec.name = "affine_patch";
  spec.initial_mesh =
      hho::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1, 2}}, {{0, 2, 3}}});
  spec.f = [](const Eigen::Vector2d&) { return 0.0; };
  spec.chi = [](const Eigen::Vector2d&) { return -1e9; };
  spec.chi_gradient = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero(); };
  spec.g = [](const Eigen::Vector2d& p) { return 1.0 + p.x() - 2.0 * p.y(); };
  return spec;
}

}  // namespace

TEST_CASE("bulk marking hand cases") {
  Eigen::VectorXd v(5);
  v << 4, 1, 1, 1, 1;
  auto r = dorfler_mark(v, 0.3);
  CHECK(r.marked == std::vector<int>{0});

  auto all = dorfler_mark(v, 0.999);
  CHECK(all.marked.size() == 5);

  Eigen::VectorXd uniform = Eigen::VectorXd::Ones(10);
  auto u = dorfler_mark(uniform, 0.3);
  CHECK(u.marked == std::vector<int>{0, 1, 2});  // ceil(0.3 * 10), lowest indices
}

TEST_CASE("bulk marking correctness on random data") {
  std::mt19937 rng(211);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::VectorXd v(40);
    for (int i = 0; i < v.size(); ++i) v[i] = unit(rng) * unit(rng);
    double theta = 0.05 + 0.9 * unit(rng);
    auto r = dorfler_mark(v, theta);
    REQUIRE(!r.marked.empty());

    double sum = 0.0;
    for (int t : r.marked) sum += v[t];
    CHECK(sum >= theta * v.sum() - 1e-15);
    double without_last = sum - v[r.marked.back()];
    CHECK(without_last < theta * v.sum());
  }
}

TEST_CASE("all-zero indicators report convergence") {
  auto r = dorfler_mark(Eigen::VectorXd::Zero(7), 0.3);
  CHECK(r.converged);
  CHECK(r.marked.empty());
  CHECK_THROWS_AS(dorfler_mark(Eigen::VectorXd::Ones(3), 1.5), std::invalid_argument);
}

TEST_CASE("uniform strategy on the affine patch runs to the dof cap") {
  AdaptOptions opts;
  opts.k = 0;
  opts.strategy = hho::Strategy::uniform;
  opts.max_dofs = 1500;
  opts.max_levels = 12;
  hho::ConvergenceHistory h = adaptive_loop(affine_patch(), opts);
  REQUIRE(h.completed);
  REQUIRE(h.levels.size() >= 3);
  CHECK(h.levels.back().dofs >= opts.max_dofs);
  for (const auto& r : h.levels) CHECK(r.eta_total <= 1e-9);
}

TEST_CASE("flat obstacle never activates") {
  AdaptOptions opts;
  opts.k = 0;
  opts.strategy = hho::Strategy::uniform;
  opts.max_levels = 3;
  opts.max_dofs = 1 << 20;
  hho::ConvergenceHistory h = adaptive_loop(hho::flat_obstacle(), opts);
  REQUIRE(h.completed);
  CHECK(h.levels.size() == 3);
  for (const auto& r : h.levels) CHECK(r.active_cells == 0);
}

TEST_CASE("history invariants on a short adaptive run") {
  AdaptOptions opts;
  opts.k = 1;
  opts.max_dofs = 3000;
  hho::ConvergenceHistory h = adaptive_loop(hho::example1(), opts);
  REQUIRE(h.completed);
  REQUIRE(h.levels.size() >= 4);
  for (size_t i = 1; i < h.levels.size(); ++i)
    CHECK(h.levels[i].dofs > h.levels[i - 1].dofs);
  for (const auto& r : h.levels) {
    CHECK(std::isfinite(r.eta_total));
    CHECK(r.eta_total > 0.0);
    REQUIRE(r.error_energy.has_value());
    CHECK(std::isfinite(*r.error_energy));
  }
  // The estimator decreases over any window of three consecutive levels,
  // with 10% slack.
  for (size_t i = 2; i < h.levels.size(); ++i)
    CHECK(h.levels[i].eta_total <= 1.1 * h.levels[i - 2].eta_total);
}

TEST_CASE("error decreases along the adaptive history") {
  AdaptOptions opts;
  opts.k = 1;
  opts.max_dofs = 4000;
  hho::ConvergenceHistory h = adaptive_loop(hho::example1(), opts);
  REQUIRE(h.completed);
  for (size_t i = 1; i < h.levels.size(); ++i)
    CHECK(*h.levels[i].error_energy <= 1.05 * *h.levels[i - 1].error_energy);
}

TEST_CASE("two identical runs produce identical histories") {
  AdaptOptions opts;
  opts.k = 1;
  opts.max_dofs = 2000;
  hho::ConvergenceHistory a = adaptive_loop(hho::example1(), opts);
  hho::ConvergenceHistory b = adaptive_loop(hho::example1(), opts);
  REQUIRE(a.levels.size() == b.levels.size());
  for (size_t i = 0; i < a.levels.size(); ++i) {
    CHECK(a.levels[i].cells == b.levels[i].cells);
    CHECK(a.levels[i].dofs == b.levels[i].dofs);
    CHECK(a.levels[i].eta_total == b.levels[i].eta_total);
    CHECK(a.levels[i].error_energy == b.levels[i].error_energy);
    CHECK(a.levels[i].pdas_iters == b.levels[i].pdas_iters);
  }
}

TEST_CASE("warm starts do not change the solution path") {
  AdaptOptions with;
  with.k = 0;
  with.max_dofs = 1500;
  AdaptOptions without = with;
  without.warm_start = false;
  hho::ConvergenceHistory a = adaptive_loop(hho::example1(), with);
  hho::ConvergenceHistory b = adaptive_loop(hho::example1(), without);
  REQUIRE(a.levels.size() == b.levels.size());
  for (size_t i = 0; i < a.levels.size(); ++i) {
    CHECK(a.levels[i].eta_total == doctest::Approx(b.levels[i].eta_total).epsilon(1e-12));
    CHECK(a.levels[i].active_cells == b.levels[i].active_cells);
  }
}

TEST_CASE("corner refinement dominates on the L-domain") {
  AdaptOptions opts;
  opts.k = 1;
  opts.max_dofs = 4000;
  hho::ConvergenceHistory h;
  std::vector<double> corner_fraction;
  hho::LevelObserver observer = [&](int, const hho::LevelState& state) {
    int near = 0;
    for (int t = 0; t < state.mesh.cell_count(); ++t)
      if (state.mesh.cell_centroid(t).norm() < 0.25) ++near;
    corner_fraction.push_back(static_cast<double>(near) / state.mesh.cell_count());
  };
  h = adaptive_loop(hho::example2(), opts, observer);
  REQUIRE(h.completed);
  REQUIRE(corner_fraction.size() >= 4);
  CHECK(corner_fraction.back() > corner_fraction.front());
}
