#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hho/basis.hpp"
#include "support/oracles.hpp"

#include <Eigen/Dense>

#include <random>

using hho::CellBasis;
using hho::FaceBasis;
using hho::Mesh;

namespace {

Mesh reference_triangle() {
  return hho::build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
}

Eigen::MatrixXd cell_mass(const Mesh& mesh, int t, int degree) {
  CellBasis basis(mesh, t, degree);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  const auto& rule = hho::triangle_rule(2 * degree);
  const auto& c = mesh.cell(t);
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::Vector2d p = rule.bary(q, 0) * mesh.vertex(c[0]) +
                        rule.bary(q, 1) * mesh.vertex(c[1]) +
                        rule.bary(q, 2) * mesh.vertex(c[2]);
    Eigen::VectorXd phi = basis.values(p);
    m += rule.weights[q] * 2.0 * mesh.cell_area(t) * phi * phi.transpose();
  }
  return m;
}

}  // namespace

TEST_CASE("cell basis starts with the constant") {
  Mesh mesh = reference_triangle();
  CellBasis basis(mesh, 0, 2);
  Eigen::VectorXd v = basis.values({0.3, 0.2});
  CHECK(v[0] == 1.0);
  CHECK(basis.gradients({0.3, 0.2}).row(0).norm() == 0.0);
}

TEST_CASE("cell projection reproduces constants and means") {
  Mesh mesh = reference_triangle();
  auto c7 = hho::project_cell(mesh, 0, 0, [](const Eigen::Vector2d&) { return 7.5; }, 4);
  CHECK(c7[0] == doctest::Approx(7.5).epsilon(1e-14));

  auto mean_x =
      hho::project_cell(mesh, 0, 0, [](const Eigen::Vector2d& p) { return p.x(); }, 4);
  CHECK(mean_x[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("cell projection is the identity on the target space") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Mesh mesh = oracle::random_triangle(rng);
    for (int m = 0; m <= 2; ++m) {
      Eigen::VectorXd raw(m == 0 ? 3 : 6);
      for (int i = 0; i < raw.size(); ++i) raw[i] = i < hho::cell_basis_size(m) ? coeff(rng) : 0.0;
      auto field = [&](const Eigen::Vector2d& p) { return oracle::eval_raw_poly(raw, p); };
      Eigen::VectorXd proj = hho::project_cell(mesh, 0, m, field, 4);
      CellBasis basis(mesh, 0, m);
      for (const Eigen::Vector2d& p :
           {mesh.cell_centroid(0), mesh.vertex(0), Eigen::Vector2d(0.5 * (mesh.vertex(0) + mesh.vertex(1)))})
        CHECK(hho::eval_poly(basis, proj, p) == doctest::Approx(field(p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection idempotence and orthogonality") {
  std::mt19937 rng(11);
  Mesh mesh = oracle::random_triangle(rng);
  auto field = [](const Eigen::Vector2d& p) {
    return std::sin(3.0 * p.x()) * std::cos(2.0 * p.y());
  };
  for (int m = 0; m <= 2; ++m) {
    Eigen::VectorXd proj = hho::project_cell(mesh, 0, m, field, 8);
    CellBasis basis(mesh, 0, m);
    auto as_fn = [&](const Eigen::Vector2d& p) { return hho::eval_poly(basis, proj, p); };
    Eigen::VectorXd twice = hho::project_cell(mesh, 0, m, as_fn, 8);
    CHECK((twice - proj).lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + proj.lpNorm<Eigen::Infinity>()));

    // Orthogonality of the residual against the basis, rule degree >= 2m+2.
    for (int i = 0; i < basis.size(); ++i) {
      double moment = hho::integrate_cell(mesh, 0, 2 * m + 4, [&](const Eigen::Vector2d& p) {
        return (field(p) - as_fn(p)) * basis.values(p)[i];
      });
      CHECK(std::abs(moment) <= 5e-4);  // limited by the quadrature of sin*cos
    }
  }
}

TEST_CASE("orthogonality is exact for integrable polynomial data") {
  std::mt19937 rng(13);
  Mesh mesh = oracle::random_triangle(rng);
  auto field = [](const Eigen::Vector2d& p) {
    return 1.0 + p.x() * p.x() * p.y() - 2.0 * p.y() * p.y();
  };
  for (int m = 0; m <= 2; ++m) {
    Eigen::VectorXd proj = hho::project_cell(mesh, 0, m, field, 6);
    CellBasis basis(mesh, 0, m);
    for (int i = 0; i < basis.size(); ++i) {
      double moment = hho::integrate_cell(mesh, 0, 6, [&](const Eigen::Vector2d& p) {
        return (field(p) - hho::eval_poly(basis, proj, p)) * basis.values(p)[i];
      });
      CHECK(std::abs(moment) <= 1e-13);
    }
  }
}

TEST_CASE("cell mass conditioning is scale invariant") {
  Mesh mesh = reference_triangle();
  Mesh tiny = hho::build_mesh({{0, 0}, {1e-3, 0}, {0, 1e-3}}, {{{0, 1, 2}}});
  for (int m = 1; m <= 2; ++m) {
    auto cond = [&](const Mesh& msh) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cell_mass(msh, 0, m));
      return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    };
    double c1 = cond(mesh), c2 = cond(tiny);
    CHECK(cond(mesh) > 1.0);
    CHECK(std::abs(c1 - c2) / c1 < 0.05);
  }
}

TEST_CASE("face projection basics") {
  Mesh mesh = reference_triangle();
  // Face joining (0,0) and (1,0) is local edge 2 of the cell.
  int f = mesh.cell_face(0, 2);
  REQUIRE(mesh.face(f).v == std::array<int, 2>{0, 1});

  auto c3 = hho::project_face(mesh, f, 0, [](const Eigen::Vector2d&) { return 3.0; }, 4);
  CHECK(c3[0] == doctest::Approx(3.0).epsilon(1e-14));

  auto midval =
      hho::project_face(mesh, f, 0, [](const Eigen::Vector2d& p) { return p.x(); }, 4);
  CHECK(midval[0] == doctest::Approx(0.5).epsilon(1e-14));

  // Linear data reproduced exactly for k = 1.
  auto lin =
      hho::project_face(mesh, f, 1, [](const Eigen::Vector2d& p) { return 2.0 * p.x() - 1.0; }, 4);
  FaceBasis basis(mesh, f, 1);
  for (double s : {0.0, 0.25, 1.0}) {
    Eigen::Vector2d p(s, 0.0);
    CHECK(basis.values(p).dot(lin) == doctest::Approx(2.0 * s - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("face mass is diagonal in the scaled basis") {
  std::mt19937 rng(3);
  Mesh mesh = oracle::random_triangle(rng);
  for (int e = 0; e < 3; ++e) {
    FaceBasis basis(mesh, mesh.cell_face(0, e), 1);
    Eigen::MatrixXd m = basis.mass();
    double h = mesh.face(mesh.cell_face(0, e)).length;
    CHECK(m(0, 0) == doctest::Approx(h).epsilon(1e-14));
    CHECK(m(1, 1) == doctest::Approx(h / 12.0).epsilon(1e-14));
    CHECK(m(0, 1) == 0.0);
  }
}
