#include "hho/estimator.hpp"

#include "hho/local_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hho {

namespace {

struct Tri {
  Eigen::Vector2d v0, v1, v2;
  double area() const {
    return 0.5 * ((v1.x() - v0.x()) * (v2.y() - v0.y()) -
                  (v2.x() - v0.x()) * (v1.y() - v0.y()));
  }
};

Tri cell_tri(const Mesh& mesh, int t) {
  const auto& c = mesh.cell(t);
  return {mesh.vertex(c[0]), mesh.vertex(c[1]), mesh.vertex(c[2])};
}

template <typename Fn>
void quad_on_tri(const Tri& tri, const QuadRule& rule, Fn&& fn) {
  const double jac = 2.0 * tri.area();
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::Vector2d p =
        rule.bary(q, 0) * tri.v0 + rule.bary(q, 1) * tri.v1 + rule.bary(q, 2) * tri.v2;
    fn(p, rule.weights[q] * jac);
  }
}

template <typename Fn>
void quad_subdivided(const Tri& tri, const QuadRule& rule, int levels, Fn&& fn) {
  if (levels == 0) {
    quad_on_tri(tri, rule, fn);
    return;
  }
  Eigen::Vector2d m01 = 0.5 * (tri.v0 + tri.v1);
  Eigen::Vector2d m12 = 0.5 * (tri.v1 + tri.v2);
  Eigen::Vector2d m20 = 0.5 * (tri.v2 + tri.v0);
  quad_subdivided({tri.v0, m01, m20}, rule, levels - 1, fn);
  quad_subdivided({tri.v1, m12, m01}, rule, levels - 1, fn);
  quad_subdivided({tri.v2, m20, m12}, rule, levels - 1, fn);
  quad_subdivided({m01, m12, m20}, rule, levels - 1, fn);
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  Eigen::Vector2d d = b - a;
  double s = d.squaredNorm() > 0.0 ? (p - a).dot(d) / d.squaredNorm() : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (p - (a + s * d)).norm();
}

// Range of |x - center| over the (convex) cell: the max is attained at a
// vertex, the min is the point-triangle distance.
std::pair<double, double> radius_range(const Tri& tri, const Eigen::Vector2d& center) {
  double rmax = std::max({(tri.v0 - center).norm(), (tri.v1 - center).norm(),
                          (tri.v2 - center).norm()});
  auto side = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (b.x() - a.x()) * (center.y() - a.y()) - (b.y() - a.y()) * (center.x() - a.x());
  };
  bool inside = side(tri.v0, tri.v1) >= 0 && side(tri.v1, tri.v2) >= 0 &&
                side(tri.v2, tri.v0) >= 0;
  double rmin = inside ? 0.0
                       : std::min({point_segment_distance(center, tri.v0, tri.v1),
                                   point_segment_distance(center, tri.v1, tri.v2),
                                   point_segment_distance(center, tri.v2, tri.v0)});
  return {rmin, rmax};
}

bool needs_subdivision(const Tri& tri, const ProblemSpec& problem) {
  if (problem.interface_radii.empty() && !problem.corner_singularity) return false;
  auto [rmin, rmax] = radius_range(tri, problem.interface_center);
  if (problem.corner_singularity && rmin <= 1e-12) return true;
  for (double rho : problem.interface_radii)
    if (rmin <= rho && rho <= rmax) return true;
  return false;
}

}  // namespace

EstimatorBreakdown estimate(const Mesh& mesh, const DofMap& map,
                            const Eigen::VectorXd& u_full, const PiecewiseField& rec,
                            const Multiplier& mult, const std::vector<char>& active,
                            const ConformingField& ustar, const ProblemSpec& problem) {
  const int k = map.k;
  const int nc = mesh.cell_count();
  if (static_cast<int>(active.size()) != nc || mult.sigma_cell.size() != nc ||
      u_full.size() != map.total())
    throw std::invalid_argument("estimate: inputs from mismatched mesh levels");

  EstimatorBreakdown out;
  out.e1 = Eigen::VectorXd::Zero(nc);
  out.e2 = Eigen::VectorXd::Zero(nc);
  out.e3 = Eigen::VectorXd::Zero(nc);
  out.epos = Eigen::VectorXd::Zero(nc);
  out.econ = Eigen::VectorXd::Zero(nc);
  out.total = Eigen::VectorXd::Zero(nc);

  const QuadRule& smooth_rule = triangle_rule(std::max(2 * (k + 1), 4));
  const QuadRule& sign_rule = triangle_rule(5);
  Eigen::VectorXd local(local_dof_count(k));

  for (int t = 0; t < nc; ++t) {
    Tri tri = cell_tri(mesh, t);
    const double h = mesh.cell_diameter(t);
    const double area = mesh.cell_area(t);

    // e1: both fields are polynomials of degree <= k+1, the rule is exact.
    quad_on_tri(tri, smooth_rule, [&](const Eigen::Vector2d& p, double w) {
      out.e1[t] += w * (rec.gradient(mesh, t, p) - ustar.gradient(mesh, t, p)).squaredNorm();
    });

    // e2: the volume residual f + Lap(p u) - sigma_T minus its cell mean.
    {
      CellBasis basis(mesh, t, k + 1);
      double lap = basis.laplacians().dot(rec.cell_coefficients(t));
      std::vector<double> vals(smooth_rule.size());
      std::vector<double> wts(smooth_rule.size());
      int i = 0;
      double mean = 0.0;
      quad_on_tri(tri, smooth_rule, [&](const Eigen::Vector2d& p, double w) {
        vals[i] = problem.f(p) + lap - mult.sigma_cell[t];
        wts[i] = w;
        mean += w * vals[i];
        ++i;
      });
      mean /= area;
      double sq = 0.0;
      for (int j = 0; j < i; ++j) sq += wts[j] * (vals[j] - mean) * (vals[j] - mean);
      out.e2[t] = h * h * sq;
    }

    // e3: stabilization energy of the local dofs, in the factored form so
    // that near-consistent solutions do not drown in cancellation.
    {
      Eigen::MatrixXd R = gradient_reconstruction(mesh, t, k);
      local[0] = u_full[map.cell_dof(t)];
      for (int e = 0; e < 3; ++e)
        for (int j = 0; j <= k; ++j)
          local[local_face_offset(e, k) + j] =
              u_full[map.face_dof(mesh.cell_face(t, e), j)];
      out.e3[t] = stabilization_energy(mesh, t, k, R, local);
    }

    // Obstacle terms: the sign of chi - u* is sampled on 4 sub-triangles with
    // a degree-5 rule; no interface root-finding.
    double econ_int = 0.0;
    quad_subdivided(tri, sign_rule, 1, [&](const Eigen::Vector2d& p, double w) {
      double d = problem.chi(p) - ustar.value(mesh, t, p);
      if (d > 0.0)
        out.epos[t] +=
            w * (problem.chi_gradient(p) - ustar.gradient(mesh, t, p)).squaredNorm();
      else
        econ_int += w * d;
    });
    if (active[t]) out.econ[t] = mult.sigma_cell[t] * econ_int;

    out.total[t] = out.e1[t] + out.e2[t] + out.e3[t] + out.epos[t] + out.econ[t];
  }

  out.eta1_sq = out.e1.sum();
  out.eta2_sq = out.e2.sum();
  out.eta3_sq = out.e3.sum();
  out.epos_sq = out.epos.sum();
  out.econ_sum = out.econ.sum();
  return out;
}

double exact_energy_error(const Mesh& mesh, const PiecewiseField& rec,
                          const ProblemSpec& problem) {
  if (!problem.exact)
    throw std::invalid_argument("exact_energy_error: problem has no exact solution");
  const GradientFn& du = problem.exact->gradient;
  const QuadRule& base = triangle_rule(6);
  const QuadRule& fine = triangle_rule(10);
  double err_sq = 0.0;
  for (int t = 0; t < mesh.cell_count(); ++t) {
    Tri tri = cell_tri(mesh, t);
    double cell_sq = 0.0;
    auto accumulate = [&](const Eigen::Vector2d& p, double w) {
      cell_sq += w * (du(p) - rec.gradient(mesh, t, p)).squaredNorm();
    };
    if (needs_subdivision(tri, problem))
      quad_subdivided(tri, fine, 2, accumulate);
    else
      quad_on_tri(tri, base, accumulate);
    err_sq += cell_sq;
  }
  return std::sqrt(err_sq);
}

double efficiency_index(double error, double eta) {
  if (!(error > 0.0) || !std::isfinite(error))
    throw std::domain_error("efficiency_index: error is not positive");
  return eta / error;
}

double data_oscillation_sq(const Mesh& mesh, int t, const ScalarFn& f, int quad_degree) {
  const QuadRule& rule = triangle_rule(quad_degree);
  Tri tri = cell_tri(mesh, t);
  std::vector<double> vals(rule.size()), wts(rule.size());
  int i = 0;
  double mean = 0.0;
  quad_on_tri(tri, rule, [&](const Eigen::Vector2d& p, double w) {
    vals[i] = f(p);
    wts[i] = w;
    mean += w * vals[i];
    ++i;
  });
  mean /= mesh.cell_area(t);
  double sq = 0.0;
  for (int j = 0; j < i; ++j) sq += wts[j] * (vals[j] - mean) * (vals[j] - mean);
  double h = mesh.cell_diameter(t);
  return h * h * sq;
}

Eigen::VectorXd local_efficiency_ratios(const Mesh& mesh, const DofMap& map,
                                        const Eigen::VectorXd& u_full,
                                        const PiecewiseField& rec,
                                        const EstimatorBreakdown& est,
                                        const ProblemSpec& problem) {
  const int nc = mesh.cell_count();
  if (!problem.exact)
    throw std::invalid_argument("local_efficiency_ratios: exact solution required");
  const GradientFn& du = problem.exact->gradient;
  const QuadRule& base = triangle_rule(6);
  const QuadRule& fine = triangle_rule(10);

  Eigen::VectorXd err_sq(nc), osc_sq(nc);
  for (int t = 0; t < nc; ++t) {
    Tri tri = cell_tri(mesh, t);
    double cell_sq = 0.0;
    auto accumulate = [&](const Eigen::Vector2d& p, double w) {
      cell_sq += w * (du(p) - rec.gradient(mesh, t, p)).squaredNorm();
    };
    if (needs_subdivision(tri, problem))
      quad_subdivided(tri, fine, 2, accumulate);
    else
      quad_on_tri(tri, base, accumulate);
    err_sq[t] = cell_sq;
    osc_sq[t] = data_oscillation_sq(mesh, t, problem.f);
  }

  std::vector<std::vector<int>> vertex_cells(mesh.vertex_count());
  for (int t = 0; t < nc; ++t)
    for (int v : mesh.cell(t)) vertex_cells[v].push_back(t);

  Eigen::VectorXd ratios(nc);
  std::vector<char> in_patch(nc, 0);
  for (int t = 0; t < nc; ++t) {
    std::vector<int> patch;
    for (int v : mesh.cell(t))
      for (int n : vertex_cells[v])
        if (!in_patch[n]) {
          in_patch[n] = 1;
          patch.push_back(n);
        }
    double denom_sq = 0.0;
    for (int n : patch) {
      denom_sq += err_sq[n] + est.e3[n] + osc_sq[n];
      in_patch[n] = 0;
    }
    ratios[t] = denom_sq > 0.0 ? std::sqrt(est.total[t] / denom_sq)
                               : std::numeric_limits<double>::infinity();
  }
  return ratios;
}

}  // namespace hho
