#include "hho/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace hho {

namespace {

Mesh square_mesh(double lo, double hi) {
  return build_mesh({{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}},
                    {{{0, 1, 2}}, {{0, 2, 3}}});
}

// Four triangles fanning around the center vertex.
Mesh square_mesh_centered(double lo, double hi) {
  double mid = 0.5 * (lo + hi);
  return build_mesh({{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}, {mid, mid}},
                    {{{0, 1, 4}}, {{1, 2, 4}}, {{2, 3, 4}}, {{3, 0, 4}}});
}

// (-2,2)^2 minus the closed fourth quadrant, two triangles per remaining
// quadrant with the diagonals through the reentrant corner.
Mesh l_domain_mesh() {
  return build_mesh(
      {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {-2, 2}, {-2, 0}, {-2, -2}, {0, -2}},
      {{{0, 1, 2}}, {{0, 2, 3}}, {{0, 3, 4}}, {{0, 4, 5}}, {{0, 5, 6}}, {{0, 6, 7}}});
}

GradientFn zero_gradient() {
  return [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero(); };
}

// Quintic blending factor of the second benchmark, as a function of r.
struct RadialBlend {
  // gamma1 and its first two derivatives with respect to r; rt = 2(r - 1/4).
  static double value(double r) {
    double rt = 2.0 * (r - 0.25);
    if (rt < 0.0) return 1.0;
    if (rt >= 1.0) return 0.0;
    return ((-6.0 * rt + 15.0) * rt - 10.0) * rt * rt * rt + 1.0;
  }
  static double d1(double r) {
    double rt = 2.0 * (r - 0.25);
    if (rt < 0.0 || rt >= 1.0) return 0.0;
    return 2.0 * ((-30.0 * rt + 60.0) * rt - 30.0) * rt * rt;
  }
  static double d2(double r) {
    double rt = 2.0 * (r - 0.25);
    if (rt < 0.0 || rt >= 1.0) return 0.0;
    return 4.0 * ((-120.0 * rt + 180.0) * rt - 60.0) * rt;
  }
};

double theta_of(const Eigen::Vector2d& p) {
  double th = std::atan2(p.y(), p.x());
  return th < 0.0 ? th + 2.0 * M_PI : th;
}

}  // namespace

ProblemSpec example1() {
  constexpr double r0 = 0.7;
  constexpr double r0sq = r0 * r0;

  ProblemSpec spec;
  spec.name = "example1";
  spec.initial_mesh = square_mesh_centered(-1.0, 1.0);
  spec.chi = [](const Eigen::Vector2d&) { return 0.0; };
  spec.chi_gradient = zero_gradient();
  spec.f = [](const Eigen::Vector2d& p) {
    double rsq = p.squaredNorm();
    return rsq > r0sq ? -4.0 * (4.0 * rsq - 2.0 * r0sq)
                      : -8.0 * r0sq * (1.0 - rsq + r0sq);
  };
  ExactSolution exact;
  exact.value = [](const Eigen::Vector2d& p) {
    double q = p.squaredNorm() - r0sq;
    return q > 0.0 ? q * q : 0.0;
  };
  exact.gradient = [](const Eigen::Vector2d& p) -> Eigen::Vector2d {
    double q = p.squaredNorm() - r0sq;
    return q > 0.0 ? Eigen::Vector2d(4.0 * q * p) : Eigen::Vector2d::Zero();
  };
  spec.g = exact.value;
  spec.exact = std::move(exact);
  spec.interface_radii = {r0};
  return spec;
}

ProblemSpec example2() {
  ProblemSpec spec;
  spec.name = "example2";
  spec.initial_mesh = l_domain_mesh();
  spec.chi = [](const Eigen::Vector2d&) { return 0.0; };
  spec.chi_gradient = zero_gradient();
  spec.g = [](const Eigen::Vector2d&) { return 0.0; };

  auto u = [](const Eigen::Vector2d& p) {
    double r = p.norm();
    if (r == 0.0) return 0.0;
    return std::pow(r, 2.0 / 3.0) * std::sin(2.0 * theta_of(p) / 3.0) * RadialBlend::value(r);
  };
  auto du = [](const Eigen::Vector2d& p) -> Eigen::Vector2d {
    double r = p.norm();
    if (r < 1e-14) return Eigen::Vector2d::Zero();
    double th = theta_of(p);
    double s = std::sin(2.0 * th / 3.0), cth = std::cos(2.0 * th / 3.0);
    double R = std::pow(r, 2.0 / 3.0) * RadialBlend::value(r);
    double dR = (2.0 / 3.0) * std::pow(r, -1.0 / 3.0) * RadialBlend::value(r) +
                std::pow(r, 2.0 / 3.0) * RadialBlend::d1(r);
    Eigen::Vector2d er = p / r, et(-er.y(), er.x());
    return dR * s * er + R * (2.0 / 3.0) * cth / r * et;
  };
  spec.f = [](const Eigen::Vector2d& p) {
    double r = p.norm();
    double gamma2 = r <= 1.25 ? 0.0 : 1.0;
    double g1p = RadialBlend::d1(r);
    double g1pp = RadialBlend::d2(r);
    if (g1p == 0.0 && g1pp == 0.0) return -gamma2;
    double s = std::sin(2.0 * theta_of(p) / 3.0);
    return -std::pow(r, 2.0 / 3.0) * s * (g1p / r + g1pp) -
           (4.0 / 3.0) * std::pow(r, -1.0 / 3.0) * s * g1p - gamma2;
  };
  spec.exact = ExactSolution{u, du};
  spec.interface_radii = {0.25, 0.75, 1.25};
  spec.corner_singularity = true;
  return spec;
}

ProblemSpec smooth_unconstrained() {
  ProblemSpec spec;
  spec.name = "smooth_unconstrained";
  spec.initial_mesh = square_mesh(0.0, 1.0);
  spec.chi = [](const Eigen::Vector2d&) { return -1e9; };
  spec.chi_gradient = zero_gradient();
  spec.g = [](const Eigen::Vector2d&) { return 0.0; };
  spec.f = [](const Eigen::Vector2d& p) {
    return 2.0 * M_PI * M_PI * std::sin(M_PI * p.x()) * std::sin(M_PI * p.y());
  };
  ExactSolution exact;
  exact.value = [](const Eigen::Vector2d& p) {
    return std::sin(M_PI * p.x()) * std::sin(M_PI * p.y());
  };
  exact.gradient = [](const Eigen::Vector2d& p) -> Eigen::Vector2d {
    return {M_PI * std::cos(M_PI * p.x()) * std::sin(M_PI * p.y()),
            M_PI * std::sin(M_PI * p.x()) * std::cos(M_PI * p.y())};
  };
  spec.exact = std::move(exact);
  return spec;
}

ProblemSpec flat_obstacle() {
  ProblemSpec spec;
  spec.name = "flat_obstacle";
  spec.initial_mesh = square_mesh(0.0, 1.0);
  spec.chi = [](const Eigen::Vector2d&) { return -1.0; };
  spec.chi_gradient = zero_gradient();
  spec.g = [](const Eigen::Vector2d&) { return 0.0; };
  spec.f = [](const Eigen::Vector2d&) { return 1.0; };
  return spec;
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "smooth_unconstrained") return smooth_unconstrained();
  if (name == "flat_obstacle") return flat_obstacle();
  throw std::invalid_argument("unknown problem: " + name);
}

std::vector<std::string> problem_names() {
  return {"example1", "example2", "smooth_unconstrained", "flat_obstacle"};
}

}  // namespace hho
