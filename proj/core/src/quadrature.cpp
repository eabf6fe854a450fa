#include "hho/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hho {

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on Legendre polynomials, seeded by the Chebyshev guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

EdgeRule make_edge_rule(int degree) {
  int n = degree / 2 + 1;  // n-point Gauss is exact to degree 2n-1
  Eigen::VectorXd x, w;
  gauss_legendre(n, x, w);
  EdgeRule rule;
  rule.degree = degree;
  rule.points = (x.array() + 1.0) * 0.5;
  rule.weights = w * 0.5;
  return rule;
}

// Collapsed tensor-product Gauss rule (Duffy transform): map the unit square
// to the reference triangle via (s, t) -> (s, t (1 - s)) with Jacobian (1 - s).
// For total degree d the integrand has degree at most d + 1 in s and d in t,
// so m = d/2 + 2 points in each direction are sufficient. All weights positive.
QuadRule make_triangle_rule(int degree) {
  int m = degree / 2 + 2;
  Eigen::VectorXd x, w;
  gauss_legendre(m, x, w);
  Eigen::VectorXd g = (x.array() + 1.0) * 0.5;
  Eigen::VectorXd gw = w * 0.5;

  QuadRule rule;
  rule.degree = degree;
  rule.bary.resize(m * m, 3);
  rule.weights.resize(m * m);
  int q = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j, ++q) {
      double s = g[i];
      double t = g[j] * (1.0 - s);
      rule.bary(q, 0) = 1.0 - s - t;
      rule.bary(q, 1) = s;
      rule.bary(q, 2) = t;
      rule.weights[q] = gw[i] * gw[j] * (1.0 - s);
    }
  }
  return rule;
}

}  // namespace

const QuadRule& triangle_rule(int degree) {
  if (degree < 0 || degree > 10)
    throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
  static std::map<int, QuadRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_triangle_rule(degree)).first;
  return it->second;
}

const EdgeRule& edge_rule(int degree) {
  if (degree < 0 || degree > 21)
    throw std::invalid_argument("edge_rule: unsupported degree " + std::to_string(degree));
  static std::map<int, EdgeRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_edge_rule(degree)).first;
  return it->second;
}

}  // namespace hho
