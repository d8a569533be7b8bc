#include "fsidwr/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fsidwr {

namespace {

// Legendre polynomial P_n and derivative at x via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

EdgeQuadrature gauss_edge(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("gauss_edge: unsupported point count");
  EdgeQuadrature q;
  q.points.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess on [-1,1], polished by Newton.
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]
    q.points[i] = 0.5 * (x + 1.0);
    q.weights[i] = 0.5 * w;
  }
  return q;
}

CellQuadrature gauss_cell(int n) {
  const EdgeQuadrature e = gauss_edge(n);
  CellQuadrature q;
  q.points.reserve(n * n);
  q.weights.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      q.points.emplace_back(e.points[i], e.points[j]);
      q.weights.push_back(e.weights[i] * e.weights[j]);
    }
  return q;
}

}  // namespace fsidwr
