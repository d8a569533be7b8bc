#include "fsidwr/element.hpp"

#include <stdexcept>

namespace fsidwr {

ScalarElement::ScalarElement(int degree) : degree_(degree), n_((degree + 1) * (degree + 1)) {
  if (degree < 1 || degree > 8) throw std::invalid_argument("ScalarElement: bad degree");
}

Eigen::Vector2d ScalarElement::node(int j) const {
  const int k = degree_;
  const int ix = j % (k + 1);
  const int iy = j / (k + 1);
  return {static_cast<double>(ix) / k, static_cast<double>(iy) / k};
}

double ScalarElement::value_1d(int i, double x) const {
  const int k = degree_;
  double v = 1.0;
  const double xi = static_cast<double>(i) / k;
  for (int m = 0; m <= k; ++m) {
    if (m == i) continue;
    const double xm = static_cast<double>(m) / k;
    v *= (x - xm) / (xi - xm);
  }
  return v;
}

double ScalarElement::derivative_1d(int i, double x) const {
  const int k = degree_;
  const double xi = static_cast<double>(i) / k;
  double sum = 0.0;
  for (int l = 0; l <= k; ++l) {
    if (l == i) continue;
    const double xl = static_cast<double>(l) / k;
    double prod = 1.0 / (xi - xl);
    for (int m = 0; m <= k; ++m) {
      if (m == i || m == l) continue;
      const double xm = static_cast<double>(m) / k;
      prod *= (x - xm) / (xi - xm);
    }
    sum += prod;
  }
  return sum;
}

double ScalarElement::value(int j, const Eigen::Vector2d& xi) const {
  const int k = degree_;
  return value_1d(j % (k + 1), xi[0]) * value_1d(j / (k + 1), xi[1]);
}

Eigen::Vector2d ScalarElement::gradient(int j, const Eigen::Vector2d& xi) const {
  const int k = degree_;
  const int ix = j % (k + 1);
  const int iy = j / (k + 1);
  return {derivative_1d(ix, xi[0]) * value_1d(iy, xi[1]),
          value_1d(ix, xi[0]) * derivative_1d(iy, xi[1])};
}

}  // namespace fsidwr
