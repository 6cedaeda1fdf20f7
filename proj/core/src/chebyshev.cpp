#include "qhm/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace qhm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ChebGrid::ChebGrid(int n_, double a_, double b_) : n(n_), a(a_), b(b_) {
  if (n < 2) throw std::invalid_argument("ChebGrid: need n >= 2");
  nodes.resize(n + 1);
  bary_w.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    nodes[j] = a + (b - a) * 0.5 * (1.0 - std::cos(kPi * j / n));
    double w = (j == 0 || j == n) ? 0.5 : 1.0;
    bary_w[j] = (j % 2 == 0) ? w : -w;
  }

  // Clenshaw-Curtis weights, clencurt-style, scaled to [a,b].
  quad_w.assign(n + 1, 0.0);
  if (n % 2 == 0) {
    quad_w[0] = quad_w[n] = 1.0 / (n * n - 1.0);
  } else {
    quad_w[0] = quad_w[n] = 1.0 / (double(n) * n);
  }
  for (int i = 1; i < n; ++i) {
    double theta = kPi * i / n;
    double v = 1.0;
    int kmax = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
    for (int k = 1; k <= kmax; ++k)
      v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    if (n % 2 == 0) v -= std::cos(n * theta) / (n * n - 1.0);
    quad_w[i] = 2.0 * v / n;
  }
  double scale = (b - a) * 0.5;
  for (auto& w : quad_w) w *= scale;

  // Barycentric differentiation matrix with negative-sum-trick diagonal.
  diff.assign((n + 1) * (n + 1), 0.0);
  for (int i = 0; i <= n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      double d = (bary_w[j] / bary_w[i]) / (nodes[i] - nodes[j]);
      diff[i * (n + 1) + j] = d;
      row_sum += d;
    }
    diff[i * (n + 1) + i] = -row_sum;
  }
}

std::vector<double> ChebGrid::interp_row(double x) const {
  std::vector<double> row(n + 1, 0.0);
  // Exact-node hit: delta row.
  for (int j = 0; j <= n; ++j) {
    if (x == nodes[j] || std::abs(x - nodes[j]) < 1e-14 * (std::abs(b - a) + 1.0)) {
      row[j] = 1.0;
      return row;
    }
  }
  double denom = 0.0;
  for (int j = 0; j <= n; ++j) {
    double t = bary_w[j] / (x - nodes[j]);
    row[j] = t;
    denom += t;
  }
  for (auto& r : row) r /= denom;
  return row;
}

cplx ChebGrid::interpolate(const std::vector<cplx>& f, double x) const {
  auto row = interp_row(x);
  cplx acc = 0.0;
  for (int j = 0; j <= n; ++j) acc += row[j] * f[j];
  return acc;
}

std::vector<cplx> ChebGrid::derivative(const std::vector<cplx>& f) const {
  std::vector<cplx> out(n + 1, cplx(0.0));
  for (int i = 0; i <= n; ++i) {
    cplx acc = 0.0;
    const double* row = &diff[i * (n + 1)];
    for (int j = 0; j <= n; ++j) acc += row[j] * f[j];
    out[i] = acc;
  }
  return out;
}

std::vector<cplx> ChebGrid::coefficients(const std::vector<cplx>& f) const {
  // DCT-I: d_k = (2/n) sum''_j f_j cos(pi j k / n), then halve d_0 and d_n so
  // that f = sum_k d_k T_k without primed-sum conventions.
  std::vector<double> ct(2 * n);
  for (int m = 0; m < 2 * n; ++m) ct[m] = std::cos(kPi * m / n);
  std::vector<cplx> d(n + 1);
  for (int k = 0; k <= n; ++k) {
    cplx acc = 0.5 * (f[0] + (k % 2 == 0 ? f[n] : -f[n]));
    for (int j = 1; j < n; ++j) acc += f[j] * ct[(j * k) % (2 * n)];
    d[k] = acc * (2.0 / n);
  }
  d[0] *= 0.5;
  d[n] *= 0.5;
  return d;
}

std::vector<cplx> ChebGrid::downsample(const std::vector<cplx>& f, const ChebGrid& coarse) const {
  if (coarse.n > n || coarse.a != a || coarse.b != b)
    throw std::invalid_argument("downsample: incompatible grids");
  auto d = coefficients(f);
  int nc = coarse.n;
  std::vector<double> ct(2 * nc);
  for (int m = 0; m < 2 * nc; ++m) ct[m] = std::cos(kPi * m / nc);
  std::vector<cplx> g(nc + 1, cplx(0.0));
  for (int i = 0; i <= nc; ++i) {
    cplx acc = d[0];
    for (int k = 1; k <= nc; ++k) acc += d[k] * ct[(i * k) % (2 * nc)];
    g[i] = acc;
  }
  return g;
}

cplx ChebGrid::integrate(const std::vector<cplx>& f) const {
  cplx acc = 0.0;
  for (int j = 0; j <= n; ++j) acc += quad_w[j] * f[j];
  return acc;
}

}  // namespace qhm
