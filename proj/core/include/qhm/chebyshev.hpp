#pragma once

#include <complex>
#include <vector>

namespace qhm {

using cplx = std::complex<double>;

// Chebyshev-Lobatto grid on [a,b] with n+1 nodes in ascending order,
// plus the standard barycentric weights, the spectral differentiation
// matrix and Clenshaw-Curtis quadrature weights.
struct ChebGrid {
  int n = 0;
  double a = 0.0, b = 1.0;
  std::vector<double> nodes;    // size n+1
  std::vector<double> bary_w;   // barycentric weights
  std::vector<double> quad_w;   // Clenshaw-Curtis weights (integrate over [a,b])
  std::vector<double> diff;     // (n+1)x(n+1) row-major differentiation matrix

  ChebGrid() = default;
  ChebGrid(int n, double a, double b);

  // Row r with p(x) = sum_j r[j] * f[j] for the interpolant of nodal data f.
  std::vector<double> interp_row(double x) const;

  cplx interpolate(const std::vector<cplx>& f, double x) const;
  std::vector<cplx> derivative(const std::vector<cplx>& f) const;
  cplx integrate(const std::vector<cplx>& f) const;

  // Chebyshev coefficients d_k of the interpolant, f = sum_k d_k T_k.
  std::vector<cplx> coefficients(const std::vector<cplx>& f) const;

  // Nodal values on `coarse` of the degree-coarse.n truncation of the
  // interpolant of f (anti-aliased restriction; requires same [a,b] and
  // coarse.n <= n).
  std::vector<cplx> downsample(const std::vector<cplx>& f, const ChebGrid& coarse) const;
};

}  // namespace qhm
