#pragma once

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhm/chebyshev.hpp"

namespace qhm {

// e(x) = exp(2*pi*i*x)
cplx e2pi(double x);

struct WindowOverflow : std::runtime_error {
  explicit WindowOverflow(const std::string& m) : std::runtime_error(m) {}
};
struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& m) : std::runtime_error(m) {}
};
struct ParamsMismatch : std::invalid_argument {
  explicit ParamsMismatch(const std::string& m) : std::invalid_argument(m) {}
};

// One algebra instance: the integer twist c, the deformation parameters
// (mu, nu) and the discretization (Chebyshev order in x, Fourier window in y,
// degree window in p).
struct QhmParams {
  int c = 2;
  double mu = 0.3;
  double nu = 0.2;
  int nx = 128;
  int ny = 64;     // Fourier indices n in [-ny, ny]
  int p_max = 4;   // degrees p in [-p_max, p_max]
  double tol_alg = 1e-9;
  double tol_num = 1e-5;

  ChebGrid grid;       // [0,1], n = nx
  ChebGrid grid_fine;  // [0,1], n = 2*nx; products are formed here and
                       // truncated back to avoid aliasing

  // Precomputed fold counts and barycentric rows for evaluating nodal data
  // at the shifted nodes x_j - s.
  struct ShiftData {
    std::vector<int> fold;                  // k_j = floor(x_j - s)
    std::vector<std::vector<double>> rows;  // interp row at x_j - s - k_j
  };
  const ShiftData& shift(double s) const;
  // Same, but the target nodes are the fine-grid nodes (rows still act on
  // coarse nodal data).
  const ShiftData& shift_fine(double s) const;

  void validate() const;

 private:
  mutable std::map<long long, ShiftData> shift_cache_;
  mutable std::map<long long, ShiftData> shift_fine_cache_;
};

using ParamsPtr = std::shared_ptr<const QhmParams>;

ParamsPtr make_params(int c, double mu, double nu, int nx = 128, int ny = 64,
                      int p_max = 4, double tol_alg = 1e-9, double tol_num = 1e-5);

// A smooth algebra element F(p,x,y) = sum_n a_{p,n}(x) e(n y), stored as
// Chebyshev nodal values of the Fourier rows a_{p,n} on the fundamental
// strip x in [0,1].  Rows are kept sparsely: absent (p,n) means zero.
class QhmElement {
 public:
  using Rows = std::map<int, std::vector<cplx>>;  // n -> nodal values

  ParamsPtr par;
  std::map<int, Rows> coeffs;  // p -> rows

  QhmElement() = default;
  explicit QhmElement(ParamsPtr p) : par(std::move(p)) {}

  std::vector<int> degrees() const;
  const std::vector<cplx>* row(int p, int n) const;
  std::vector<cplx>& row_mut(int p, int n);

  // Drops rows whose sup-norm is below eps.
  void prune(double eps = 1e-300);
};

QhmElement zero_element(const ParamsPtr& par);
QhmElement unit_element(const ParamsPtr& par);
QhmElement u1_element(const ParamsPtr& par);  // U1(0,x,y) = e(x)
QhmElement u2_element(const ParamsPtr& par);  // U2(0,x,y) = e(y)

// F(p,x,y) for arbitrary real x via the fold relation
// a_{p,m}(x+k) = e(k c p^2 nu) a_{p,m+kcp}(x).
cplx evaluate(const QhmElement& F, int p, double x, double y);

QhmElement add(const QhmElement& F, const QhmElement& G);
QhmElement sub(const QhmElement& F, const QhmElement& G);
QhmElement scale(cplx lambda, const QhmElement& F);
QhmElement mul(const QhmElement& F, const QhmElement& G);
QhmElement star(const QhmElement& F);

// Fourier rows of degree p of F sampled at the shifted nodes x_j - s,
// folded back into [0,1].  Output key is the Fourier index after the fold
// re-indexing; contributions that fall outside the window raise
// WindowOverflow when they carry mass above tol_alg.
QhmElement::Rows folded_rows(const QhmElement& F, int p, double s);

// Frame (xi1, xi2) built from the bump partition chi1^2 + chi2^2 = 1
// subordinated to the arcs (-1/3,1/3) and (1/6,5/6).
struct Frame {
  QhmElement xi1;
  QhmElement xi2;
};
Frame build_frame(const ParamsPtr& par);

// Smooth partition bumps on the circle used by the frame (exposed for tests).
double frame_chi(int i, double x);

// Degree-11 polynomial smoothstep (0 for t <= 0, 1 for t >= 1, C^5 at the
// ends) underlying all bump partitions.
double smooth_step(double t);

// Deterministic pseudo-random noncommutative polynomial in the generators
// {1, U1, U1*, U2, U2*, xi1, xi2, xi1*, xi2*}.
QhmElement random_element(const ParamsPtr& par, unsigned long long seed, int length);

// Coefficient sup-distance plus max deviation on a fixed evaluation lattice.
double distance(const QhmElement& F, const QhmElement& G);

double sup_norm_coeffs(const QhmElement& F);

}  // namespace qhm
