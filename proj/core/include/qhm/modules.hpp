#pragma once

#include "qhm/heisenberg.hpp"

namespace qhm {

// A compactly supported smooth vector f(x,y) of the projective module E:
// y-Fourier rows b_n on a Chebyshev grid over the x-support [grid.a, grid.b],
// zero outside.
struct ModuleVector {
  ParamsPtr par;
  ChebGrid grid;
  std::map<int, std::vector<cplx>> rows;  // n -> nodal values b_n(x_j)

  ModuleVector() = default;
  ModuleVector(ParamsPtr p, double x_lo, double x_hi, int order);

  std::vector<cplx>& row_mut(int n);
  const std::vector<cplx>* row(int n) const;
  void prune(double eps = 1e-300);
};

cplx module_evaluate(const ModuleVector& f, double x, double y);

ModuleVector module_add(const ModuleVector& f, const ModuleVector& g);
ModuleVector module_sub(const ModuleVector& f, const ModuleVector& g);
ModuleVector module_scale(cplx lambda, const ModuleVector& f);

// Sup deviation on a fixed evaluation lattice covering both supports.
double module_distance(const ModuleVector& f, const ModuleVector& g);
double module_sup(const ModuleVector& f);

// Deterministic smooth compactly supported test vector.
ModuleVector random_module_vector(const ParamsPtr& par, unsigned long long seed);

// <f,g>_D(p,x,y) = sum_n e(c n p (y - p nu)) conj f(x+n, y) g(x - 2 p mu + n, y - 2 p nu)
QhmElement inner_product_D(const ModuleVector& f, const ModuleVector& g);

// (f.F)(x,y) = sum_q f(x - 2 q mu, y - 2 q nu) F(-q, x - 2 q mu, y - 2 q nu)
ModuleVector right_action(const ModuleVector& f, const QhmElement& F);

// Covariant action: beta_{(r,s,t)}(f)(x,y) =
//   exp(i (pi/mu) x (t + s c x / 2 - c s r)) f(x - r, y - s).
// The -csr term (absent from the naive transcription) is what makes beta
// covariant for the realized alpha; beta then composes projectively through
// the same c-weighted law as alpha.
ModuleVector act_beta(const GroupElem& g, const ModuleVector& f);

// Connexion legs: the generators of beta along the three one-parameter
// subgroups (so each satisfies the Leibniz rule against the matching
// derivation d_i):
//   leg 1: -d/dx
//   leg 2: -d/dy + i (pi c / mu) (x^2/2 - (1/4 - mu) x)   (the linear term
//          tracks the central normalization of d2)
//   leg 3: i (pi / mu) x
ModuleVector connexion_leg(int which, const ModuleVector& f);

// (dx-or-dy leg, dp leg) pairs matching phi_{1,3} and phi_{2,3}.
std::pair<ModuleVector, ModuleVector> connexion_13(const ModuleVector& f);
std::pair<ModuleVector, ModuleVector> connexion_23(const ModuleVector& f);

// theta = [leg_i, leg_3]; equals (-i pi / mu) f for i = 1 and 0 for i = 2.
ModuleVector curvature_13(const ModuleVector& f);
ModuleVector curvature_23(const ModuleVector& f);

// Bumps f_j with sum_j sum_q f_j(x - 2 q mu)^2 = 1 and x-width < 1 each.
struct ModuleFrame {
  std::vector<ModuleVector> vecs;
};
ModuleFrame build_module_frame(const ParamsPtr& par);

// Frame reconstruction residual sup_lattice |sum_j f_j . <f_j, g>_D - g|.
double frame_reconstruction_residual(const ModuleFrame& fr, const ModuleVector& g);

enum class ModulePairing { tau, phi13, phi23 };

// <[E], tau> = frame trace (= 2 mu), <[E], phi_{i,3}> = tr_E of the matching
// curvature.
cplx pair_even_module(const ParamsPtr& par, ModulePairing which);

// Parameters of the image algebra D_{c,nu,mu}.
ParamsPtr swapped_params(const ParamsPtr& par);

// The isomorphism Phi: D_{c,mu,nu} -> D_{c,nu,mu} induced by
// pi(a)(x,y) = a(-y,-x), T(xi)(x,y) = exp(i 2 pi c (y+mu)(x+nu)) xi(-y,-x),
// extended through the frame recursion F_p = sum_i xi_i (xi_i* F_p).
QhmElement phi_apply(const QhmElement& F);

struct InducedResiduals {
  double intertwine_d1 = 0.0;  // -Phi d1 = (d2' + gamma' d3') Phi
  double intertwine_d2 = 0.0;  // -Phi d2 = (d1' - gamma  d3') Phi
  double intertwine_d3 = 0.0;  // -Phi d3 = d3' Phi
  double pullback_13 = 0.0;    // Phi* phi13' = phi23
  double pullback_23 = 0.0;    // Phi* phi23' = phi13
};
InducedResiduals check_induced_cocycles(const ParamsPtr& par);

// Pairings of the induced module E' over D_{c,mu,nu}: the pairings of
// E_{nu,mu} transported through Phi (phi13 <-> phi23 swap).
cplx pair_even_module_prime(const ParamsPtr& par, ModulePairing which);

}  // namespace qhm
