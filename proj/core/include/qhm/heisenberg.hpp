#pragma once

#include "qhm/element.hpp"

namespace qhm {

// Parameters (r,s,t) of the upper-triangular Heisenberg matrix.
struct GroupElem {
  double r = 0.0, s = 0.0, t = 0.0;
};

// Composition law realized by the action: t'' = t + t' + c s r'.  For c = 1
// this is the matrix product with rows [[1, s, t], [0, 1, r], [0, 0, 1]]; for
// general c the group is isomorphic to that one via t -> t / c.
GroupElem compose(const GroupElem& g, const GroupElem& h, int c = 1);

struct DerivationCoeffs {
  double u = 0.0, v = 0.0, w = 0.0;
};

// alpha_{(r,s,t)}(F)(p,x,y) = e(-p(t + c s (x - r - p mu))) F(p, x-r, y-s)
QhmElement act_alpha(const GroupElem& g, const QhmElement& F);

// sigma = alpha_{(2 mu, 2 nu, 0)}
QhmElement sigma(const QhmElement& F);

// d1 = -d/dx, d2 = -d/dy - i 2 pi p c (x - p mu - (1/4 - mu)), d3 = -i 2 pi p
QhmElement derive(int i, const QhmElement& F);

QhmElement derive_combo(const DerivationCoeffs& d, const QhmElement& F);

// tau(F) = integral of a_{0,0} over [0,1]
cplx trace(const QhmElement& F);

// Solves alpha_g o d_{(u,v,w)} = d_{(u',v',w')} o alpha_g for the primed
// coefficients and returns the worst residual of the identity on seeded
// elements through *residual (when non-null).
DerivationCoeffs check_transport(const GroupElem& g, const DerivationCoeffs& in,
                                 const ParamsPtr& par, double* residual = nullptr);

}  // namespace qhm
