#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qhm/heisenberg.hpp"
#include "qhm/matrix.hpp"

namespace qhm {

// An (n+1)-linear functional on the algebra (an n-cochain).
struct CocycleHandle {
  int arity = 0;  // cochain degree n; eval takes n+1 arguments
  bool even = true;
  std::function<cplx(const std::vector<QhmElement>&)> eval;
  std::string label;
};

// Formal sum of elementary tensors a0 (x) ... (x) an with complex weights.
struct ChainTensor {
  struct Term {
    cplx weight;
    std::vector<QhmElement> legs;  // size arity + 1
  };
  int arity = 0;
  std::vector<Term> terms;
};

// Ordered list of distinct indices from {1,2,3}: the wedge xi_{i1} ^ ... in
// the Heisenberg Lie algebra with [X1, X2] = -c X3, other brackets zero.
using WedgeWord = std::vector<int>;

// The trace as a 0-cochain.
CocycleHandle trace_cocycle(const ParamsPtr& par);

// Hochschild coboundary: (b phi)(a0,...,a_{n+1}) =
//   sum_j (-1)^j phi(..., a_j a_{j+1}, ...) + (-1)^{n+1} phi(a_{n+1} a0, ...).
CocycleHandle hochschild_b(const CocycleHandle& phi);

// Max over seeded tuples of |phi(a0,...,an) - (-1)^n phi(an, a0,...,a_{n-1})|.
double check_cyclicity(const CocycleHandle& phi, const ParamsPtr& par,
                       int n_tuples = 20, unsigned long long seed0 = 2000);

// Max deviation from multilinearity in each slot on seeded tuples.
double check_multilinearity(const CocycleHandle& phi, const ParamsPtr& par,
                            int n_tuples = 5, unsigned long long seed0 = 3000);

// Expands sum_{i<j} (-1)^{i+j} [X_{w_i}, X_{w_j}] ^ (rest) in the exterior
// algebra; true iff it vanishes, i.e. the word generates a cyclic cocycle.
bool check_wedge_condition(const WedgeWord& w, int c);

// phi_w(a0,...,an) = sum_{sigma} eps(sigma) tau(a0 d_{w_sigma(1)}a1 ... ).
CocycleHandle cocycle_from_wedge(const WedgeWord& w, const ParamsPtr& par);

// The 7 cyclic cocycles: tau, phi1, phi2, phi3, phi13, phi23, phi123.
std::vector<CocycleHandle> standard_cocycles(const ParamsPtr& par);
// phi12 from the word (1,2): a Hochschild cocycle that is not cyclic.
CocycleHandle phi12_cocycle(const ParamsPtr& par);

// Cup product with the matrix trace:
// (phi # tr)(A0,...,An) = sum_{i0..in} phi(A0(i0,i1), A1(i1,i2), ..., An(in,i0)).
std::function<cplx(const std::vector<MatrixElement>&)> cup_tr(const CocycleHandle& phi);

// <[e],[phi]> = (1/m!) (phi # tr)(e,...,e) for a projector e and arity 2m.
cplx pair_even(const MatrixElement& e, const CocycleHandle& phi);

// Odd pairing coefficient 2^{-n} / (sqrt(2i) Gamma(n/2 + 1)), principal branch.
cplx odd_pairing_coeff(int n);

// <[u],[phi]> = coeff * (phi # tr)(u*-1, u-1, u*-1, ...) for a unitary u.
cplx pair_odd(const MatrixElement& u, const CocycleHandle& phi);

// The Hochschild cycles of the duality proposition.
struct DualCycles {
  ChainTensor c1, c2, c3;      // degree 1
  ChainTensor c13, c23, c12;   // degree 2 (c12 is Hochschild-only dual)
  ChainTensor c123;            // degree 3
};
DualCycles build_dual_cycles(const ParamsPtr& par);

cplx pair_chain(const ChainTensor& chain, const CocycleHandle& phi);

// Boundary on chains: b(a0 (x) ... (x) an) =
//   sum_{j<n} (-1)^j a0 (x) ... a_j a_{j+1} ... (x) an + (-1)^n a_n a0 (x) ...
ChainTensor boundary_chain(const ChainTensor& chain);

// Max pairing of the boundary against seeded separating functionals built
// from point evaluations.
double check_chain_closed(const ChainTensor& chain, const ParamsPtr& par,
                          int n_functionals = 20, unsigned long long seed0 = 4000);

}  // namespace qhm
