#pragma once

#include <array>

#include "qhm/cyclic.hpp"

namespace qhm {

// U1, U2 and the matrix unitary U3 = M+ + M- built from the frame, together
// with the associated projectors P+- = M+- M+-*, Q+- = M+-* M+-.
struct UnitaryTriple {
  ParamsPtr par;
  QhmElement U1, U2;
  MatrixElement M_plus, M_minus;
  MatrixElement P_plus, P_minus, Q_plus, Q_minus;
  MatrixElement U3;
};

UnitaryTriple build_unitaries(const ParamsPtr& par);

// Residuals of the relations between M+-, P+-, Q+- and the unitarity of U3,
// labelled individually.
struct RelationReport {
  std::vector<std::pair<std::string, double>> items;
  double worst() const;
};
RelationReport check_unitary_relations(const UnitaryTriple& t);

// Pairings of U1, U2, U3 (rows) against phi1, phi2, phi3, phi123 (columns).
std::array<std::array<cplx, 4>, 3> odd_table(const ParamsPtr& par);

// <[P+], [phi_{1,2}]> through the matrix Chern pairing; phi12 restricts to
// the degree-0 entries of P+.
cplx pair_P_plus(const ParamsPtr& par);

// Residuals of the trace/projector reduction lemmas used by the top-degree
// computation, ending with the synthesis identity realized by this frame,
// 6 sqrt(2 i pi) <U3, phi123> = -i 12 pi <P+, phi12>: the three
// antisymmetrized permutation blocks each reduce to -i 4 pi <P+, phi12>.
struct ReductionReport {
  double relation11 = 0.0;  // d_i(M+-) M-+* = -M+- d_i(M-+*) and the P variant
  double relation12 = 0.0;  // tau(P-+ dM dM*) = tau(P dP dP), transposed ij
  double relation13 = 0.0;
  double relation21 = 0.0;  // Q-+ d_i(M+-*) = 0, Q+- d_i(M+-*) = d_i(M+-*)
  double relation22 = 0.0;
  double relation23 = 0.0;
  double lemma2_degree0 = 0.0;   // tau(dU dU*) keeps only the M+-/M-+ blocks
  double lemma2_antisym = 0.0;   // tau(d1 U d2 U* - d2 U d1 U*) = 0
  double synthesis = 0.0;
  double worst() const;
};
ReductionReport check_reduction_lemmas(const ParamsPtr& par);

// Index map through the truncated Toeplitz lift of U3; all defects are
// finite-rank and confined to the truncation boundary levels.
struct ToeplitzReport {
  int N = 0;
  double interior_residual = 0.0;  // compression to levels 0..N-2 vs the RHS
  double offband_mass = 0.0;       // Toeplitz entries outside the band
  double defect_residual = 0.0;    // boundary defect vs -e_{N-1,N-1} (x) P-
  int defect_rank = 0;
  double u1_defect = 0.0;          // lifts 1 (x) U_i are exactly unitary
  double u2_defect = 0.0;
};
ToeplitzReport toeplitz_index_U3(const ParamsPtr& par, int N = 32);

// Residual of the transfer formula
// <U, phi123> = sqrt(i 2 pi) <dU, phi12> over the basis U1, U2, U3,
// with <dU3, phi12> = <Q-, phi12> - <P+, phi12> = i 2 pi c.
double transfer_check(const ParamsPtr& par);

// Covariant-representation axioms of the Pimsner picture at truncation N:
// pi(a) = 1 (x) a, tau(xi) = S (x) xi, with the gauge action.
struct PimsnerReport {
  int N = 0;
  double axiom_i_interior = 0.0;   // tau(xi)* tau(zeta) = pi(<xi,zeta>_A)
  double axiom_i_defect = 0.0;     // boundary defect vs -e_{N-1,N-1} (x) xi* zeta
  double axiom_iii = 0.0;          // pi(a) tau(xi) = tau(a xi), exact
  double axiom_iv_interior = 0.0;  // tau(xi) tau(zeta)* = (1 - P) (x) xi zeta*
  double axiom_iv_defect = 0.0;    // corner defect vs -e_{0,0} (x) xi zeta*
  double gauge_pi = 0.0;           // beta_t(pi(a)) = pi(a)
  double gauge_tau = 0.0;          // beta_t(tau(xi)) = e(t) tau(xi)
  double worst() const;
};
PimsnerReport check_pimsner_axioms(const ParamsPtr& par, int N = 16);

}  // namespace qhm
