#include "qhm/matrix.hpp"

#include <algorithm>

namespace qhm {

namespace {
void require_match(const MatrixElement& A, const MatrixElement& B) {
  if (A.k != B.k) throw ParamsMismatch("matrix size mismatch");
  if (A.par != B.par) throw ParamsMismatch("matrix params mismatch");
}
}  // namespace

MatrixElement::MatrixElement(ParamsPtr p, int size) : k(size), par(std::move(p)) {
  entries.assign(size_t(k) * k, zero_element(par));
}

MatrixElement matrix_identity(const ParamsPtr& par, int k) {
  MatrixElement out(par, k);
  for (int i = 0; i < k; ++i) out.at(i, i) = unit_element(par);
  return out;
}

MatrixElement matrix_from_scalar(const QhmElement& a) {
  MatrixElement out(a.par, 1);
  out.at(0, 0) = a;
  return out;
}

MatrixElement matrix_diag(const QhmElement& a, const QhmElement& b) {
  MatrixElement out(a.par, 2);
  out.at(0, 0) = a;
  out.at(1, 1) = b;
  return out;
}

MatrixElement add(const MatrixElement& A, const MatrixElement& B) {
  require_match(A, B);
  MatrixElement out(A.par, A.k);
  for (size_t i = 0; i < A.entries.size(); ++i)
    out.entries[i] = add(A.entries[i], B.entries[i]);
  return out;
}

MatrixElement sub(const MatrixElement& A, const MatrixElement& B) {
  require_match(A, B);
  MatrixElement out(A.par, A.k);
  for (size_t i = 0; i < A.entries.size(); ++i)
    out.entries[i] = sub(A.entries[i], B.entries[i]);
  return out;
}

MatrixElement scale(cplx lambda, const MatrixElement& A) {
  MatrixElement out(A.par, A.k);
  for (size_t i = 0; i < A.entries.size(); ++i) out.entries[i] = scale(lambda, A.entries[i]);
  return out;
}

MatrixElement mul(const MatrixElement& A, const MatrixElement& B) {
  require_match(A, B);
  MatrixElement out(A.par, A.k);
  for (int i = 0; i < A.k; ++i)
    for (int j = 0; j < A.k; ++j) {
      QhmElement acc = zero_element(A.par);
      for (int l = 0; l < A.k; ++l) acc = add(acc, mul(A.at(i, l), B.at(l, j)));
      out.at(i, j) = acc;
    }
  return out;
}

MatrixElement star(const MatrixElement& A) {
  MatrixElement out(A.par, A.k);
  for (int i = 0; i < A.k; ++i)
    for (int j = 0; j < A.k; ++j) out.at(i, j) = star(A.at(j, i));
  return out;
}

double distance(const MatrixElement& A, const MatrixElement& B) {
  require_match(A, B);
  double worst = 0.0;
  for (size_t i = 0; i < A.entries.size(); ++i)
    worst = std::max(worst, distance(A.entries[i], B.entries[i]));
  return worst;
}

}  // namespace qhm
