#pragma once

#include "qhm/element.hpp"

namespace qhm {

// k x k matrix with QhmElement entries over one shared parameter set.
struct MatrixElement {
  int k = 0;
  ParamsPtr par;
  std::vector<QhmElement> entries;  // row-major, k*k

  MatrixElement() = default;
  MatrixElement(ParamsPtr p, int size);

  QhmElement& at(int i, int j) { return entries[i * k + j]; }
  const QhmElement& at(int i, int j) const { return entries[i * k + j]; }
};

MatrixElement matrix_identity(const ParamsPtr& par, int k);
MatrixElement matrix_from_scalar(const QhmElement& a);           // 1x1
MatrixElement matrix_diag(const QhmElement& a, const QhmElement& b);  // 2x2

MatrixElement add(const MatrixElement& A, const MatrixElement& B);
MatrixElement sub(const MatrixElement& A, const MatrixElement& B);
MatrixElement scale(cplx lambda, const MatrixElement& A);
MatrixElement mul(const MatrixElement& A, const MatrixElement& B);
MatrixElement star(const MatrixElement& A);  // conjugate transpose

double distance(const MatrixElement& A, const MatrixElement& B);

}  // namespace qhm
