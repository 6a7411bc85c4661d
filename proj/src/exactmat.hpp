#pragma once

#include "qalg.hpp"

namespace qc {

using IMat = std::vector<std::vector<Int>>;
using QMat = std::vector<std::vector<Rat>>;
using QVec = std::vector<Rat>;
using IVec = std::vector<Int>;

// Row Hermite normal form: returns the nonzero rows (the canonical basis of the
// row space), echelon with positive pivots and entries above each pivot reduced
// into [0, pivot).
IMat hnf_rows(IMat A);

// Same reduction tracking a unimodular U with U*A = H (H including zero rows);
// returns H, fills U. Rows of U matching zero rows of H span the left kernel.
IMat hnf_rows_transform(IMat A, IMat& U);

// basis of { c : c*A = 0 } as rows
IMat left_kernel(const IMat& A);

// Smith normal form elementary divisors of a (not necessarily square) integer
// matrix: nonzero invariant factors d1 | d2 | ..., all positive.
IVec smith_normal_form(IMat A);

Rat qmat_det(QMat M);
QMat qmat_inverse(QMat M);
QMat qmat_mul(const QMat& A, const QMat& B);
QMat qmat_transpose(const QMat& A);

// solve x * M = v (row vector convention); throws if inconsistent/singular
QVec solve_left(const QMat& M, const QVec& v);

// canonical HNF basis of the Q-lattice spanned by the rows (rows may be
// dependent; result has full row rank)
QMat canonical_rows(const QMat& B);

bool qmat_eq(const QMat& A, const QMat& B);

}  // namespace qc
