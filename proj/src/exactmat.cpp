#include "exactmat.hpp"

#include <algorithm>

namespace qc {

namespace {

// reduce rows r..m-1 in column c to a single nonzero entry at row r (if any),
// applying the same row operations to U when present
void echelon_column(IMat& A, IMat* U, size_t r, size_t c) {
  size_t m = A.size();
  while (true) {
    size_t best = m;
    for (size_t i = r; i < m; ++i)
      if (A[i][c] != 0 && (best == m || abs(A[i][c]) < abs(A[best][c]))) best = i;
    if (best == m) return;
    std::swap(A[best], A[r]);
    if (U) std::swap((*U)[best], (*U)[r]);
    bool clean = true;
    for (size_t i = r + 1; i < m; ++i) {
      if (A[i][c] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
      for (size_t j = 0; j < A[i].size(); ++j) A[i][j] -= q * A[r][j];
      if (U)
        for (size_t j = 0; j < (*U)[i].size(); ++j) (*U)[i][j] -= q * (*U)[r][j];
      if (A[i][c] != 0) clean = false;
    }
    if (clean) break;
  }
}

IMat hnf_impl(IMat A, IMat* U) {
  size_t m = A.size();
  if (m == 0) return A;
  size_t n = A[0].size();
  if (U) {
    U->assign(m, IVec(m, 0));
    for (size_t i = 0; i < m; ++i) (*U)[i][i] = 1;
  }
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    echelon_column(A, U, r, c);
    if (A[r][c] == 0) continue;
    if (A[r][c] < 0) {
      for (auto& v : A[r]) v = -v;
      if (U)
        for (auto& v : (*U)[r]) v = -v;
    }
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
      if (q == 0) continue;
      for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[r][j];
      if (U)
        for (size_t j = 0; j < m; ++j) (*U)[i][j] -= q * (*U)[r][j];
    }
    ++r;
  }
  return A;
}

bool row_zero(const IVec& v) {
  for (auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

IMat hnf_rows(IMat A) {
  IMat H = hnf_impl(std::move(A), nullptr);
  IMat out;
  for (auto& row : H)
    if (!row_zero(row)) out.push_back(row);
  return out;
}

IMat hnf_rows_transform(IMat A, IMat& U) { return hnf_impl(std::move(A), &U); }

IMat left_kernel(const IMat& A) {
  IMat U;
  IMat H = hnf_rows_transform(A, U);
  IMat ker;
  for (size_t i = 0; i < H.size(); ++i)
    if (row_zero(H[i])) ker.push_back(U[i]);
  return hnf_rows(std::move(ker));
}

IVec smith_normal_form(IMat A) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  IVec divs;
  size_t top = 0;
  while (top < m && top < n) {
    // find smallest nonzero entry in the remaining block
    size_t pi = m, pj = n;
    for (size_t i = top; i < m; ++i)
      for (size_t j = top; j < n; ++j)
        if (A[i][j] != 0 && (pi == m || abs(A[i][j]) < abs(A[pi][pj]))) { pi = i; pj = j; }
    if (pi == m) break;
    std::swap(A[pi], A[top]);
    for (size_t i = 0; i < m; ++i) std::swap(A[i][pj], A[i][top]);
    // clear row and column `top`
    bool dirty = false;
    for (size_t i = top + 1; i < m; ++i) {
      if (A[i][top] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A[i][top].get_mpz_t(), A[top][top].get_mpz_t());
      for (size_t j = top; j < n; ++j) A[i][j] -= q * A[top][j];
      if (A[i][top] != 0) dirty = true;
    }
    for (size_t j = top + 1; j < n; ++j) {
      if (A[top][j] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A[top][j].get_mpz_t(), A[top][top].get_mpz_t());
      for (size_t i = top; i < m; ++i) A[i][j] -= q * A[i][top];
      if (A[top][j] != 0) dirty = true;
    }
    if (dirty) continue;
    // divisibility: A[top][top] must divide the rest of the block
    bool fixed = true;
    for (size_t i = top + 1; i < m && fixed; ++i)
      for (size_t j = top + 1; j < n && fixed; ++j)
        if (A[i][j] % A[top][top] != 0) {
          for (size_t jj = top; jj < n; ++jj) A[top][jj] += A[i][jj];
          fixed = false;
        }
    if (!fixed) continue;
    divs.push_back(abs(A[top][top]));
    ++top;
  }
  return divs;
}

Rat qmat_det(QMat M) {
  size_t n = M.size();
  Rat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(M[p], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (M[i][c] == 0) continue;
      Rat f = M[i][c] / M[c][c];
      for (size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return det;
}

QMat qmat_inverse(QMat M) {
  size_t n = M.size();
  QMat I(n, QVec(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) throw std::invalid_argument("qmat_inverse: singular matrix");
    std::swap(M[p], M[c]);
    std::swap(I[p], I[c]);
    Rat piv = M[c][c];
    for (size_t j = 0; j < n; ++j) {
      M[c][j] /= piv;
      I[c][j] /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0) continue;
      Rat f = M[i][c];
      for (size_t j = 0; j < n; ++j) {
        M[i][j] -= f * M[c][j];
        I[i][j] -= f * I[c][j];
      }
    }
  }
  return I;
}

QMat qmat_mul(const QMat& A, const QMat& B) {
  size_t m = A.size(), k = B.size(), n = B[0].size();
  QMat C(m, QVec(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (A[i][t] == 0) continue;
      for (size_t j = 0; j < n; ++j) C[i][j] += A[i][t] * B[t][j];
    }
  return C;
}

QMat qmat_transpose(const QMat& A) {
  size_t m = A.size(), n = A[0].size();
  QMat T(n, QVec(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) T[j][i] = A[i][j];
  return T;
}

QVec solve_left(const QMat& M, const QVec& v) {
  // x * M = v  <=>  M^T x^T = v^T
  size_t m = M.size();
  size_t n = M[0].size();
  QMat aug(n, QVec(m + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) aug[i][j] = M[j][i];
    aug[i][m] = v[i];
  }
  size_t r = 0;
  std::vector<size_t> pivcol;
  for (size_t c = 0; c < m && r < n; ++c) {
    size_t p = r;
    while (p < n && aug[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(aug[p], aug[r]);
    Rat piv = aug[r][c];
    for (size_t j = 0; j <= m; ++j) aug[r][j] /= piv;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rat f = aug[i][c];
      for (size_t j = 0; j <= m; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (size_t i = r; i < n; ++i)
    if (aug[i][m] != 0) throw std::invalid_argument("solve_left: inconsistent system");
  QVec x(m, 0);
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = aug[i][m];
  return x;
}

QMat canonical_rows(const QMat& B) {
  Int D = 1;
  for (auto& row : B)
    for (auto& v : row) D = lcm(D, v.get_den());
  IMat A(B.size(), IVec(B[0].size()));
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = 0; j < B[i].size(); ++j) {
      Rat s = B[i][j] * D;
      A[i][j] = s.get_num();
    }
  IMat H = hnf_rows(std::move(A));
  QMat out(H.size(), QVec(B[0].size()));
  for (size_t i = 0; i < H.size(); ++i)
    for (size_t j = 0; j < H[i].size(); ++j) out[i][j] = ratq(H[i][j], D);
  return out;
}

bool qmat_eq(const QMat& A, const QMat& B) {
  if (A.size() != B.size()) return false;
  for (size_t i = 0; i < A.size(); ++i)
    if (A[i] != B[i]) return false;
  return true;
}

}  // namespace qc
