#include "lattice.hpp"

#include <algorithm>

namespace qc {

Quat quat_from_row(const AlgebraSpec& alg, const QVec& row) {
  return {alg, row[0], row[1], row[2], row[3]};
}

QVec row_from_quat(const Quat& q) { return {q.w, q.x, q.y, q.z}; }

Lattice make_lattice(const AlgebraSpec& alg, const std::vector<Quat>& gens) {
  QMat rows;
  for (auto& q : gens) rows.push_back(row_from_quat(q));
  return make_lattice_rows(alg, rows);
}

Lattice make_lattice_rows(const AlgebraSpec& alg, const QMat& rows) {
  return {alg, canonical_rows(rows)};
}

Quat lattice_vector(const Lattice& L, const IVec& coeffs) {
  Quat q(L.alg);
  for (size_t i = 0; i < L.rank(); ++i)
    if (coeffs[i] != 0) q = q + Rat(coeffs[i]) * quat_from_row(L.alg, L.basis[i]);
  return q;
}

bool lattice_member(const Lattice& L, const Quat& q) {
  QVec v = row_from_quat(q);
  QVec x;
  try {
    x = solve_left(L.basis, v);
  } catch (const std::invalid_argument&) {
    return false;
  }
  // solve_left returns a solution of the echelon system; confirm it reproduces
  // v (guards rank-deficient bases) and is integral
  QVec check(4, 0);
  for (size_t i = 0; i < L.rank(); ++i)
    for (size_t j = 0; j < 4; ++j) check[j] += x[i] * L.basis[i][j];
  if (check != v) return false;
  for (auto& c : x)
    if (!is_integer(c)) return false;
  return true;
}

QMat gram_matrix(const Lattice& L) {
  size_t r = L.rank();
  std::vector<Quat> b;
  for (size_t i = 0; i < r; ++i) b.push_back(quat_from_row(L.alg, L.basis[i]));
  QMat G(r, QVec(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i; j < r; ++j) G[i][j] = G[j][i] = bilinear(b[i], b[j]);
  return G;
}

static Rat rat_sqrt(const Rat& r) {
  if (r < 0) throw std::invalid_argument("rat_sqrt: negative");
  Int n = r.get_num(), d = r.get_den(), sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  if (sn * sn != n || sd * sd != d) throw std::invalid_argument("rat_sqrt: not a square");
  return ratq(sn, sd);
}

Rat reduced_discriminant(const Lattice& L) {
  if (L.rank() != 4) throw std::invalid_argument("reduced_discriminant: rank 4 required");
  return rat_sqrt(abs(qmat_det(gram_matrix(L))));
}

Lattice lattice_sum(const Lattice& A, const Lattice& B) {
  if (!(A.alg == B.alg)) throw std::invalid_argument("lattice_sum: mixed algebras");
  QMat rows = A.basis;
  for (auto& r : B.basis) rows.push_back(r);
  return make_lattice_rows(A.alg, rows);
}

Lattice lattice_scale(const Rat& c, const Lattice& L) {
  QMat rows = L.basis;
  for (auto& r : rows)
    for (auto& v : r) v *= c;
  return make_lattice_rows(L.alg, rows);
}

Lattice lattice_intersect(const Lattice& A, const Lattice& B) {
  if (A.rank() != 4 || B.rank() != 4)
    throw std::invalid_argument("lattice_intersect: full rank required");
  // coordinate dual w.r.t. the standard dot product; intersection = dual of
  // the sum of the duals
  auto coord_dual = [](const Lattice& L) {
    return Lattice{L.alg, canonical_rows(qmat_transpose(qmat_inverse(L.basis)))};
  };
  return coord_dual(lattice_sum(coord_dual(A), coord_dual(B)));
}

Rat lattice_index(const Lattice& big, const Lattice& small) {
  if (big.rank() != small.rank()) throw std::invalid_argument("lattice_index: rank mismatch");
  size_t r = big.rank();
  QMat C(r, QVec(r));
  for (size_t i = 0; i < r; ++i) {
    QVec x = solve_left(big.basis, small.basis[i]);
    C[i] = x;
  }
  return abs(qmat_det(C));
}

bool is_order(const Lattice& L) {
  if (L.rank() != 4) return false;
  Quat one(L.alg, 1, 0, 0, 0);
  if (!lattice_member(L, one)) return false;
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      Quat p = mul(quat_from_row(L.alg, L.basis[i]), quat_from_row(L.alg, L.basis[j]));
      if (!lattice_member(L, p)) return false;
    }
  return true;
}

bool verify_eichler(const Lattice& L) {
  if (L.rank() != 4) return false;
  for (auto& row : L.basis) {
    Quat q = quat_from_row(L.alg, row);
    if (!is_integer(reduced_trace(q)) || !is_integer(reduced_norm(q))) return false;
  }
  if (!is_order(L)) return false;
  Rat rd;
  try {
    rd = reduced_discriminant(L);
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (!is_integer(rd)) return false;
  Int n = rd.get_num();
  if (n % L.alg.d_B != 0) return false;
  Int level = n / L.alg.d_B;
  return is_squarefree(level) && gcd(level, L.alg.d_B) == 1;
}

Lattice eichler_order_split(const Int& N) {
  if (N <= 0 || !is_squarefree(N))
    throw std::invalid_argument("eichler_order_split: N must be positive squarefree");
  std::vector<Quat> gens = {
      quat_from_matrix(1, 0, 0, 0), quat_from_matrix(0, 1, 0, 0),
      quat_from_matrix(0, 0, Rat(N), 0), quat_from_matrix(0, 0, 0, 1)};
  return make_lattice(split_algebra(), gens);
}

Lattice dual_lattice(const Lattice& L) {
  QMat G = gram_matrix(L);
  if (qmat_det(G) == 0) throw std::invalid_argument("dual_lattice: degenerate Gram");
  return {L.alg, canonical_rows(qmat_mul(qmat_inverse(G), L.basis))};
}

Lattice partial_dual(const Lattice& R, const Int& ell) {
  Rat rd = reduced_discriminant(R);
  if (!is_integer(rd) || ell <= 0 || rd.get_num() % ell != 0)
    throw std::invalid_argument("partial_dual: ell must divide d_B*N");
  Rat s = ratq(rd.get_num() / ell, 1);
  return lattice_sum(R, lattice_scale(s, dual_lattice(R)));
}

Lattice traceless_sublattice(const Lattice& L) {
  if (L.rank() != 4) throw std::invalid_argument("traceless_sublattice: rank 4 required");
  // integer kernel of the trace functional on basis coordinates
  Int D = 1;
  for (auto& row : L.basis) D = lcm(D, Rat(row[0]).get_den());
  IMat t(4, IVec(1));
  for (size_t i = 0; i < 4; ++i) t[i][0] = Rat(L.basis[i][0] * D).get_num();
  IMat K = left_kernel(t);
  QMat rows;
  for (auto& k : K) {
    QVec row(4, 0);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j) row[j] += Rat(k[i]) * L.basis[i][j];
    rows.push_back(row);
  }
  return make_lattice_rows(L.alg, rows);
}

Lattice traceless_partial_dual(const Lattice& R, const Int& ell) {
  Rat rd = reduced_discriminant(R);
  if (!is_integer(rd) || ell <= 0 || rd.get_num() % ell != 0)
    throw std::invalid_argument("traceless_partial_dual: ell must divide d_B*N");
  Lattice R0 = traceless_sublattice(R);
  Lattice D0 = dual_lattice(R0);
  // exponent of D0 / R0: smallest e > 0 with e * D0 contained in R0
  Int e = 1;
  for (auto& row : D0.basis) {
    QVec x = solve_left(R0.basis, row);
    for (auto& c : x) e = lcm(e, Rat(c).get_den());
  }
  // drop the primes dividing ell, so that scaling by m is a p-adic unit
  // exactly at p | ell
  Int m = e, g = gcd(m, ell);
  while (g > 1) { m /= g; g = gcd(m, ell); }
  return lattice_sum(R0, lattice_scale(Rat(m), D0));
}

Lattice conjugate_rational(const Lattice& L, const Quat& g) {
  if (reduced_norm(g) == 0) throw std::invalid_argument("conjugate_rational: norm-zero g");
  Quat gi = inverse(g);
  QMat rows;
  for (auto& row : L.basis)
    rows.push_back(row_from_quat(mul(mul(gi, quat_from_row(L.alg, row)), g)));
  return make_lattice_rows(L.alg, rows);
}

GramInvariants gram_invariants(const Lattice& L) {
  QMat G = gram_matrix(L);
  Rat det = qmat_det(G);
  if (det == 0) throw std::invalid_argument("gram_invariants: degenerate Gram");
  GramInvariants inv;
  inv.discriminant = abs(det);
  // content = gcd of q(v) over the lattice: q(b_i) = G_ii/2 together with the
  // off-diagonal polarization values
  Rat c(0);
  size_t r = L.rank();
  for (size_t i = 0; i < r; ++i) {
    c = gcd_rat(c, G[i][i] / 2);
    for (size_t j = i + 1; j < r; ++j) c = gcd_rat(c, G[i][j]);
  }
  inv.content = c;
  // level = 1/content(dual): dual Gram is G^{-1}
  QMat Gd = qmat_inverse(G);
  Rat cd(0);
  for (size_t i = 0; i < r; ++i) {
    cd = gcd_rat(cd, Gd[i][i] / 2);
    for (size_t j = i + 1; j < r; ++j) cd = gcd_rat(cd, Gd[i][j]);
  }
  inv.level = 1 / cd;
  // elementary divisors: SNF of the scaled integer Gram, divided back
  Int D = 1;
  for (auto& row : G)
    for (auto& v : row) D = lcm(D, v.get_den());
  IMat A(r, IVec(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) A[i][j] = Rat(G[i][j] * D).get_num();
  IVec d = smith_normal_form(std::move(A));
  for (auto& v : d) inv.elementary_divisors.push_back(ratq(v, D));
  return inv;
}

Lattice builtin_maximal_order(const Int& d_B) {
  Rat a, b;
  if (d_B == 2) {
    a = -1; b = -1;
  } else if (d_B == 3 || d_B == 7 || d_B == 11) {
    a = -1; b = -Rat(d_B);
  } else if (d_B == 5 || d_B == 13) {
    a = -2; b = -Rat(d_B);
  } else {
    throw std::invalid_argument("builtin_maximal_order: unsupported discriminant");
  }
  AlgebraSpec alg(a, b);
  if (alg.d_B != d_B)
    throw std::logic_error("builtin_maximal_order: wrong ramification");
  Lattice L = make_lattice(alg, {Quat(alg, 1, 0, 0, 0), Quat(alg, 0, 1, 0, 0),
                                 Quat(alg, 0, 0, 1, 0), Quat(alg, 0, 0, 0, 1)});
  // saturate: adjoin integral elements x/p while the reduced discriminant
  // exceeds d_B
  while (true) {
    Rat rd = reduced_discriminant(L);
    if (rd == Rat(d_B)) break;
    Int excess = Rat(rd / d_B).get_num();
    Int p = factorize(excess)[0].first;
    bool found = false;
    IVec c(4, 0);
    long pl = p.get_si();
    for (c[0] = 0; c[0] < pl && !found; ++c[0])
      for (c[1] = 0; c[1] < pl && !found; ++c[1])
        for (c[2] = 0; c[2] < pl && !found; ++c[2])
          for (c[3] = 0; c[3] < pl && !found; ++c[3]) {
            if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0) continue;
            Quat x = ratq(1, pl) * lattice_vector(L, c);
            if (lattice_member(L, x)) continue;
            if (!is_integer(reduced_trace(x)) || !is_integer(reduced_norm(x))) continue;
            Lattice L2 = lattice_sum(L, make_lattice(L.alg, {x}));
            if (is_order(L2)) {
              L = L2;
              found = true;
            }
          }
    if (!found)
      throw std::logic_error("builtin_maximal_order: saturation stalled");
  }
  return L;
}

Lattice eichler_order(const Lattice& maximal, const Int& N) {
  if (N <= 0 || !is_squarefree(N) || gcd(N, maximal.alg.d_B) != 1)
    throw std::invalid_argument("eichler_order: N must be squarefree and coprime to d_B");
  if (!verify_eichler(maximal) || reduced_discriminant(maximal) != Rat(maximal.alg.d_B))
    throw std::invalid_argument("eichler_order: input is not maximal");
  if (N == 1) return maximal;
  // enumerate index-N sublattices via HNF transversals d_i on the diagonal,
  // entries above each pivot in [0, d_j)
  std::vector<IVec> diags;
  IVec d(4);
  for (auto& dv : divisors(N)) {
    d[0] = dv;
    for (auto& dv1 : divisors(N / d[0])) {
      d[1] = dv1;
      for (auto& dv2 : divisors(N / (d[0] * d[1]))) {
        d[2] = dv2;
        if (N % (d[0] * d[1] * d[2]) == 0) {
          d[3] = N / (d[0] * d[1] * d[2]);
          diags.push_back(d);
        }
      }
    }
  }
  Quat one(maximal.alg, 1, 0, 0, 0);
  for (auto& dg : diags) {
    // off-diagonal entries H[i][j], i<j, in [0, d_j)
    IMat H(4, IVec(4, 0));
    for (int i = 0; i < 4; ++i) H[i][i] = dg[i];
    std::vector<std::pair<int, int>> free_slots;
    long total = 1;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (dg[j] > 1) {
          free_slots.push_back({i, j});
          total *= dg[j].get_si();
        }
    for (long t = 0; t < total; ++t) {
      long rem = t;
      for (auto& [i, j] : free_slots) {
        long m = dg[j].get_si();
        H[i][j] = rem % m;
        rem /= m;
      }
      QMat rows(4, QVec(4, 0));
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
          for (int j = 0; j < 4; ++j) rows[i][j] += Rat(H[i][k]) * maximal.basis[k][j];
      Lattice L{maximal.alg, canonical_rows(rows)};
      if (!lattice_member(L, one)) continue;
      if (is_order(L)) return L;
    }
  }
  throw std::runtime_error("eichler_order: search exhausted without finding a level-" +
                           N.get_str() + " suborder");
}

}  // namespace qc
