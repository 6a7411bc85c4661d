#include <doctest.h>

#include <random>

#include "../src/lattice.hpp"

using namespace qc;

TEST_CASE("smith normal form") {
  // [TRIVIAL] diag(2,6)
  CHECK(smith_normal_form({{2, 0}, {0, 6}}) == IVec{2, 6});
  // [DERIVED] row/column reduction oracle
  CHECK(smith_normal_form({{2, 4}, {6, 8}}) == IVec{2, 4});
  CHECK(smith_normal_form({{1, 0}, {0, 0}}) == IVec{1});
}

TEST_CASE("split Eichler orders") {
  Lattice R1 = eichler_order_split(1);
  // [TRIVIAL] maximal order: |det Gram| = 1
  CHECK(abs(qmat_det(gram_matrix(R1))) == 1);
  CHECK(is_order(R1));
  Lattice R6 = eichler_order_split(6);
  // [DERIVED] discriminant oracle: |det Gram| = N^2 = 36
  CHECK(abs(qmat_det(gram_matrix(R6))) == 36);
  for (long N : {1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 21, 22, 26, 30})
    CHECK(verify_eichler(eichler_order_split(N)));
  CHECK_THROWS_AS(eichler_order_split(4), std::invalid_argument);
}

TEST_CASE("builtin maximal orders") {
  for (long p : {2, 3, 5, 7, 11, 13}) {
    Lattice R = builtin_maximal_order(p);
    CHECK(R.alg.d_B == p);
    // [DERIVED] Gram determinant oracle: |det Gram| = d_B^2
    CHECK(abs(qmat_det(gram_matrix(R))) == p * p);
    // [TRIVIAL] closed under multiplication
    CHECK(is_order(R));
    CHECK(verify_eichler(R));
  }
  CHECK_THROWS_AS(builtin_maximal_order(17), std::invalid_argument);
}

TEST_CASE("eichler suborders") {
  Lattice M2 = builtin_maximal_order(2);
  // [TRIVIAL] N = 1 returns the input
  CHECK(eichler_order(M2, 1) == M2);
  // [DERIVED] d_B = 2, N = 3: |det Gram| = 36
  Lattice R = eichler_order(M2, 3);
  CHECK(abs(qmat_det(gram_matrix(R))) == 36);
  CHECK(verify_eichler(R));
  // [DERIVED] split path agrees with the table order on Gram divisors
  Lattice A = eichler_order(eichler_order_split(1), 6);
  Lattice B = eichler_order_split(6);
  CHECK(gram_invariants(A).elementary_divisors == gram_invariants(B).elementary_divisors);
}

TEST_CASE("verify_eichler rejects non-orders") {
  AlgebraSpec S = split_algebra();
  // [TRIVIAL] not multiplicatively closed
  Lattice L = make_lattice(S, {Quat(S, 1, 0, 0, 0), Quat(S, 0, ratq(1, 3), 0, 0),
                               Quat(S, 0, 0, 1, 0), Quat(S, 0, 0, 0, 1)});
  CHECK(!verify_eichler(L));
  // [DERIVED] dual of a level > 1 order has non-integral norm
  CHECK(!verify_eichler(dual_lattice(eichler_order_split(6))));
}

TEST_CASE("dual lattice") {
  AlgebraSpec H(Rat(-1), Rat(-1));
  Lattice Z4 = make_lattice(H, {Quat(H, 1, 0, 0, 0), Quat(H, 0, 1, 0, 0), Quat(H, 0, 0, 1, 0),
                                Quat(H, 0, 0, 0, 1)});
  // [DERIVED] Gram inverse oracle: Gram = 2I, so dual = (1/2) Z^4
  CHECK(dual_lattice(Z4) == lattice_scale(ratq(1, 2), Z4));
  // [TRIVIAL] double dual
  for (const Lattice& L : {eichler_order_split(6), builtin_maximal_order(3)}) {
    CHECK(dual_lattice(dual_lattice(L)) == L);
    // [PAPER] eq. (elem-div-dual): (C, N, Delta) -> (1/N, 1/C, 1/Delta)
    GramInvariants a = gram_invariants(L), b = gram_invariants(dual_lattice(L));
    CHECK(b.content == 1 / a.level);
    CHECK(b.level == 1 / a.content);
    CHECK(b.discriminant == 1 / a.discriminant);
  }
}

TEST_CASE("partial dual") {
  Lattice R = eichler_order_split(6);
  // [TRIVIAL] empty and full dualization
  CHECK(partial_dual(R, 1) == R);
  CHECK(partial_dual(R, 6) == dual_lattice(R));
  // [DERIVED] index p^2 at each p | ell
  CHECK(lattice_index(partial_dual(R, 2), R) == 4);
  CHECK(lattice_index(partial_dual(R, 3), R) == 9);
  CHECK(lattice_index(partial_dual(R, 6), R) == 36);
  CHECK_THROWS_AS(partial_dual(R, 5), std::invalid_argument);
}

TEST_CASE("traceless sublattice") {
  // [TRIVIAL] split N=1: trace-zero integer matrices
  Lattice R0 = traceless_sublattice(eichler_order_split(1));
  CHECK(R0.rank() == 3);
  for (size_t r = 0; r < 3; ++r)
    CHECK(reduced_trace(quat_from_row(R0.alg, R0.basis[r])) == 0);
  // [DERIVED] Hurwitz order: traceless part contains i, j, k
  Lattice H0 = traceless_sublattice(builtin_maximal_order(2));
  CHECK(H0.rank() == 3);
  CHECK(lattice_member(H0, Quat(H0.alg, 0, 1, 0, 0)));
  CHECK(lattice_member(H0, Quat(H0.alg, 0, 0, 1, 0)));
  CHECK(lattice_member(H0, Quat(H0.alg, 0, 0, 0, 1)));
}

TEST_CASE("gram invariants") {
  // [DERIVED] split N=1, ell=1, R^0 -> exactly (1, 1, 2)
  GramInvariants inv = gram_invariants(traceless_sublattice(eichler_order_split(1)));
  CHECK(inv.elementary_divisors == QVec{Rat(1), Rat(1), Rat(2)});
  // content divides every represented value q(v) on small vectors
  Lattice L = traceless_sublattice(partial_dual(eichler_order_split(6), 2));
  GramInvariants i2 = gram_invariants(L);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c) {
        Rat q = reduced_norm(lattice_vector(L, {a, b, c}));
        if (q != 0) CHECK(is_integer(q / i2.content));
      }
}

TEST_CASE("traceless partial dual") {
  // [TRIVIAL] ell = 1 recovers the plain traceless sublattice
  Lattice R = eichler_order_split(6);
  CHECK(traceless_partial_dual(R, 1) == traceless_sublattice(R));
  // [DERIVED] odd ell: dualizing commutes with the trace kernel, so the two
  // constructions agree
  CHECK(traceless_partial_dual(R, 3) ==
        traceless_sublattice(partial_dual(R, 3)));
  CHECK(traceless_partial_dual(builtin_maximal_order(3), 3) ==
        traceless_sublattice(partial_dual(builtin_maximal_order(3), 3)));
  // [DERIVED] even ell: the kernel of the trace on the partial dual sits
  // inside the partial dual of the kernel with index 2 (a 2-adic defect)
  for (auto [dB, N, ell] : std::vector<std::array<long, 3>>{
           {1, 2, 2}, {1, 6, 2}, {1, 6, 6}, {2, 1, 2}, {2, 3, 2}}) {
    Lattice O = (dB == 1) ? eichler_order_split(N)
                          : eichler_order(builtin_maximal_order(dB), N);
    Lattice big = traceless_partial_dual(O, ell);
    Lattice small = traceless_sublattice(partial_dual(O, ell));
    CHECK(lattice_index(big, small) == 2);
    // discriminants differ by the square of the index
    CHECK(gram_invariants(small).discriminant ==
          4 * gram_invariants(big).discriminant);
  }
  // [PAPER: eq. (9.1/elem-div-order)] even-even case, exact divisors
  GramInvariants inv = gram_invariants(traceless_partial_dual(eichler_order_split(2), 2));
  CHECK(inv.elementary_divisors == QVec{ratq(1, 2), ratq(1, 2), ratq(1, 2)});
}

TEST_CASE("lattice index and scaling") {
  Lattice R = eichler_order_split(1);
  // [TRIVIAL] index(L, 2L) = 2^rank
  CHECK(lattice_index(R, lattice_scale(Rat(2), R)) == 16);
  Lattice R0 = traceless_sublattice(R);
  CHECK(lattice_index(R0, lattice_scale(Rat(2), R0)) == 8);
  CHECK(lattice_sum(R, lattice_scale(ratq(1, 2), R)) == lattice_scale(ratq(1, 2), R));
  CHECK(lattice_intersect(R, lattice_scale(Rat(2), R)) == lattice_scale(Rat(2), R));
}

TEST_CASE("rational conjugation") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> v(-4, 4);
  for (const Lattice& L : {eichler_order_split(2), builtin_maximal_order(3)}) {
    // [TRIVIAL] g = 1
    CHECK(conjugate_rational(L, Quat(L.alg, 1, 0, 0, 0)) == L);
    GramInvariants base = gram_invariants(L);
    int done = 0;
    while (done < 10) {
      Quat g(L.alg, v(rng), v(rng), v(rng), v(rng));
      if (reduced_norm(g) == 0) continue;
      Lattice C = conjugate_rational(L, g);
      // [DERIVED] invariants preserved; order axioms preserved
      GramInvariants ci = gram_invariants(C);
      CHECK(ci.elementary_divisors == base.elementary_divisors);
      CHECK(is_order(C));
      ++done;
    }
  }
}
