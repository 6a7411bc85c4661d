#include <doctest.h>

#include <random>

#include "../src/qalg.hpp"

using namespace qc;

namespace {

Quat rand_quat(const AlgebraSpec& A, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  auto r = [&]() { return ratq(num(rng), den(rng)); };
  return Quat(A, r(), r(), r(), r());
}

}  // namespace

TEST_CASE("basis relations") {
  AlgebraSpec H(Rat(-1), Rat(-1));
  Quat i(H, 0, 1, 0, 0), j(H, 0, 0, 1, 0), k(H, 0, 0, 0, 1);
  // [TRIVIAL] i * j = k
  CHECK(mul(i, j) == k);
  // [TRIVIAL] i^2 = a = -1
  CHECK(mul(i, i) == Quat(H, -1, 0, 0, 0));
  CHECK(mul(j, i) == -k);
}

TEST_CASE("norm multiplicativity, conjugation, trace identities (exact, random)") {
  // [DERIVED] direct-expansion oracle on random pairs
  std::mt19937_64 rng(12345);
  for (const AlgebraSpec& A :
       {AlgebraSpec(Rat(-1), Rat(-1)), AlgebraSpec(Rat(1), Rat(1)), AlgebraSpec(Rat(2), Rat(-3)),
        AlgebraSpec(Rat(-2), Rat(-5))}) {
    for (int t = 0; t < 25; ++t) {
      Quat p = rand_quat(A, rng), q = rand_quat(A, rng);
      CHECK(reduced_norm(mul(p, q)) == reduced_norm(p) * reduced_norm(q));
      CHECK(p + conj(p) == reduced_trace(p) * Quat(A, 1, 0, 0, 0));
      CHECK(mul(p, conj(p)) == reduced_norm(p) * Quat(A, 1, 0, 0, 0));
      CHECK(bilinear(q, q) == 2 * reduced_norm(q));
      CHECK(reduced_trace(commutator(p, q)) == 0);
      CHECK(commutator(p, q) == -commutator(q, p));
    }
  }
}

TEST_CASE("split matrix picture trace and norm") {
  // [PAPER] eq. (tr-det-coordinates): element [[d+c, b+a],[b-a, d-c]] has
  // tr = 2d and det = a^2 - (b^2 + c^2) + d^2
  Rat a = ratq(2, 3), b = ratq(-1, 2), c = ratq(5, 1), d = ratq(7, 4);
  Quat q = quat_from_matrix(d + c, b + a, b - a, d - c);
  CHECK(reduced_trace(q) == 2 * d);
  CHECK(reduced_norm(q) == a * a - (b * b + c * c) + d * d);
  // [TRIVIAL] bilinear(1,1) = 2
  Quat one(split_algebra(), 1, 0, 0, 0);
  CHECK(bilinear(one, one) == 2);
}

TEST_CASE("matrix identification round trip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> v(-9, 9);
  for (int t = 0; t < 20; ++t) {
    Rat A(v(rng)), B(v(rng)), C(v(rng)), D(v(rng));
    Quat q = quat_from_matrix(A, B, C, D);
    Rat A2, B2, C2, D2;
    quat_to_matrix(q, A2, B2, C2, D2);
    CHECK(A == A2);
    CHECK(B == B2);
    CHECK(C == C2);
    CHECK(D == D2);
    CHECK(reduced_norm(q) == A * D - B * C);
    CHECK(reduced_trace(q) == A + D);
  }
}

TEST_CASE("commutators") {
  AlgebraSpec S = split_algebra();
  std::mt19937_64 rng(99);
  Quat q = rand_quat(S, rng);
  // [TRIVIAL] antisymmetry and center
  CHECK(commutator(q, q).is_zero());
  CHECK(commutator(Quat(S, 1, 0, 0, 0), q).is_zero());
  // [DERIVED] split: [[0,1],[0,0]] with [[0,0],[6,0]] -> [[6,0],[0,-6]]
  Quat e = quat_from_matrix(0, 1, 0, 0);
  Quat f = quat_from_matrix(0, 0, 6, 0);
  Quat c = commutator(e, f);
  CHECK(c == quat_from_matrix(6, 0, 0, -6));
  CHECK(reduced_norm(c) == -36);
}

TEST_CASE("hilbert symbol and discriminant") {
  // [DERIVED] standard local-symbol values
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), Int(2)) == -1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), Int(0)) == -1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), Int(3)) == 1);
  CHECK(AlgebraSpec(Rat(-1), Rat(-1)).d_B == 2);
  CHECK(AlgebraSpec(Rat(-1), Rat(-11)).d_B == 11);
  CHECK(AlgebraSpec(Rat(1), Rat(1)).d_B == 1);
  CHECK(AlgebraSpec(Rat(-2), Rat(-5)).d_B == 5);
  CHECK(AlgebraSpec(Rat(-2), Rat(-13)).d_B == 13);
  // [TRIVIAL] split by a square
  for (long p : {0L, 2L, 3L, 5L, 7L})
    CHECK(hilbert_symbol(Rat(1), ratq(-7, 3), Int(p)) == 1);
}

TEST_CASE("hilbert product formula (independent oracle)") {
  // [DERIVED] product over all relevant places equals +1
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> v(-30, 30);
  for (int t = 0; t < 60; ++t) {
    Rat a(v(rng)), b(v(rng));
    if (a == 0 || b == 0) continue;
    int prod = hilbert_symbol(a, b, Int(0));
    Int ab = a.get_num() * b.get_num() * a.get_den() * b.get_den();
    std::vector<Int> places = {2};
    for (auto& [p, e] : factorize(abs(ab)))
      if (p != 2) places.push_back(p);
    for (auto& p : places) prod *= hilbert_symbol(a, b, p);
    CHECK(prod == 1);
  }
}

TEST_CASE("rational helpers") {
  CHECK(rat_str(ratq(3, 6)) == "1/2");
  CHECK(rat_str(ratq(-4, 2)) == "-2");
  CHECK(parse_rat("7/3") == ratq(7, 3));
  CHECK(parse_rat("0.25") == ratq(1, 4));
  CHECK(gcd_rat(ratq(1, 2), ratq(1, 3)) == ratq(1, 6));
  CHECK(is_rational_square(ratq(9, 4)));
  CHECK(!is_rational_square(ratq(-9, 4)));
  CHECK(!is_rational_square(ratq(2, 1)));
  CHECK(is_squarefree(Int(30)));
  CHECK(!is_squarefree(Int(12)));
  CHECK(divisor_count(Int(6)) == 4);
  CHECK(moebius(Int(6)) == 1);
  CHECK(moebius(Int(2)) == -1);
  CHECK(moebius(Int(1)) == 1);
}
