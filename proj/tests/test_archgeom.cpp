#include <doctest.h>

#include <random>

#include "../src/archgeom.hpp"

using namespace qc;

TEST_CASE("embed coordinates, identity frame") {
  ArchFrame F = ArchFrame::split_exact(Rat(0), Rat(1));
  // [PAPER] §2.5.3 Example: [[d+c, b+a],[b-a, d-c]] -> (a,b,c,d)
  Rat a = ratq(1, 3), b = ratq(-2, 5), c = ratq(4, 1), d = ratq(-1, 2);
  Quat q = quat_from_matrix(d + c, b + a, b - a, d - c);
  auto e = embed_exact(q, F);
  CHECK(e[0] == a);
  CHECK(e[1] == b);
  CHECK(e[2] == c);
  CHECK(e[3] == d);
  // [TRIVIAL] gamma = 1 -> (0,0,0,1)
  auto e1 = embed_exact(Quat(F.alg, 1, 0, 0, 0), F);
  CHECK(e1 == std::array<Rat, 4>{Rat(0), Rat(0), Rat(0), Rat(1)});
  // [DERIVED] [[0,1],[-1,0]] -> (1,0,0,0)
  auto ek = embed_exact(quat_from_matrix(0, 1, -1, 0), F);
  CHECK(ek == std::array<Rat, 4>{Rat(1), Rat(0), Rat(0), Rat(0)});
}

TEST_CASE("P, u, X identities") {
  ArchFrame F = ArchFrame::split_exact(ratq(1, 2), ratq(3, 4));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> v(-5, 5);
  for (int t = 0; t < 40; ++t) {
    Quat q(F.alg, v(rng), v(rng), v(rng), v(rng));
    // P = |X|^2 + u, exact
    CHECK(P_exact(q, F) == X2_exact(q, F) + u_exact(q, F));
    // split: det = |X|^2 - u (eq. tr-det-coordinates, minus sign)
    CHECK(reduced_norm(q) == X2_exact(q, F) - u_exact(q, F));
  }
  // [TRIVIAL] P(1) = 1
  CHECK(P_exact(Quat(F.alg, 1, 0, 0, 0), F) == 1);
  // [PAPER] definite case: |X|^2 - u = det with the plus-sign coordinates
  AlgebraSpec H(Rat(-1), Rat(-1));
  ArchFrame D = ArchFrame::identity(H);
  for (int t = 0; t < 40; ++t) {
    Quat q(H, v(rng), v(rng), v(rng), v(rng));
    CHECK(P_exact(q, D) == reduced_norm(q));
    CHECK(P_exact(q, D) == X2_exact(q, D) + u_exact(q, D));
  }
}

TEST_CASE("region membership") {
  ArchFrame F = ArchFrame::split_exact(Rat(0), Rat(1));
  // [TRIVIAL] 0 in every region
  CHECK(in_region(Quat(F.alg), F, {Region::Shape::Omega, ratq(1, 100), ratq(1, 10)}));
  // [TRIVIAL] Omega(1,T) = Psi(1,T)
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> v(-3, 3);
  for (int t = 0; t < 60; ++t) {
    Quat q(F.alg, v(rng), v(rng), v(rng), v(rng));
    CHECK(in_region(q, F, {Region::Shape::Omega, Rat(1), Rat(3)}) ==
          in_region(q, F, {Region::Shape::Psi, Rat(1), Rat(3)}));
  }
  // closed boundary: P = T^2 counts
  CHECK(in_region(Quat(F.alg, 1, 0, 0, 0), F, {Region::Shape::Omega, Rat(1), Rat(1)}));
}

TEST_CASE("gauge homogeneity") {
  ArchFrame F = ArchFrame::split_exact(ratq(1, 4), Rat(2));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> v(-5, 5);
  for (int t = 0; t < 20; ++t) {
    Quat q(F.alg, v(rng), v(rng), v(rng), v(rng));
    if (q.is_zero()) continue;
    double g1 = omega_gauge(q, F, ratq(1, 10));
    double g3 = omega_gauge(Rat(3) * q, F, ratq(1, 10));
    CHECK(g3 == doctest::Approx(3 * g1).epsilon(1e-12));
    CHECK(psi_gauge(Rat(3) * q, F, ratq(1, 10)) ==
          doctest::Approx(3 * psi_gauge(q, F, ratq(1, 10))).epsilon(1e-12));
  }
}

TEST_CASE("sigma_z") {
  // [TRIVIAL] z = i -> identity
  auto s = sigma_z(0, 1);
  CHECK(s == std::array<double, 4>{1, 0, 0, 1});
  // [TRIVIAL] sigma_z . i = z
  auto m = sigma_z(0.7, 2.3);
  Cplx num = Cplx(m[0], 0) * Cplx(0, 1) + Cplx(m[1], 0);
  Cplx den = Cplx(m[2], 0) * Cplx(0, 1) + Cplx(m[3], 0);
  Cplx z = num / den;
  CHECK(z.real() == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(z.imag() == doctest::Approx(2.3).epsilon(1e-12));
  CHECK_THROWS_AS(sigma_z(0, -1), std::invalid_argument);
}

TEST_CASE("tau_ell congruences") {
  // [TRIVIAL] ell = 1
  CHECK(tau_ell(1, 6) == std::array<long, 4>{1, 0, 0, 1});
  for (auto [l, M] : std::vector<std::pair<long, long>>{{2, 2}, {2, 6}, {3, 6}, {6, 6},
                                                        {5, 10}, {7, 14}, {3, 15}}) {
    auto t = tau_ell(l, M);
    long m = M / l;
    // det 1
    CHECK(t[0] * t[3] - t[1] * t[2] == 1);
    // [PAPER] eq. (4.1): congruent to [[0,1],[-1,0]] mod ell
    CHECK(((t[0] % l) + l) % l == 0);
    CHECK(((t[1] - 1) % l + l) % l == 0);
    CHECK(((t[2] + 1) % l + l) % l == 0);
    CHECK(((t[3] % l) + l) % l == 0);
    // identity mod M/ell
    CHECK(((t[0] - 1) % m + m) % m == 0);
    CHECK((t[1] % m + m) % m == 0);
    CHECK((t[2] % m + m) % m == 0);
    CHECK(((t[3] - 1) % m + m) % m == 0);
  }
}

TEST_CASE("siegel tiles") {
  // [PAPER] Lemma 4.1: M=1 -> x in [0,1], y >= sqrt(3)/2
  auto t1 = siegel_tiles(1);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].x_min == 0);
  CHECK(t1[0].x_max == 1);
  CHECK(t1[0].y_min == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  // [TRIVIAL] tile count = tau(M)
  CHECK(siegel_tiles(2).size() == 2);
  CHECK(siegel_tiles(6).size() == 4);
}

TEST_CASE("height H") {
  // [TRIVIAL] fundamental-domain points with Im >= 1
  CHECK(height_H({0.2, 1.7}, 1) == doctest::Approx(1.7).epsilon(1e-12));
  // [DERIVED] z = i -> 1
  CHECK(height_H({0.0, 1.0}, 1) == doctest::Approx(1.0).epsilon(1e-12));
  // [TRIVIAL] reduction fixed point
  for (Cplx z : {Cplx(0.37, 0.11), Cplx(-0.42, 0.9), Cplx(0.08, 0.33)}) {
    for (long N : {1L, 2L, 6L}) {
      double H = height_H(z, N);
      Cplx r = reduce_to_AL_max(z, N);
      CHECK(r.imag() == doctest::Approx(H).epsilon(1e-9));
      CHECK(height_H(r, N) == doctest::Approx(H).epsilon(1e-9));
      // Lemma 6.1 floor
      CHECK(H >= std::sqrt(3.0) / (2.0 * N) - 1e-12);
    }
  }
}

TEST_CASE("Lemma 6.1 cocompact bound at reduced points") {
  for (long N : {1L, 2L, 3L, 6L}) {
    Cplx z = reduce_to_AL_max({0.23, 0.4}, N);
    for (long c = -12; c <= 12; ++c)
      for (long d = -12; d <= 12; ++d) {
        if (c == 0 && d == 0) continue;
        double n2 = std::norm(double(c) * z + double(d));
        long g = std::gcd(std::abs(c), N);
        CHECK(n2 >= double(g) / double(N) - 1e-9);
      }
  }
}
