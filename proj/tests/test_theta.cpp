#include <doctest.h>

#include <cmath>
#include <random>

#include "../src/theta.hpp"

using namespace qc;

namespace {

ThetaSpec split_spec(ThetaFamily fam, long N, long ell, int k, Cplx z, double acc = 1e-10) {
  ThetaSpec s;
  s.family = fam;
  s.d_B = 1;
  s.N = N;
  s.ell = ell;
  s.k = k;
  s.frame = ArchFrame::split_approx(z.real(), z.imag());
  s.accuracy = acc;
  return s;
}

ThetaSpec def_spec(ThetaFamily fam, long dB, long N, long ell, int k, int m,
                   double acc = 1e-10) {
  ThetaSpec s;
  s.family = fam;
  s.d_B = dB;
  s.N = N;
  s.ell = ell;
  s.k = k;
  s.m = m;
  s.frame = ArchFrame::identity(builtin_maximal_order(dB).alg);
  s.accuracy = acc;
  return s;
}

}  // namespace

TEST_CASE("kappa table") {
  // [PAPER] Table (choice-theta): kappa = k, k, 2m+2, k+2
  CHECK(kappa_of(split_spec(ThetaFamily::Maass, 1, 1, 4, {0, 1})) == 4);
  CHECK(kappa_of(split_spec(ThetaFamily::IndefHol, 1, 1, 8, {0, 1})) == 8);
  CHECK(kappa_of(def_spec(ThetaFamily::DefSph, 2, 1, 1, 0, 3)) == 8);
  CHECK(kappa_of(def_spec(ThetaFamily::DefHol, 2, 1, 1, 4, 0)) == 6);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(validate(split_spec(ThetaFamily::IndefHol, 1, 1, 4, {0, 1})),
                  std::invalid_argument);  // k >= 6 required
  CHECK_THROWS_AS(validate(split_spec(ThetaFamily::DefHol, 1, 1, 2, {0, 1})),
                  std::invalid_argument);  // definite family on split algebra
  CHECK_THROWS_AS(validate(def_spec(ThetaFamily::Maass, 2, 1, 1, 0, 0)),
                  std::invalid_argument);  // split family on definite algebra
  CHECK_NOTHROW(validate(split_spec(ThetaFamily::Maass, 1, 1, 0, {0, 1})));
}

TEST_CASE("maass kernel flagship value") {
  // [DERIVED] d_B=N=ell=1, z=i, s=i: equals (sum e^{-pi n^2})^4 since
  // P = (A^2+B^2+C^2+D^2)/2 on integer matrices
  ThetaSpec s = split_spec(ThetaFamily::Maass, 1, 1, 0, {0, 1}, 1e-12);
  double jacobi = 0;
  for (long n = -20; n <= 20; ++n) jacobi += std::exp(-M_PI * double(n) * double(n));
  double oracle = std::pow(jacobi, 4);
  Cplx v = theta_eval(s, {0, 1});
  CHECK(std::abs(v.real() - oracle) / oracle < 1e-10);
  CHECK(std::abs(v.imag()) < 1e-10);
  CHECK(oracle == doctest::Approx(1.3932039297).epsilon(1e-8));
}

TEST_CASE("def_sph m=0 reduces to the plain norm theta series") {
  // [TRIVIAL] Legendre P_0 = 1: kernel = y * sum e(s * nr(gamma))
  ThetaSpec s = def_spec(ThetaFamily::DefSph, 2, 1, 1, 0, 0);
  Cplx sp(0.3, 1.1);
  Cplx v = theta_eval(s, sp);
  // direct oracle over the Hurwitz order
  Lattice R = builtin_maximal_order(2);
  Cplx sum = 0;
  for (long a = -9; a <= 9; ++a)
    for (long b = -9; b <= 9; ++b)
      for (long c = -9; c <= 9; ++c)
        for (long d = -9; d <= 9; ++d) {
          Rat n = reduced_norm(lattice_vector(R, {a, b, c, d}));
          double nn = to_double(n);
          if (nn > 40) continue;
          sum += std::exp(Cplx(0, 2 * M_PI) * sp * nn);
        }
  sum *= sp.imag();
  CHECK(std::abs(v - sum) < 1e-7);
}

TEST_CASE("fourier coefficients") {
  ThetaSpec s = def_spec(ThetaFamily::DefHol, 2, 1, 1, 2, 0);
  // n outside the (1/ell)Z support grid is rejected
  CHECK_THROWS_AS(theta_fourier_coeff(s, ratq(1, 3), 1.0), std::invalid_argument);
  // [TRIVIAL] coefficient vanishes off the attained determinants
  CHECK(std::abs(theta_fourier_coeff(s, Rat(-1), 1.0)) == 0.0);
  // def_hol: coefficient of e(n x) is (k+1) y^{1+k/2} e^{-2 pi y n} *
  // sum_{nr = n} X^k; cross-check n=0 term = (k+1) y^2 (only gamma = 0,
  // X(0)^2 = 0 ... so the n=0 coefficient is 0 for k >= 2)
  CHECK(std::abs(theta_fourier_coeff(s, Rat(0), 1.0)) < 1e-12);
  // maass family n=0 coefficient at large y is dominated by gamma = 0
  ThetaSpec m = split_spec(ThetaFamily::Maass, 1, 1, 0, {0, 1});
  Cplx c0 = theta_fourier_coeff(m, Rat(0), 4.0);
  CHECK(c0.real() > 4.0);          // y * (count of norm-0 small vectors) >= y
  CHECK(c0.real() < 4.0 * 1.001);  // only gamma = 0 survives e^{-2 pi y P}
}

TEST_CASE("x-periodicity with period ell") {
  // Fourier support in (1/ell)Z
  ThetaSpec s = split_spec(ThetaFamily::Maass, 2, 2, 0, {0.2, 0.9});
  Cplx a = theta_eval(s, {0.37, 1.21});
  Cplx b = theta_eval(s, {2.37, 1.21});
  CHECK(std::abs(a - b) < 1e-9);
  Cplx c = theta_eval(s, {1.37, 1.21});  // half-period need not match
  CHECK(std::abs(a) >= 0);  // evaluated without error
  (void)c;
}

TEST_CASE("Atkin-Lehner transform (eq. 5.6)") {
  std::vector<Cplx> pts = {{0.11, 0.93}, {-0.21, 1.3}};
  // [TRIVIAL] ell = 1: deviation 0 up to truncation
  CHECK(al_transform_check(split_spec(ThetaFamily::Maass, 2, 1, 0, {0.1, 1.2}), pts) < 1e-9);
  // [DERIVED] split N=2, ell=2, k=0
  CHECK(al_transform_check(split_spec(ThetaFamily::Maass, 2, 2, 0, {0.1, 1.2}), pts) < 1e-8);
  // [PAPER] definite d_B=2, ell=2: Moebius sign mu(2) = -1
  CHECK(al_transform_check(def_spec(ThetaFamily::DefHol, 2, 1, 2, 2, 0), pts) < 1e-8);
}

namespace {

// tau_ell * g * tau_ell^{-1}; for g with ell | b and (d_B N / ell) | c this
// lands in Gamma_0(d_B N), and gamma0_modularity_check conjugates it back to
// g internally, so evaluation heights stay under control
std::array<long, 4> conj_by_tau(long ell, long M, const std::array<long, 4>& g) {
  auto tau = tau_ell(ell, M);
  auto mm = [](const std::array<long, 4>& A, const std::array<long, 4>& B) {
    return std::array<long, 4>{A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
                               A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
  };
  return mm(mm(tau, g), {tau[3], -tau[1], -tau[2], tau[0]});
}

}  // namespace

TEST_CASE("Gamma0 modularity") {
  std::vector<Cplx> pts = {{0.13, 0.87}, {0.4, 1.05}};
  // ell = 1: direct Gamma_0(2) invariance
  ThetaSpec s1 = split_spec(ThetaFamily::Maass, 2, 1, 2, {0.15, 0.95});
  // [TRIVIAL] T-translation: exact Fourier periodicity
  CHECK(gamma0_modularity_check(s1, {1, 1, 0, 1}, pts) < 1e-9);
  // [DERIVED] lower-triangular generator (points balanced around the c=2 map)
  std::vector<Cplx> pbal2 = {{-0.5, 0.5}, {-0.45, 0.55}};
  CHECK(gamma0_modularity_check(s1, {1, 0, 2, 1}, pbal2) < 1e-8);
  // ell = 2: invariance holds under the tau_2-conjugated action
  ThetaSpec s = split_spec(ThetaFamily::Maass, 2, 2, 2, {0.15, 0.95});
  // [TRIVIAL] conjugated translation-by-2 seed: exact Fourier periodicity
  CHECK(gamma0_modularity_check(s, conj_by_tau(2, 2, {1, 2, 0, 1}), pts) < 1e-9);
  // [DERIVED] conjugated c=1 seed, points balanced at z = -1 + i
  std::vector<Cplx> pbal1 = {{-1.0, 1.0}, {-0.9, 0.95}};
  CHECK(gamma0_modularity_check(s, conj_by_tau(2, 2, {1, 0, 1, 1}), pbal1) < 1e-8);
  // [DERIVED] a word of the seeds, points balanced at z = -3 + i
  std::vector<Cplx> pword = {{-3.0, 1.0}, {-2.9, 0.95}};
  CHECK(gamma0_modularity_check(s, conj_by_tau(2, 2, {1, 2, 1, 3}), pword) < 1e-8);
  // non-member rejected
  CHECK_THROWS_AS(gamma0_modularity_check(s, {1, 0, 1, 1}, pts), std::invalid_argument);
}

TEST_CASE("PDE residual (eq. K-isotope-PDE)") {
  // [DERIVED] O(h^2): halving h divides the residual by ~4
  std::array<double, 4> pt = {0.31, 0.17, -0.11, 0.43};
  for (ThetaSpec s : {split_spec(ThetaFamily::Maass, 1, 1, 2, {0, 1}),
                      split_spec(ThetaFamily::IndefHol, 1, 1, 8, {0, 1}),
                      def_spec(ThetaFamily::DefSph, 2, 1, 1, 0, 2),
                      def_spec(ThetaFamily::DefHol, 2, 1, 1, 2, 0)}) {
    double ratio = pde_richardson_ratio(s, pt, 1e-2);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("volume formula (eq. 4.2)") {
  // [PAPER] empty products at (1,1)
  CHECK(volume_rational(1, 1) == ratq(1, 3));
  // [DERIVED] (1,2) -> pi, (2,1) -> pi/3
  CHECK(volume_rational(1, 2) == Rat(1));
  CHECK(volume_rational(2, 1) == ratq(1, 3));
  CHECK(volume(1, 1) == doctest::Approx(M_PI / 3).epsilon(1e-12));
  CHECK_THROWS_AS(volume_rational(2, 2), std::invalid_argument);  // not coprime
  CHECK_THROWS_AS(volume_rational(4, 1), std::invalid_argument);  // not squarefree
}

TEST_CASE("delta q-expansion and evaluation") {
  NewformData f = delta_qexp(60);
  // [DERIVED] product-expansion oracle
  CHECK(f.coeffs[0] == 1);
  CHECK(f.coeffs[1] == -24);
  CHECK(f.coeffs[2] == 252);
  CHECK(f.coeffs[3] == -1472);
  CHECK(f.coeffs[4] == 4830);
  // [DERIVED] multiplicativity on coprime pairs <= 50
  for (long m = 2; m <= 7; ++m)
    for (long n = 2; n <= 50 / m; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(f.coeffs[m * n - 1] == f.coeffs[m - 1] * f.coeffs[n - 1]);
    }
  // [DERIVED] |Im(i)^6 Delta(i)| ~ 0.00178538 (eta(i) identity cross-check)
  double v = std::abs(newform_eval(f, {0, 1}));
  double eta_i = std::tgamma(0.25) / (2 * std::pow(M_PI, 0.75));
  double oracle = std::pow(eta_i, 24);
  CHECK(v == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(v == doctest::Approx(0.00178538).epsilon(1e-5));
}

TEST_CASE("petersson inner product") {
  // [PAPER] probability measure: <1, 1> = 1
  auto one = [](Cplx) { return Cplx(1, 0); };
  Cplx area = petersson_inner(one, one, 0);
  CHECK(area.real() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(area.imag()) < 1e-9);
  // [DERIVED] two independent quadrature schemes agree on <Delta~, Delta~>
  NewformData f = delta_qexp(64);
  auto ft = [&](Cplx z) { return newform_eval(f, z); };
  Cplx n0 = petersson_inner(ft, ft, 0);
  Cplx n1 = petersson_inner(ft, ft, 1);
  CHECK(n0.real() > 0);
  CHECK(std::abs(n0 - n1) / std::abs(n0) < 1e-4);
  // in the plain dx dy / y^2 convention (undo the 3/pi normalization) the
  // value matches the classical Petersson norm of Delta
  CHECK((M_PI / 3) * n0.real() == doctest::Approx(1.03536e-6).epsilon(1e-3));
}

TEST_CASE("Legendre Bernstein bound (supports def_sph)") {
  // [PAPER] P_m(t) <= min{1, sqrt(2/(pi m)) (1-t^2)^{-1/4}} on a grid
  for (int m = 1; m <= 50; ++m)
    for (int i = -49; i <= 49; ++i) {
      double t = i / 50.0;
      double bound = std::min(1.0, std::sqrt(2.0 / (M_PI * m)) * std::pow(1 - t * t, -0.25));
      CHECK(std::abs(std::legendre(m, t)) <= bound + 1e-12);
    }
}

TEST_CASE("theta lift conjugate symmetry probe") {
  // cheap sanity at modest accuracy; the full Prop-5.1 identity runs in the
  // acceptance binary
  NewformData f = delta_qexp(48);
  LiftReport r = theta_lift_identity_check(f, {0.0, 1.0}, 1e-4);
  CHECK(std::abs(r.lhs.imag()) / std::abs(r.lhs.real()) < 1e-2);
  CHECK(r.rhs > 0);
  CHECK(r.rel_err < 0.05);
}
