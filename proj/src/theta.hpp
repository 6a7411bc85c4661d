#pragma once

#include <functional>
#include <map>

#include "bounds.hpp"

namespace qc {

// The four explicit theta kernels (lattice sums over the rank-4 partial dual
// R(ell), viewed through an archimedean frame g):
//   Maass    y^{1+k/2} sum X^k e^{-2 pi y P} e(x det)
//   IndefHol (k-1)/(4 pi) y^{k/2} sum_{det>0} det^{k-1} conj(X)^{-k} e(z det)
//   DefSph   (2m+1) y^{1+m} sum det^m P_m((|X|^2 - u)/det) e(z det)
//   DefHol   (k+1) y^{1+k/2} sum X^k e(z det)
enum class ThetaFamily { Maass, IndefHol, DefSph, DefHol };

struct ThetaSpec {
  ThetaFamily family = ThetaFamily::Maass;
  Int d_B{1};
  Int N{1};
  Int ell{1};
  ArchFrame frame;
  int k = 0;  // Maass / IndefHol / DefHol weight parameter
  int m = 0;  // DefSph spherical degree
  double accuracy = 1e-10;
};

// rotation-isotypy weight per family: k, k, 2m+2, k+2
int kappa_of(const ThetaSpec& spec);

void validate(const ThetaSpec& spec);

// Caches the embedded basis and, for the e(z det)-type families, the
// det-bucketed Fourier coefficients, so repeated evaluation is cheap.
class ThetaEvaluator {
 public:
  explicit ThetaEvaluator(const ThetaSpec& spec);

  Cplx eval(Cplx s) const;
  // coefficient of e(n x) at height y (exact determinant filter)
  Cplx fourier_coeff(const Rat& n, double y) const;

  const ThetaSpec& spec() const { return spec_; }

 private:
  double radius(double y) const;  // truncation radius in the P-gauge
  void ensure_buckets(double R) const;
  template <typename F>
  void for_each_point(double R, F&& fn) const;  // fn(coeffs, coords, det)

  ThetaSpec spec_;
  Lattice L_;
  std::array<std::array<double, 4>, 4> basis_coords_{};  // row i = coords of b_i
  std::array<std::array<double, 4>, 4> gram_{};          // P-form Gram
  double covol_ = 1;
  bool det_family_ = false;
  mutable double bucket_R_ = -1;
  mutable std::map<long long, Cplx> buckets_;  // key: round(det * ell)
};

Cplx theta_eval(const ThetaSpec& spec, Cplx s);
Cplx theta_fourier_coeff(const ThetaSpec& spec, const Rat& n, double y);

// sup over test points of |theta_{g,1}(tau_ell z) j(tau_ell, z)^{-kappa} -
// mu(gcd(ell, d_B))/ell * theta_{g,ell}(z)| with the unitary automorphy
// factor j(g, z) = (cz + d)/|cz + d|
double al_transform_check(const ThetaSpec& spec, const std::vector<Cplx>& test_points);

// weight-kappa invariance deviation for gamma in Gamma_0(d_B N).  Since
// theta_{g,ell} is proportional to theta_{g,1} slashed by tau_ell, the
// invariance of theta_{g,ell} is tested under the tau_ell-conjugate of
// gamma (trivial conjugation for ell = 1).
double gamma0_modularity_check(const ThetaSpec& spec, const std::array<long, 4>& gamma,
                               const std::vector<Cplx>& test_points);

// archimedean test function of the family at a point of B_infty ~ R^4
Cplx archimedean_test_function(const ThetaSpec& spec, const std::array<double, 4>& pt);

// residual of -Delta Phi + (2 pi)^2 det Phi = 2 pi kappa Phi with the
// centered finite-difference Laplacian (1/4)(d_a^2 -+ (d_b^2 + d_c^2) + d_d^2)
double pde_residual(const ThetaSpec& spec, const std::array<double, 4>& pt, double h);
// residual(h) / residual(h/2); ~4 for an O(h^2) scheme
double pde_richardson_ratio(const ThetaSpec& spec, const std::array<double, 4>& pt, double h);

// covolume pi/3 d_B N prod_{p | d_B}(1 - 1/p) prod_{p | N}(1 + 1/p);
// volume_rational returns the rational multiplier of pi
Rat volume_rational(const Int& d_B, const Int& N);
double volume(const Int& d_B, const Int& N);

struct NewformData {
  int k = 12;
  Int N{1};
  std::vector<Int> coeffs;  // a_1 .. a_nmax, arithmetic normalization a_1 = 1
  std::string source;
};

NewformData delta_qexp(int n_max);            // q prod (1 - q^n)^24
Cplx newform_eval(const NewformData& f, Cplx z);  // Im(z)^{k/2} f(z)

// probability-measure inner product (3/pi) int_F F conj(G) dx dy / y^2 over
// the standard SL_2(Z) fundamental domain; scheme 0 = Gauss-Legendre,
// scheme 1 = composite Simpson (independent cross-check)
Cplx petersson_inner(const std::function<Cplx(Cplx)>& F, const std::function<Cplx(Cplx)>& G,
                     int scheme = 0);

struct LiftReport {
  Cplx lhs;        // <theta_{sigma_z,1}, Im^{k/2} f>_prob
  double rhs;      // |Im(z)^{k/2} f(z)|^2 / (pi/3)
  double rel_err;
  double constant;  // empirical lhs/rhs ratio
};

// Prop-5.1-type identity at level 1 for a holomorphic newform
LiftReport theta_lift_identity_check(const NewformData& f, Cplx z, double accuracy = 1e-6);

}  // namespace qc
