#include "theta.hpp"

#include <algorithm>
#include <cmath>

namespace qc {

namespace {

constexpr double kPi = 3.14159265358979323846;

Cplx ipow(Cplx x, int k) {
  if (k < 0) return 1.0 / ipow(x, -k);
  Cplx r = 1;
  while (k-- > 0) r *= x;
  return r;
}

double dpow(double x, int k) {
  double r = 1;
  while (k-- > 0) r *= x;
  return r;
}

Cplx e_of(Cplx t) { return std::exp(Cplx(0, 2 * kPi) * t); }

// homogenized Legendre polynomial det^m P_m(t / det)
double legendre_hom(int m, double t, double det) {
  double p0 = 1, p1 = t;
  if (m == 0) return p0;
  for (int j = 1; j < m; ++j) {
    double p2 = ((2 * j + 1) * t * p1 - j * det * det * p0) / (j + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// unitary automorphy factor (cz + d)/|cz + d|
Cplx unitary_j(const std::array<long, 4>& g, Cplx z) {
  Cplx den = double(g[2]) * z + double(g[3]);
  return den / std::abs(den);
}

struct Kahan {
  double hi = 0, lo = 0;
  void add(double v) {
    double t = hi + v;
    if (std::abs(hi) >= std::abs(v))
      lo += (hi - t) + v;
    else
      lo += (v - t) + hi;
    hi = t;
  }
  double value() const { return hi + lo; }
};

}  // namespace

int kappa_of(const ThetaSpec& spec) {
  switch (spec.family) {
    case ThetaFamily::Maass:
    case ThetaFamily::IndefHol:
      return spec.k;
    case ThetaFamily::DefSph:
      return 2 * spec.m + 2;
    case ThetaFamily::DefHol:
      return spec.k + 2;
  }
  return 0;
}

void validate(const ThetaSpec& spec) {
  if (spec.ell <= 0 || (spec.d_B * spec.N) % spec.ell != 0)
    throw std::invalid_argument("theta: ell must divide d_B N");
  if (spec.accuracy <= 0) throw std::invalid_argument("theta: accuracy must be positive");
  bool definite = (spec.d_B != 1);
  switch (spec.family) {
    case ThetaFamily::Maass:
      if (definite || spec.k < 0 || spec.k % 2)
        throw std::invalid_argument("maass family: split algebra and even k >= 0 required");
      break;
    case ThetaFamily::IndefHol:
      if (definite || spec.k < 6 || spec.k % 2)
        throw std::invalid_argument("indef_hol family: split algebra and even k >= 6 required");
      break;
    case ThetaFamily::DefSph:
      if (!definite || spec.m < 0)
        throw std::invalid_argument("def_sph family: definite algebra and m >= 0 required");
      break;
    case ThetaFamily::DefHol:
      if (!definite || spec.k < 2 || spec.k % 2)
        throw std::invalid_argument("def_hol family: definite algebra and even k >= 2 required");
      break;
  }
}

ThetaEvaluator::ThetaEvaluator(const ThetaSpec& spec)
    : spec_(spec), L_(partial_dual(make_order(spec.d_B, spec.N), spec.ell)) {
  validate(spec_);
  if (!(spec_.frame.alg == L_.alg))
    throw std::invalid_argument("theta: frame algebra does not match the order's algebra");
  for (int i = 0; i < 4; ++i) {
    auto c = embed_coords(quat_from_row(L_.alg, L_.basis[i]), spec_.frame);
    for (int t = 0; t < 4; ++t) basis_coords_[i][t] = c[t];
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int t = 0; t < 4; ++t) s += basis_coords_[i][t] * basis_coords_[j][t];
      gram_[i][j] = s;
    }
  // covolume = sqrt(det of the P-Gram)
  double m[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = gram_[i][j];
  double det = 1;
  for (int i = 0; i < 4; ++i) {
    int p = i;
    for (int r = i + 1; r < 4; ++r)
      if (std::abs(m[r][i]) > std::abs(m[p][i])) p = r;
    if (p != i) {
      std::swap(m[p], m[i]);
      det = -det;
    }
    det *= m[i][i];
    for (int r = i + 1; r < 4; ++r) {
      double f = m[r][i] / m[i][i];
      for (int c = i; c < 4; ++c) m[r][c] -= f * m[i][c];
    }
  }
  covol_ = std::sqrt(std::abs(det));
  det_family_ = (spec_.family != ThetaFamily::Maass);
}

double ThetaEvaluator::radius(double y) const {
  double acc = spec_.accuracy;
  double dens = 16 / covol_;
  double M = to_double(Rat(spec_.d_B * spec_.N));
  double l = to_double(Rat(spec_.ell));
  if (spec_.family == ThetaFamily::IndefHol) {
    // polynomial tail: sum_n n^{k-1} e^{-2 pi y n} times count growth R^2,
    // term size R^{-k} beyond radius R
    double Cn = 0;
    for (long j = 1; j < 2000000; ++j) {
      double n = j / l;
      double t = dpow(n, spec_.k - 1) * std::exp(-2 * kPi * y * n);
      Cn += t;
      if (n > 1 && t < acc * 1e-4) break;
    }
    double pref = 16 * std::max(Cn, 1e-300) * (1 + l * l / M);
    double R = 3;
    while (pref * std::pow(R, 2 - spec_.k) > acc) {
      R += 0.5;
      if (R > 128) throw std::runtime_error("theta: truncation budget exceeded");
    }
    return R;
  }
  int kexp = (spec_.family == ThetaFamily::DefSph) ? 2 * spec_.m : spec_.k;
  double R = 1;
  while (dens * std::pow(1 + R, 4 + kexp) * std::exp(-2 * kPi * y * R * R) > acc) {
    R += 0.25;
    if (R > 128) throw std::runtime_error("theta: truncation budget exceeded");
  }
  return R;
}

template <typename F>
void ThetaEvaluator::for_each_point(double R, F&& fn) const {
  // Fincke-Pohst over the P-Gram in doubles
  double Rch[4][4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      double s = gram_[i][j];
      for (int k = 0; k < i; ++k) s -= Rch[k][i] * Rch[k][j];
      if (i == j)
        Rch[i][i] = std::sqrt(std::max(s, 1e-300));
      else
        Rch[i][j] = s / Rch[i][i];
    }
  double bound = R * R * (1 + 1e-9) + 1e-9;
  std::array<long, 4> c{};
  std::array<double, 4> partial{};  // partial[j] = sum_{k>i} Rch[j][k] c[k]
  auto rec = [&](auto&& self, int i, double rem, std::array<double, 4> part) -> void {
    double center = -part[i] / Rch[i][i];
    double hw = std::sqrt(std::max(rem, 0.0)) / Rch[i][i];
    long lo = (long)std::ceil(center - hw - 1e-9);
    long hi = (long)std::floor(center + hw + 1e-9);
    for (long v = lo; v <= hi; ++v) {
      c[i] = v;
      double term = Rch[i][i] * v + part[i];
      double rem2 = rem - term * term;
      if (rem2 < -1e-9) continue;
      if (i == 0) {
        std::array<double, 4> coords{};
        for (int t = 0; t < 4; ++t)
          for (int b = 0; b < 4; ++b) coords[t] += c[b] * basis_coords_[b][t];
        double det;
        if (L_.alg.is_definite())
          det = coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2] +
                coords[3] * coords[3];
        else
          det = coords[0] * coords[0] - coords[1] * coords[1] - coords[2] * coords[2] +
                coords[3] * coords[3];
        fn(c, coords, det);
      } else {
        std::array<double, 4> p2 = part;
        for (int j = 0; j < i; ++j) p2[j] += Rch[j][i] * v;
        self(self, i - 1, rem2, p2);
      }
    }
  };
  rec(rec, 3, bound, partial);
}

void ThetaEvaluator::ensure_buckets(double R) const {
  if (R <= bucket_R_) return;
  buckets_.clear();
  double l = to_double(Rat(spec_.ell));
  for_each_point(R, [&](const std::array<long, 4>&, const std::array<double, 4>& coords,
                        double det) {
    long long key = std::llround(det * l);
    double dq = key / l;  // determinant snapped to its exact (1/ell)-grid value
    Cplx X(coords[3], coords[0]);
    switch (spec_.family) {
      case ThetaFamily::IndefHol: {
        if (key <= 0) return;
        buckets_[key] += dpow(dq, spec_.k - 1) * ipow(std::conj(X), -spec_.k);
        break;
      }
      case ThetaFamily::DefSph: {
        double u = coords[1] * coords[1] + coords[2] * coords[2];
        double t = std::norm(X) - u;
        buckets_[key] += legendre_hom(spec_.m, t, dq);
        break;
      }
      case ThetaFamily::DefHol:
        buckets_[key] += ipow(X, spec_.k);
        break;
      default:
        break;
    }
  });
  bucket_R_ = R;
}

Cplx ThetaEvaluator::eval(Cplx s) const {
  double x = s.real(), y = s.imag();
  if (y <= 0) throw std::invalid_argument("theta_eval: Im s > 0 required");
  double R = radius(y);
  if (spec_.family == ThetaFamily::Maass) {
    Kahan re, im;
    for_each_point(R, [&](const std::array<long, 4>&, const std::array<double, 4>& coords,
                          double det) {
      double P = coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2] +
                 coords[3] * coords[3];
      Cplx X(coords[3], coords[0]);
      Cplx term = ipow(X, spec_.k) * std::exp(-2 * kPi * y * P) * e_of(x * det);
      re.add(term.real());
      im.add(term.imag());
    });
    return std::pow(y, 1 + spec_.k / 2.0) * Cplx(re.value(), im.value());
  }
  ensure_buckets(R);
  double l = to_double(Rat(spec_.ell));
  Cplx sum = 0;
  for (auto& [key, w] : buckets_) sum += w * e_of(s * (key / l));
  double pref;
  switch (spec_.family) {
    case ThetaFamily::IndefHol:
      pref = (spec_.k - 1) / (4 * kPi) * std::pow(y, spec_.k / 2.0);
      break;
    case ThetaFamily::DefSph:
      pref = (2 * spec_.m + 1) * std::pow(y, 1.0 + spec_.m);
      break;
    default:
      pref = (spec_.k + 1) * std::pow(y, 1 + spec_.k / 2.0);
      break;
  }
  return pref * sum;
}

Cplx ThetaEvaluator::fourier_coeff(const Rat& n, double y) const {
  if (y <= 0) throw std::invalid_argument("fourier_coeff: y > 0 required");
  if (!is_integer(n * Rat(spec_.ell)))
    throw std::invalid_argument("fourier_coeff: n must lie in (1/ell) Z");
  double R = radius(y);
  Cplx sum = 0;
  double nd = to_double(n);
  for_each_point(R, [&](const std::array<long, 4>& c, const std::array<double, 4>& coords,
                        double) {
    IVec iv = {Int(c[0]), Int(c[1]), Int(c[2]), Int(c[3])};
    if (reduced_norm(lattice_vector(L_, iv)) != n) return;
    Cplx X(coords[3], coords[0]);
    switch (spec_.family) {
      case ThetaFamily::Maass: {
        double P = coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2] +
                   coords[3] * coords[3];
        sum += ipow(X, spec_.k) * std::exp(-2 * kPi * y * P);
        break;
      }
      case ThetaFamily::IndefHol:
        if (nd > 0) sum += dpow(nd, spec_.k - 1) * ipow(std::conj(X), -spec_.k);
        break;
      case ThetaFamily::DefSph: {
        double u = coords[1] * coords[1] + coords[2] * coords[2];
        sum += legendre_hom(spec_.m, std::norm(X) - u, nd);
        break;
      }
      case ThetaFamily::DefHol:
        sum += ipow(X, spec_.k);
        break;
    }
  });
  switch (spec_.family) {
    case ThetaFamily::Maass:
      return std::pow(y, 1 + spec_.k / 2.0) * sum;
    case ThetaFamily::IndefHol:
      if (nd <= 0) return 0;
      return (spec_.k - 1) / (4 * kPi) * std::pow(y, spec_.k / 2.0) *
             std::exp(-2 * kPi * y * nd) * sum;
    case ThetaFamily::DefSph:
      return (2 * spec_.m + 1) * std::pow(y, 1.0 + spec_.m) * std::exp(-2 * kPi * y * nd) * sum;
    default:
      return (spec_.k + 1) * std::pow(y, 1 + spec_.k / 2.0) * std::exp(-2 * kPi * y * nd) * sum;
  }
}

Cplx theta_eval(const ThetaSpec& spec, Cplx s) { return ThetaEvaluator(spec).eval(s); }

Cplx theta_fourier_coeff(const ThetaSpec& spec, const Rat& n, double y) {
  return ThetaEvaluator(spec).fourier_coeff(n, y);
}

double al_transform_check(const ThetaSpec& spec, const std::vector<Cplx>& test_points) {
  validate(spec);
  ThetaSpec s1 = spec;
  s1.ell = 1;
  ThetaEvaluator E1(s1), El(spec);
  Int M = spec.d_B * spec.N;
  auto tau = tau_ell(spec.ell, M);
  int kap = kappa_of(spec);
  Int g;
  mpz_gcd(g.get_mpz_t(), spec.ell.get_mpz_t(), spec.d_B.get_mpz_t());
  double factor = double(moebius(g)) / to_double(Rat(spec.ell));
  double dev = 0;
  for (Cplx z : test_points) {
    Cplx lhs = E1.eval(mobius(tau, z)) * ipow(unitary_j(tau, z), -kap);
    Cplx rhs = factor * El.eval(z);
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  return dev;
}

double gamma0_modularity_check(const ThetaSpec& spec, const std::array<long, 4>& gamma,
                               const std::vector<Cplx>& test_points) {
  validate(spec);
  Int M = spec.d_B * spec.N;
  if (gamma[0] * gamma[3] - gamma[1] * gamma[2] != 1 ||
      Int(gamma[2]) % M != 0)
    throw std::invalid_argument("gamma0_modularity_check: gamma not in Gamma_0(d_B N)");
  // theta_{g,ell} is proportional to theta_{g,1} |_kappa tau_ell (the
  // Atkin-Lehner law), so the Gamma_0(d_B N)-invariance of theta_{g,1}
  // transports to invariance of theta_{g,ell} under the tau_ell-conjugate
  // of gamma (for ell = 1 the conjugation is trivial).
  auto tau = tau_ell(spec.ell, M);
  std::array<long, 4> inv = {tau[3], -tau[1], -tau[2], tau[0]};
  auto matmul = [](const std::array<long, 4>& A, const std::array<long, 4>& B) {
    return std::array<long, 4>{A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
                               A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
  };
  std::array<long, 4> g = matmul(matmul(inv, gamma), tau);
  ThetaEvaluator E(spec);
  int kap = kappa_of(spec);
  double dev = 0;
  for (Cplx z : test_points) {
    Cplx lhs = E.eval(mobius(g, z)) * ipow(unitary_j(g, z), -kap);
    dev = std::max(dev, std::abs(lhs - E.eval(z)));
  }
  return dev;
}

Cplx archimedean_test_function(const ThetaSpec& spec, const std::array<double, 4>& pt) {
  double a = pt[0], b = pt[1], cc = pt[2], d = pt[3];
  bool definite = (spec.family == ThetaFamily::DefSph || spec.family == ThetaFamily::DefHol);
  double det = definite ? a * a + b * b + cc * cc + d * d
                        : a * a - b * b - cc * cc + d * d;
  double P = a * a + b * b + cc * cc + d * d;
  Cplx X(d, a);
  switch (spec.family) {
    case ThetaFamily::Maass:
      return ipow(X, spec.k) * std::exp(-2 * kPi * P);
    case ThetaFamily::IndefHol:
      if (det <= 0) return 0;
      return (spec.k - 1) / (4 * kPi) * dpow(det, spec.k - 1) * ipow(std::conj(X), -spec.k) *
             std::exp(-2 * kPi * det);
    case ThetaFamily::DefSph: {
      double u = b * b + cc * cc;
      return (2 * spec.m + 1) * legendre_hom(spec.m, std::norm(X) - u, det) *
             std::exp(-2 * kPi * det);
    }
    default:
      return double(spec.k + 1) * ipow(X, spec.k) * std::exp(-2 * kPi * det);
  }
}

double pde_residual(const ThetaSpec& spec, const std::array<double, 4>& pt, double h) {
  bool definite = (spec.family == ThetaFamily::DefSph || spec.family == ThetaFamily::DefHol);
  auto phi = [&](const std::array<double, 4>& p) { return archimedean_test_function(spec, p); };
  Cplx lap = 0;
  for (int i = 0; i < 4; ++i) {
    std::array<double, 4> up = pt, dn = pt;
    up[i] += h;
    dn[i] -= h;
    Cplx second = (phi(up) - 2.0 * phi(pt) + phi(dn)) / (h * h);
    double sign = (i == 1 || i == 2) ? (definite ? 1.0 : -1.0) : 1.0;
    lap += 0.25 * sign * second;
  }
  double det = definite
                   ? pt[0] * pt[0] + pt[1] * pt[1] + pt[2] * pt[2] + pt[3] * pt[3]
                   : pt[0] * pt[0] - pt[1] * pt[1] - pt[2] * pt[2] + pt[3] * pt[3];
  Cplx resid = -lap + (2 * kPi) * (2 * kPi) * det * phi(pt) -
               2 * kPi * double(kappa_of(spec)) * phi(pt);
  return std::abs(resid);
}

double pde_richardson_ratio(const ThetaSpec& spec, const std::array<double, 4>& pt, double h) {
  double r1 = pde_residual(spec, pt, h);
  double r2 = pde_residual(spec, pt, h / 2);
  if (r2 == 0) return 4.0;
  return r1 / r2;
}

Rat volume_rational(const Int& d_B, const Int& N) {
  if (d_B <= 0 || N <= 0 || !is_squarefree(d_B * N))
    throw std::invalid_argument("volume: d_B N must be positive and squarefree");
  Rat v = ratq(d_B * N, 3);
  for (auto& [p, e] : factorize(d_B)) v *= Rat(p - 1) / Rat(p);
  for (auto& [p, e] : factorize(N)) v *= Rat(p + 1) / Rat(p);
  return v;
}

double volume(const Int& d_B, const Int& N) { return kPi * to_double(volume_rational(d_B, N)); }

NewformData delta_qexp(int n_max) {
  if (n_max < 1) throw std::invalid_argument("delta_qexp: n_max >= 1 required");
  // q prod_{n >= 1} (1 - q^n)^24, coefficients of q^1 .. q^{n_max}
  std::vector<Int> p(n_max, 0);  // p[i] = coefficient of q^i in prod so far
  p[0] = 1;
  for (int rep = 0; rep < 24; ++rep)
    for (int n = 1; n < n_max; ++n)
      for (int i = n_max - 1; i >= n; --i) p[i] -= p[i - n];
  NewformData f;
  f.k = 12;
  f.N = 1;
  f.source = "delta (computed q-expansion)";
  f.coeffs.assign(p.begin(), p.end());  // a_m = p[m-1]
  return f;
}

Cplx newform_eval(const NewformData& f, Cplx z) {
  double y = z.imag();
  if (y <= 0) throw std::invalid_argument("newform_eval: Im z > 0 required");
  size_t nmax = f.coeffs.size();
  Cplx q = e_of(z);
  Cplx qn = 1, sum = 0;
  for (size_t n = 1; n <= nmax; ++n) {
    qn *= q;
    sum += to_double(Rat(f.coeffs[n - 1])) * qn;
  }
  // crude tail majorant |a_n| <= n^{(k+1)/2}
  double tail = std::pow(double(nmax + 1), (f.k + 1) / 2.0) *
                std::exp(-2 * kPi * y * double(nmax + 1)) / (1 - std::exp(-2 * kPi * y));
  if (tail > 1e-12) throw std::runtime_error("newform_eval: tail budget exceeded");
  return std::pow(y, f.k / 2.0) * sum;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& xs, std::vector<double>& ws) {
  xs.assign(n, 0);
  ws.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1);
    xs[i] = x;
    ws[i] = 2 / ((1 - x * x) * dp * dp);
  }
}

}  // namespace

Cplx petersson_inner(const std::function<Cplx(Cplx)>& F, const std::function<Cplx(Cplx)>& G,
                     int scheme) {
  // integral over the standard fundamental domain |x| <= 1/2, |z| >= 1;
  // substitute y = y0(x) e^u so that dx dy / y^2 = dx du / y.  The u-range
  // is split at y = 10: a finely resolved segment carrying the bulk of any
  // cusp-form pairing, plus a coarser tail out to y = 1e7 so that slowly
  // decaying integrands (e.g. the constant used for the area check) lose
  // only O(1e-7) of their mass.
  auto integrand = [&](double x, double u) {
    double y0 = std::sqrt(std::max(1 - x * x, 1e-15));
    double y = y0 * std::exp(u);
    Cplx z(x, y);
    return F(z) * std::conj(G(z)) / y;
  };
  auto ubreak = [&](double x) {
    double y0 = std::sqrt(std::max(1 - x * x, 1e-15));
    return std::log(10.0 / y0);
  };
  auto umax = [&](double x) {
    double y0 = std::sqrt(std::max(1 - x * x, 1e-15));
    return std::log(1e7 / y0);
  };
  Cplx total = 0;
  if (scheme == 0) {
    static std::vector<double> xs, ws, xt, wt;
    if (xs.empty()) {
      gauss_legendre(64, xs, ws);
      gauss_legendre(32, xt, wt);
    }
    for (int i = 0; i < 64; ++i) {
      double x = 0.5 * xs[i];
      double U1 = ubreak(x), U2 = umax(x);
      Cplx inner = 0;
      for (int j = 0; j < 64; ++j) {
        double u = 0.5 * U1 * (xs[j] + 1);
        inner += ws[j] * 0.5 * U1 * integrand(x, u);
      }
      for (int j = 0; j < 32; ++j) {
        double u = U1 + 0.5 * (U2 - U1) * (xt[j] + 1);
        inner += wt[j] * 0.5 * (U2 - U1) * integrand(x, u);
      }
      total += ws[i] * inner * 0.5;
    }
  } else {
    const int nx = 128;  // composite Simpson (even panel counts)
    auto simpson_w = [](int idx, int n) -> double {
      if (idx == 0 || idx == n) return 1;
      return (idx % 2) ? 4 : 2;
    };
    for (int i = 0; i <= nx; ++i) {
      double x = -0.5 + double(i) / nx;
      double U1 = ubreak(x), U2 = umax(x);
      Cplx inner = 0;
      const int nu = 128, nt = 64;
      Cplx seg = 0;
      for (int j = 0; j <= nu; ++j)
        seg += simpson_w(j, nu) * integrand(x, U1 * double(j) / nu);
      inner += seg * (U1 / nu / 3);
      seg = 0;
      for (int j = 0; j <= nt; ++j)
        seg += simpson_w(j, nt) * integrand(x, U1 + (U2 - U1) * double(j) / nt);
      inner += seg * ((U2 - U1) / nt / 3);
      total += simpson_w(i, nx) * inner;
    }
    total *= (1.0 / nx) / 3;
  }
  return total * (3 / kPi);
}

LiftReport theta_lift_identity_check(const NewformData& f, Cplx z, double accuracy) {
  if (!(f.N == 1)) throw std::invalid_argument("theta_lift_identity_check: level 1 required");
  if (f.k < 12 || f.k % 2) throw std::invalid_argument("theta_lift_identity_check: even k >= 12");
  ThetaSpec spec;
  spec.family = ThetaFamily::IndefHol;
  spec.k = f.k;
  spec.frame = ArchFrame::split_approx(z.real(), z.imag());
  spec.accuracy = accuracy;
  ThetaEvaluator E(spec);
  auto F = [&](Cplx s) { return E.eval(s); };
  auto G = [&](Cplx s) { return newform_eval(f, s); };
  LiftReport rep;
  // the classical kernel of the identity carries a (k-1)/(8 pi) prefactor,
  // half the evaluator's (k-1)/(4 pi): the lattice sum counts alpha and
  // -alpha together while the identity's kernel does not
  rep.lhs = 0.5 * petersson_inner(F, G, 0);
  double fz = std::abs(newform_eval(f, z));
  rep.rhs = fz * fz / (kPi / 3);
  rep.rel_err = std::abs(rep.lhs - rep.rhs) / rep.rhs;
  rep.constant = rep.lhs.real() / rep.rhs;
  return rep;
}

}  // namespace qc
