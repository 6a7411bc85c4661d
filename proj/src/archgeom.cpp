#include "archgeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace qc {

ArchFrame ArchFrame::split_exact(const Rat& x, const Rat& y_squared) {
  if (y_squared <= 0) throw std::invalid_argument("split_exact: need Im z > 0");
  ArchFrame f;
  f.kind = Kind::Split;
  f.alg = split_algebra();
  f.exact = true;
  f.qx = x;
  f.qs = y_squared;
  f.fx = to_double(x);
  f.fy = std::sqrt(to_double(y_squared));
  return f;
}

ArchFrame ArchFrame::split_approx(double x, double y) {
  if (y <= 0) throw std::invalid_argument("split_approx: need Im z > 0");
  ArchFrame f;
  f.kind = Kind::Split;
  f.alg = split_algebra();
  f.exact = false;
  f.fx = x;
  f.fy = y;
  return f;
}

ArchFrame ArchFrame::definite(const Quat& g) {
  if (!g.alg.is_definite()) throw std::invalid_argument("definite frame: algebra not definite");
  if (reduced_norm(g) == 0) throw std::invalid_argument("definite frame: norm-zero conjugator");
  ArchFrame f;
  f.kind = Kind::Definite;
  f.alg = g.alg;
  f.exact = true;
  f.g = g;
  return f;
}

ArchFrame ArchFrame::identity(const AlgebraSpec& alg) {
  if (alg.is_definite()) return definite(Quat(alg, 1, 0, 0, 0));
  if (!(alg == split_algebra()))
    throw std::invalid_argument("identity frame: indefinite algebras must be (1,1|Q)");
  return split_exact(Rat(0), Rat(1));
}

std::array<Rat, 4> ArchFrame::weights() const {
  if (kind == Kind::Split) return {qs, qs, Rat(1), Rat(1)};
  return {abs(alg.a), abs(alg.b), abs(alg.a * alg.b), Rat(1)};
}

std::array<Rat, 4> embed_exact(const Quat& q, const ArchFrame& frame) {
  if (!frame.exact) throw std::invalid_argument("embed_exact: frame not exact");
  if (!(q.alg == frame.alg)) throw std::invalid_argument("embed_exact: algebra mismatch");
  if (frame.kind == ArchFrame::Kind::Split) {
    Rat A, B, C, D;
    quat_to_matrix(q, A, B, C, D);
    const Rat& x = frame.qx;
    const Rat& s = frame.qs;
    // sigma_z^{-1} [[A,B],[C,D]] sigma_z = [[A-xC, bt/y],[C y, D+xC]] with
    // bt = B + x(A-D) - x^2 C and y = sqrt(s); coordinates a,b carry one
    // factor of y each, c,d are rational
    Rat bt = B + x * (A - D) - x * x * C;
    Rat c = ((A - x * C) - (D + x * C)) / 2;
    Rat d = ((A - x * C) + (D + x * C)) / 2;
    Rat ar = (bt / s - C) / 2;
    Rat br = (bt / s + C) / 2;
    return {ar, br, c, d};
  }
  Quat qq = mul(mul(inverse(frame.g), q), frame.g);
  return {qq.x, qq.y, qq.z, qq.w};
}

std::array<double, 4> embed_coords(const Quat& q, const ArchFrame& frame) {
  if (frame.exact) {
    auto e = embed_exact(q, frame);
    auto w = frame.weights();
    std::array<double, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = to_double(e[i]) * std::sqrt(to_double(w[i]));
    return out;
  }
  // floating split frame
  Rat Aq, Bq, Cq, Dq;
  quat_to_matrix(q, Aq, Bq, Cq, Dq);
  double A = to_double(Aq), B = to_double(Bq), C = to_double(Cq), D = to_double(Dq);
  double x = frame.fx, y = frame.fy;
  double Ap = A - x * C;
  double Dp = D + x * C;
  double Bp = (B + x * (A - D) - x * x * C) / y;
  double Cp = C * y;
  return {(Bp - Cp) / 2, (Bp + Cp) / 2, (Ap - Dp) / 2, (Ap + Dp) / 2};
}

Rat P_exact(const Quat& q, const ArchFrame& frame) {
  auto e = embed_exact(q, frame);
  auto w = frame.weights();
  Rat out(0);
  for (int i = 0; i < 4; ++i) out += w[i] * e[i] * e[i];
  return out;
}

Rat u_exact(const Quat& q, const ArchFrame& frame) {
  auto e = embed_exact(q, frame);
  auto w = frame.weights();
  return w[1] * e[1] * e[1] + w[2] * e[2] * e[2];
}

Rat X2_exact(const Quat& q, const ArchFrame& frame) {
  auto e = embed_exact(q, frame);
  auto w = frame.weights();
  return w[0] * e[0] * e[0] + w[3] * e[3] * e[3];
}

double P_val(const Quat& q, const ArchFrame& frame) {
  if (frame.exact) return to_double(P_exact(q, frame));
  auto c = embed_coords(q, frame);
  return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
}

double u_val(const Quat& q, const ArchFrame& frame) {
  if (frame.exact) return to_double(u_exact(q, frame));
  auto c = embed_coords(q, frame);
  return c[1] * c[1] + c[2] * c[2];
}

Cplx X_val(const Quat& q, const ArchFrame& frame) {
  auto c = embed_coords(q, frame);
  return {c[3], c[0]};
}

bool in_region(const Quat& q, const ArchFrame& frame, const Region& region) {
  Rat T2 = region.T * region.T;
  Rat pinch_bound = region.delta * T2;
  if (frame.exact) {
    if (P_exact(q, frame) > T2) return false;
    Rat pinch = (region.shape == Region::Shape::Omega) ? u_exact(q, frame) : X2_exact(q, frame);
    return pinch <= pinch_bound;
  }
  auto c = embed_coords(q, frame);
  double P = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
  if (P > to_double(T2)) return false;
  double pinch = (region.shape == Region::Shape::Omega) ? c[1] * c[1] + c[2] * c[2]
                                                        : c[0] * c[0] + c[3] * c[3];
  return pinch <= to_double(pinch_bound);
}

double omega_gauge(const Quat& q, const ArchFrame& frame, const Rat& delta) {
  double P = P_val(q, frame);
  double u = u_val(q, frame);
  return std::sqrt(std::max(P, u / to_double(delta)));
}

double psi_gauge(const Quat& q, const ArchFrame& frame, const Rat& delta) {
  double P = P_val(q, frame);
  Cplx X = X_val(q, frame);
  return std::sqrt(std::max(P, std::norm(X) / to_double(delta)));
}

std::array<double, 4> sigma_z(double x, double y) {
  if (y <= 0) throw std::invalid_argument("sigma_z: need Im z > 0");
  double r = std::sqrt(y);
  return {r, x / r, 0.0, 1.0 / r};
}

namespace {

long crt(long r1, long m1, long r2, long m2) {
  // coprime moduli; result mod m1*m2
  for (long t = 0; t < m2; ++t) {
    long v = r1 + m1 * t;
    if (((v - r2) % m2 + m2) % m2 == 0) return ((v % (m1 * m2)) + m1 * m2) % (m1 * m2);
  }
  throw std::logic_error("crt: no solution");
}

}  // namespace

std::array<long, 4> tau_ell(const Int& ell, const Int& M) {
  if (M <= 0 || !is_squarefree(M) || ell <= 0 || M % ell != 0)
    throw std::invalid_argument("tau_ell: need squarefree M and ell | M");
  long l = ell.get_si();
  long m = Int(M / ell).get_si();
  long Ml = M.get_si();
  if (l == 1) return {1, 0, 0, 1};
  // target residues: a=0,b=1,c=-1,d=0 mod l; identity mod m
  long a0 = crt(0, l, 1 % m, m);
  long b0 = crt(1, l, 0, m);
  long c0 = crt((-1 % l + l) % l, l, 0, m);
  long d0 = crt(0, l, 1 % m, m);
  // pick the representative with the smallest entries so that downstream
  // Mobius images keep moderate height
  std::array<long, 4> best{};
  long best_norm = -1;
  for (long i = -6; i <= 6; ++i)
    for (long k = -6; k <= 6; ++k) {
      long a = a0 + i * Ml;
      long c = c0 + k * Ml;
      if (c == 0) continue;
      for (long j = -6; j <= 6; ++j) {
        long d = d0 + j * Ml;
        long num = a * d - 1;
        if (num % c != 0) continue;
        long b = num / c;
        if (((b - b0) % Ml + Ml) % Ml != 0) continue;
        long norm = std::max({std::labs(a), std::labs(b), std::labs(c), std::labs(d)});
        if (best_norm < 0 || norm < best_norm) {
          best_norm = norm;
          best = {a, b, c, d};
        }
      }
    }
  if (best_norm < 0) throw std::runtime_error("tau_ell: search exhausted");
  return best;
}

Int cusp_width(const Int& ell) { return ell; }

std::vector<SiegelTile> siegel_tiles(const Int& M) {
  if (M <= 0 || !is_squarefree(M)) throw std::invalid_argument("siegel_tiles: squarefree M");
  std::vector<SiegelTile> tiles;
  for (auto& l : divisors(M)) {
    SiegelTile t;
    t.ell = l;
    t.tau = tau_ell(l, M);
    t.x_min = 0;
    t.x_max = to_double(Rat(l));
    t.y_min = std::sqrt(3.0) / 2 * to_double(ratq(l * l, M));
    tiles.push_back(t);
  }
  return tiles;
}

Cplx mobius(const std::array<long, 4>& m, Cplx z) {
  return (double(m[0]) * z + double(m[1])) / (double(m[2]) * z + double(m[3]));
}

namespace {

// (u, v) with u*a + v*b = gcd(a, b) = 1
std::pair<long, long> egcd(long a, long b) {
  long old_r = a, r = b, old_u = 1, u = 0, old_v = 0, v = 1;
  while (r != 0) {
    long q = old_r / r;
    std::swap(old_r -= q * r, r);
    std::swap(old_u -= q * u, u);
    std::swap(old_v -= q * v, v);
  }
  if (old_r < 0) { old_u = -old_u; old_v = -old_v; }
  return {old_u, old_v};
}

struct OrbitMax {
  double H = 0;
  Cplx point{0, 0};
};

// max Im over the Gamma_0(N)-orbit of z0, with the attaining point
OrbitMax gamma0_im_max(Cplx z0, long N) {
  OrbitMax best;
  best.H = z0.imag();
  best.point = z0;
  double y = z0.imag(), x = z0.real();
  long Cmax = (long)std::floor(1.0 / (N * std::sqrt(y * best.H))) + 1;
  for (long Cc = 1; Cc <= Cmax; ++Cc) {
    long c = N * Cc;
    if (1.0 / (double(c) * c * y) <= best.H) break;
    long d_center = std::lround(-c * x);
    for (long d = d_center - 2; d <= d_center + 2; ++d) {
      if (std::gcd(c, d) != 1) continue;
      Cplx den = double(c) * z0 + double(d);
      double im = y / std::norm(den);
      if (im > best.H) {
        best.H = im;
        // complete (c,d) to [[a,b],[c,d]] in SL2(Z): a*d - b*c = 1
        auto [u, v] = egcd(d, c);  // u*d + v*c = 1
        best.point = (double(u) * z0 + double(-v)) / den;
      }
    }
  }
  // translate into the standard strip
  best.point -= std::floor(best.point.real() + 0.5);
  return best;
}

OrbitMax al_orbit_max(Cplx z, const Int& N) {
  if (z.imag() <= 0) throw std::invalid_argument("height_H: need Im z > 0");
  if (N <= 0 || !is_squarefree(N)) throw std::invalid_argument("height_H: squarefree N");
  OrbitMax best;
  for (auto& l : divisors(N)) {
    // Atkin-Lehner representative: z -> tau_ell(ell * z)
    Cplx zl = mobius(tau_ell(l, N), double(l.get_si()) * z);
    OrbitMax m = gamma0_im_max(zl, N.get_si());
    if (m.H > best.H) best = m;
  }
  return best;
}

}  // namespace

double height_H(Cplx z, const Int& N) { return al_orbit_max(z, N).H; }

Cplx reduce_to_AL_max(Cplx z, const Int& N) { return al_orbit_max(z, N).point; }

}  // namespace qc
