#include "enumerate.hpp"

#include <algorithm>
#include <cmath>

namespace qc {

Rat quad_value(const QMat& G, const IVec& c) {
  size_t n = G.size();
  Rat out(0);
  for (size_t i = 0; i < n; ++i) {
    if (c[i] == 0) continue;
    Rat ci(c[i]);
    out += G[i][i] * ci * ci;
    for (size_t j = i + 1; j < n; ++j)
      if (c[j] != 0) out += 2 * G[i][j] * ci * Rat(c[j]);
  }
  return out;
}

static Rat quad_value_center(const QMat& G, const IVec& c, const QVec& t) {
  size_t n = G.size();
  QVec d(n);
  for (size_t i = 0; i < n; ++i) d[i] = Rat(c[i]) - t[i];
  Rat out(0);
  for (size_t i = 0; i < n; ++i) {
    out += G[i][i] * d[i] * d[i];
    for (size_t j = i + 1; j < n; ++j) out += 2 * G[i][j] * d[i] * d[j];
  }
  return out;
}

Rat gauge_sq(const Gauge& g, const IVec& c) {
  Rat p = quad_value(g.A, c);
  if (!g.has_pinch()) return p;
  Rat q = quad_value(g.B, c) / g.delta;
  return std::max(p, q);
}

double gauge_value(const Gauge& g, const IVec& c) {
  return std::sqrt(to_double(gauge_sq(g, c)));
}

QMat surrogate_gram(const Gauge& g) {
  if (!g.has_pinch()) return g.A;
  size_t n = g.A.size();
  QMat S = g.A;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) S[i][j] += g.B[i][j] / g.delta;
  return S;
}

namespace {

// upper-triangular double Cholesky G = R^T R; throws if not positive-definite
std::vector<std::vector<double>> cholesky(const QMat& G) {
  size_t n = G.size();
  std::vector<std::vector<double>> R(n, std::vector<double>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      double s = to_double(G[i][j]);
      for (size_t k = 0; k < i; ++k) s -= R[k][i] * R[k][j];
      if (i == j) {
        if (s <= 0) throw std::invalid_argument("enumerate: form not positive-definite");
        R[i][i] = std::sqrt(s);
      } else {
        R[i][j] = s / R[i][i];
      }
    }
  }
  return R;
}

void enumerate_rec(const std::vector<std::vector<double>>& R, const std::vector<double>& t,
                   double rem, size_t i, std::vector<double>& partial, IVec& c,
                   const QMat& G, const QVec& tq, const Rat& bound,
                   std::vector<IVec>& out) {
  // partial[j] = sum_{k > i} R[j][k] (c[k] - t[k]) accumulated per row j
  double s = partial[i];
  double center = t[i] - s / R[i][i];
  double halfwidth = std::sqrt(std::max(rem, 0.0)) / R[i][i];
  long lo = (long)std::ceil(center - halfwidth - 1e-9) - 1;
  long hi = (long)std::floor(center + halfwidth + 1e-9) + 1;
  for (long v = lo; v <= hi; ++v) {
    c[i] = v;
    double term = R[i][i] * (v - t[i]) + s;
    double rem2 = rem - term * term;
    if (rem2 < -1e-6 * (1 + std::abs(rem))) continue;
    if (i == 0) {
      if (quad_value_center(G, c, tq) <= bound) out.push_back(c);
    } else {
      std::vector<double> p2 = partial;
      for (size_t j = 0; j < i; ++j) p2[j] += R[j][i] * (v - t[i]);
      enumerate_rec(R, t, rem2, i - 1, p2, c, G, tq, bound, out);
    }
  }
}

}  // namespace

std::vector<IVec> enumerate_ellipsoid_center(const QMat& G, const QVec& tq, const Rat& bound) {
  std::vector<IVec> out;
  if (bound < 0) return out;
  size_t n = G.size();
  auto R = cholesky(G);
  std::vector<double> t(n);
  for (size_t i = 0; i < n; ++i) t[i] = to_double(tq[i]);
  double bf = to_double(bound) * (1 + 1e-9) + 1e-12;
  IVec c(n, 0);
  std::vector<double> partial(n, 0.0);
  enumerate_rec(R, t, bf, n - 1, partial, c, G, tq, bound, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> enumerate_ellipsoid(const QMat& G, const Rat& bound) {
  return enumerate_ellipsoid_center(G, QVec(G.size(), Rat(0)), bound);
}

std::vector<IVec> enumerate_gauge(const Gauge& g, const Rat& R) {
  Rat R2 = R * R;
  Rat surrogate_bound = g.has_pinch() ? Rat(2 * R2) : R2;
  std::vector<IVec> pts = enumerate_ellipsoid(surrogate_gram(g), surrogate_bound);
  if (!g.has_pinch()) return pts;
  std::vector<IVec> out;
  for (auto& c : pts)
    if (gauge_sq(g, c) <= R2) out.push_back(c);
  return out;
}

namespace {

// rank of a set of integer vectors via rational elimination
size_t ivec_rank(const std::vector<IVec>& vs) {
  if (vs.empty()) return 0;
  QMat M;
  for (auto& v : vs) {
    QVec r;
    for (auto& x : v) r.push_back(Rat(x));
    M.push_back(r);
  }
  size_t rank = 0, n = M[0].size();
  for (size_t c = 0; c < n && rank < M.size(); ++c) {
    size_t p = rank;
    while (p < M.size() && M[p][c] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[rank]);
    for (size_t i = rank + 1; i < M.size(); ++i) {
      if (M[i][c] == 0) continue;
      Rat f = M[i][c] / M[rank][c];
      for (size_t j = c; j < n; ++j) M[i][j] -= f * M[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

MinimaReport successive_minima(const Gauge& g) {
  size_t n = g.dim();
  // initial radius: smallest gauge among the basis unit vectors
  Rat best_sq(-1);
  for (size_t i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    Rat v = gauge_sq(g, e);
    if (best_sq < 0 || v < best_sq) best_sq = v;
  }
  double R = std::sqrt(to_double(best_sq)) * (1 + 1e-12);
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<IVec> pts = enumerate_gauge(g, ratq(Int(std::ceil(R * (1 << 20))), Int(1 << 20)));
    std::vector<std::pair<Rat, IVec>> nz;
    for (auto& c : pts) {
      bool zero = std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
      if (!zero) nz.push_back({gauge_sq(g, c), c});
    }
    std::stable_sort(nz.begin(), nz.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    MinimaReport rep;
    for (auto& [val, c] : nz) {
      std::vector<IVec> trial = rep.witnesses;
      trial.push_back(c);
      if (ivec_rank(trial) > rep.witnesses.size()) {
        rep.witnesses.push_back(c);
        rep.minima_sq.push_back(val);
        rep.minima.push_back(std::sqrt(to_double(val)));
        if (rep.witnesses.size() == n) return rep;
      }
    }
    R *= 2;
  }
  throw std::runtime_error("successive_minima: radius growth exhausted (unbounded body?)");
}

ReducedBasis reduced_basis(const Gauge& g) {
  size_t n = g.dim();
  QMat S = surrogate_gram(g);
  // LLL on the Gram matrix alone, tracking the change of basis
  std::vector<IVec> U(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) U[i][i] = 1;
  auto gram = [&](size_t i, size_t j) {
    Rat s(0);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        if (U[i][a] != 0 && U[j][b] != 0) s += Rat(U[i][a]) * Rat(U[j][b]) * S[a][b];
    return s;
  };
  Rat delta_lll = ratq(99, 100);
  bool changed = true;
  int guard = 0;
  while (changed && guard++ < 10000) {
    changed = false;
    // Gram-Schmidt data
    QMat mu(n, QVec(n, 0));
    QVec Bstar(n, 0);
    for (size_t i = 0; i < n; ++i) {
      Bstar[i] = gram(i, i);
      for (size_t j = 0; j < i; ++j) {
        Rat m = gram(i, j);
        for (size_t k = 0; k < j; ++k) m -= mu[i][k] * mu[j][k] * Bstar[k];
        mu[i][j] = m / Bstar[j];
        Bstar[i] -= mu[i][j] * mu[i][j] * Bstar[j];
      }
    }
    // size reduction
    for (size_t i = 1; i < n && !changed; ++i)
      for (size_t j = i; j-- > 0;) {
        Rat m = mu[i][j];
        if (2 * abs(m) > 1) {
          Int q;  // round to nearest: floor(m + 1/2)
          Rat half = m + ratq(1, 2);
          mpz_fdiv_q(q.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
          for (size_t a = 0; a < n; ++a) U[i][a] -= q * U[j][a];
          changed = true;
          break;
        }
      }
    if (changed) continue;
    // Lovasz condition
    for (size_t i = 1; i < n; ++i) {
      if (Bstar[i] < (delta_lll - mu[i][i - 1] * mu[i][i - 1]) * Bstar[i - 1]) {
        std::swap(U[i], U[i - 1]);
        changed = true;
        break;
      }
    }
  }
  // order rows by gauge and compare against the successive minima
  std::stable_sort(U.begin(), U.end(), [&](const IVec& a, const IVec& b) {
    return gauge_sq(g, a) < gauge_sq(g, b);
  });
  MinimaReport mins = successive_minima(g);
  ReducedBasis rb;
  rb.basis = U;
  rb.c_n = 0;
  for (size_t i = 0; i < n; ++i)
    rb.c_n = std::max(rb.c_n, gauge_value(g, U[i]) / mins.minima[i]);
  return rb;
}

double count_law_check(const Gauge& g) {
  long cnt = (long)enumerate_gauge(g, Rat(1)).size();
  MinimaReport mins = successive_minima(g);
  double prod = 1;
  for (double l : mins.minima) prod *= 1 + 1 / l;
  return cnt / prod;
}

BallCount2D ball_count_2d(const QMat& G, const QVec& center, const Rat& R) {
  if (G.size() != 2) throw std::invalid_argument("ball_count_2d: rank 2 required");
  BallCount2D out;
  out.count = (long)enumerate_ellipsoid_center(G, center, R * R).size();
  MinimaReport mins = successive_minima(Gauge{G, {}, Rat(1)});
  double Rd = to_double(R);
  out.bound = 1 + Rd / mins.minima[0] + Rd * Rd / (mins.minima[0] * mins.minima[1]);
  return out;
}

}  // namespace qc
