#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace qc {

namespace {

double dbl(const Rat& r) { return to_double(r); }

Int lcm_denominators(const std::vector<Rat>& vals) {
  Int l = 1;
  for (auto& v : vals) {
    Int g;
    mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    l = g;
  }
  return l;
}

bool is_zero_vec(const IVec& c) {
  return std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
}

}  // namespace

void validate(const CountExperiment& exp) {
  if (exp.ell <= 0 || (exp.d_B * exp.N) % exp.ell != 0)
    throw std::invalid_argument("experiment: ell must divide d_B N");
  if (exp.delta <= 0 || exp.delta > 1)
    throw std::invalid_argument("experiment: delta must lie in (0,1]");
  if (exp.T <= 0) throw std::invalid_argument("experiment: T must be positive");
  if (exp.n && !is_integer(*exp.n * Rat(exp.ell)))
    throw std::invalid_argument("experiment: n must lie in (1/ell) Z");
  if (exp.shape == Region::Shape::Psi && exp.d_B == 1)
    throw std::invalid_argument("Psi region is only available for non-split algebras");
}

Lattice make_order(const Int& d_B, const Int& N) {
  if (d_B == 1) return eichler_order_split(N);
  return eichler_order(builtin_maximal_order(d_B), N);
}

Lattice experiment_lattice(const CountExperiment& exp) {
  validate(exp);
  Lattice R = make_order(exp.d_B, exp.N);
  if (!(exp.frame.alg == R.alg))
    throw std::invalid_argument("experiment: frame algebra does not match the order's algebra");
  return traceless_sublattice(partial_dual(R, exp.ell));
}

QMat form_gram(const Lattice& L, const ArchFrame& frame, const std::array<int, 4>& mask) {
  if (!frame.exact) throw std::invalid_argument("form_gram: exact frame required");
  size_t r = L.rank();
  std::vector<std::array<Rat, 4>> e;
  for (size_t i = 0; i < r; ++i)
    e.push_back(embed_exact(quat_from_row(L.alg, L.basis[i]), frame));
  auto w = frame.weights();
  QMat G(r, QVec(r, Rat(0)));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i; j < r; ++j) {
      Rat s(0);
      for (int t = 0; t < 4; ++t)
        if (mask[t]) s += w[t] * e[i][t] * e[j][t];
      G[i][j] = s;
      G[j][i] = s;
    }
  return G;
}

Gauge experiment_gauge(const CountExperiment& exp) {
  Lattice L = experiment_lattice(exp);
  QMat P = form_gram(L, exp.frame, {1, 1, 1, 1});
  std::array<int, 4> pinch = (exp.shape == Region::Shape::Omega)
                                 ? std::array<int, 4>{0, 1, 1, 0}
                                 : std::array<int, 4>{1, 0, 0, 1};
  return Gauge{P, form_gram(L, exp.frame, pinch), exp.delta};
}

long count_region(const CountExperiment& exp) {
  return (long)enumerate_gauge(experiment_gauge(exp), exp.T).size();
}

long count_region_star(const CountExperiment& exp) {
  long c = count_region(exp);
  return c > 0 ? c - 1 : 0;  // the origin always lies in the region
}

std::vector<std::pair<Rat, long>> det_histogram(const CountExperiment& exp) {
  Lattice L = experiment_lattice(exp);
  auto pts = enumerate_gauge(experiment_gauge(exp), exp.T);
  std::map<Rat, long> h;
  for (auto& c : pts) {
    if (is_zero_vec(c)) continue;
    h[reduced_norm(lattice_vector(L, c))]++;
  }
  return {h.begin(), h.end()};
}

long type2_count(const CountExperiment& exp) {
  if (!exp.n) throw std::invalid_argument("type2_count: n required");
  Lattice L = experiment_lattice(exp);
  auto pts = enumerate_gauge(experiment_gauge(exp), exp.T);
  long cnt = 0;
  for (auto& c : pts) {
    if (is_zero_vec(c)) continue;
    if (reduced_norm(lattice_vector(L, c)) == *exp.n) ++cnt;
  }
  return cnt;
}

double height_of_frame(const ArchFrame& frame, const Int& N) {
  if (frame.kind != ArchFrame::Kind::Split) return 1.0;
  return height_H(Cplx(frame.fx, frame.fy), N);
}

double type1_bound(const CountExperiment& exp) {
  validate(exp);
  double l = dbl(Rat(exp.ell)), M = dbl(Rat(exp.d_B * exp.N));
  double d = dbl(exp.delta), T = dbl(exp.T);
  bool split = (exp.d_B == 1);
  if (exp.shape == Region::Shape::Omega) {
    double H = split ? height_of_frame(exp.frame, exp.N) : 0.0;
    double c1 = std::sqrt(l), c2 = std::pow(l, 1.5) * std::sqrt(d) / std::sqrt(M);
    if (split) {
      c1 += l * std::sqrt(d) * H;
      c2 += l * d * H;
    }
    return 1 + c1 * T + c2 * T * T + l * l * d / M * T * T * T;
  }
  // Psi, non-split only (validated)
  return 1 + std::sqrt(l) * T + std::pow(l, 1.5) / std::sqrt(M) * T * T +
         l * l * std::sqrt(d) / M * T * T * T;
}

double type2_bound(const CountExperiment& exp) {
  validate(exp);
  double l = dbl(Rat(exp.ell)), M = dbl(Rat(exp.d_B * exp.N));
  double d = dbl(exp.delta), T = dbl(exp.T);
  double b = 1 + l * l / M * d * T * T;
  if (exp.d_B == 1) b += l * std::sqrt(d) * height_of_frame(exp.frame, exp.N) * T;
  return b;
}

double typeII_refined_bound(const CountExperiment& exp) {
  validate(exp);
  if (!exp.n) throw std::invalid_argument("typeII_refined_bound: n required");
  if (*exp.n == 0) return type2_bound(exp);
  double l = dbl(Rat(exp.ell)), M = dbl(Rat(exp.d_B * exp.N));
  double d = dbl(exp.delta), T = dbl(exp.T);
  double tau = dbl(Rat(divisor_count(exp.d_B * exp.N)));
  double nn = std::abs(dbl(*exp.n));
  double inner = std::min(std::sqrt(d) * T * T, d * T * T * T * T / nn);
  return 1 + tau * (1 + l * l / M * inner);
}

double first_min_threshold(const CountExperiment& exp) {
  validate(exp);
  double l = dbl(Rat(exp.ell));
  if (exp.d_B == 1 && exp.shape == Region::Shape::Omega) {
    double H = height_of_frame(exp.frame, exp.N);
    return std::min(1.0 / std::sqrt(l), 1.0 / (l * std::sqrt(dbl(exp.delta)) * H));
  }
  return 1.0 / std::sqrt(l);
}

namespace {

BoundReport fill_report(const CountExperiment& exp, long observed, double bound) {
  BoundReport r;
  r.observed = observed;
  r.bound_value = bound;
  r.ratio = bound > 0 ? observed / bound : 0;
  r.first_minimum = successive_minima(experiment_gauge(exp)).minima[0];
  r.threshold = first_min_threshold(exp);
  r.H = height_of_frame(exp.frame, exp.N);
  return r;
}

}  // namespace

BoundReport type1_report(const CountExperiment& exp) {
  return fill_report(exp, count_region_star(exp), type1_bound(exp));
}

BoundReport type2_report(const CountExperiment& exp) {
  return fill_report(exp, type2_count(exp), type2_bound(exp));
}

bool typeII_split_square_flag(const CountExperiment& exp) {
  if (exp.d_B != 1) throw std::invalid_argument("typeII_split_square_flag: split algebras only");
  if (!exp.n) throw std::invalid_argument("typeII_split_square_flag: n required");
  return is_rational_square(-*exp.n);
}

long binary_rep_count(const QMat& gram_q, const QMat& gram_Q, const Rat& n, double X) {
  if (gram_q.size() != 2 || gram_Q.size() != 2)
    throw std::invalid_argument("binary_rep_count: rank 2 required");
  Rat det_q = gram_q[0][0] * gram_q[1][1] - gram_q[0][1] * gram_q[1][0];
  if (det_q == 0) throw std::domain_error("binary_rep_count: q degenerate");
  // relative eigenvalues of Q^{-1} q must have modulus <= 1 (|q| <= Q)
  double q00 = dbl(gram_q[0][0]), q01 = dbl(gram_q[0][1]), q11 = dbl(gram_q[1][1]);
  double Q00 = dbl(gram_Q[0][0]), Q01 = dbl(gram_Q[0][1]), Q11 = dbl(gram_Q[1][1]);
  double dQ = Q00 * Q11 - Q01 * Q01;
  if (dQ <= 0) throw std::invalid_argument("binary_rep_count: Q not positive-definite");
  double m00 = (Q11 * q00 - Q01 * q01) / dQ, m01 = (Q11 * q01 - Q01 * q11) / dQ;
  double m10 = (Q00 * q01 - Q01 * q00) / dQ, m11 = (Q00 * q11 - Q01 * q01) / dQ;
  double tr = m00 + m11, dt = m00 * m11 - m01 * m10;
  double disc = std::max(tr * tr - 4 * dt, 0.0);
  double lam_max = std::max(std::abs((tr + std::sqrt(disc)) / 2),
                            std::abs((tr - std::sqrt(disc)) / 2));
  if (lam_max > 1 + 1e-9) throw std::invalid_argument("binary_rep_count: |q| <= Q fails");
  long cnt = 0;
  for (auto& c : enumerate_ellipsoid(gram_Q, Rat(X) * Rat(X)))
    if (quad_value(gram_q, c) == n) ++cnt;
  return cnt;
}

CommutatorReport commutator_congruence(const Lattice& L, const Rat& norm_modulus,
                                       const Lattice* container, long radius) {
  size_t r = L.rank();
  std::vector<Quat> basis;
  for (size_t i = 0; i < r; ++i) basis.push_back(quat_from_row(L.alg, L.basis[i]));
  // commutators of basis pairs: [x,y] = sum_{i<j} (x_i y_j - x_j y_i) C_{ij}
  std::vector<Quat> C;
  std::vector<std::pair<size_t, size_t>> idx;
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j) {
      C.push_back(commutator(basis[i], basis[j]));
      idx.push_back({i, j});
    }
  size_t E = C.size();
  // q(sum m_e C_e) = (1/2) sum_{e,f} m_e m_f <C_e, C_f>; scale to integers
  QMat bil(E, QVec(E, Rat(0)));
  std::vector<Rat> flat;
  for (size_t e = 0; e < E; ++e)
    for (size_t f = 0; f <= e; ++f) {
      bil[e][f] = bilinear(C[e], C[f]);
      bil[f][e] = bil[e][f];
      flat.push_back(bil[e][f]);
    }
  Int Dq = lcm_denominators(flat);
  std::vector<std::vector<Int>> IB(E, std::vector<Int>(E));
  for (size_t e = 0; e < E; ++e)
    for (size_t f = 0; f < E; ++f) IB[e][f] = Rat(bil[e][f] * Dq).get_num();
  // q = S / (2 Dq) with S integral; q / mod integral <=> S * md % (2 Dq mp) == 0
  Int mp = norm_modulus.get_num(), md = norm_modulus.get_den();
  Int qmod = 2 * Dq * mp;
  // container coordinates of each C_e (rank-4 container)
  std::vector<std::vector<Int>> IC;
  Int Dc = 1;
  if (container) {
    if (container->rank() != 4)
      throw std::invalid_argument("commutator_congruence: container must have rank 4");
    QMat Binv = qmat_inverse(container->basis);
    std::vector<QVec> coords(E, QVec(4, Rat(0)));
    std::vector<Rat> cflat;
    for (size_t e = 0; e < E; ++e) {
      QVec row = row_from_quat(C[e]);
      for (int t = 0; t < 4; ++t) {
        Rat s(0);
        for (int u = 0; u < 4; ++u) s += row[u] * Binv[u][t];
        coords[e][t] = s;
        cflat.push_back(s);
      }
    }
    Dc = lcm_denominators(cflat);
    IC.assign(E, std::vector<Int>(4));
    for (size_t e = 0; e < E; ++e)
      for (int t = 0; t < 4; ++t) IC[e][t] = Rat(coords[e][t] * Dc).get_num();
  }
  // all coefficient vectors in the box
  std::vector<std::vector<long>> box;
  {
    std::vector<long> cur(r, -radius);
    while (true) {
      box.push_back(cur);
      size_t k = 0;
      while (k < r && cur[k] == radius) cur[k++] = -radius;
      if (k == r) break;
      ++cur[k];
    }
  }
  CommutatorReport rep;
  std::vector<Int> m(E), acc(4);
  Int S, t1;
  for (size_t a = 0; a < box.size(); ++a) {
    for (size_t b = a; b < box.size(); ++b) {
      ++rep.pairs;
      const auto& x = box[a];
      const auto& y = box[b];
      bool all_zero = true;
      for (size_t e = 0; e < E; ++e) {
        m[e] = (long)x[idx[e].first] * y[idx[e].second] -
               (long)x[idx[e].second] * y[idx[e].first];
        if (m[e] != 0) all_zero = false;
      }
      if (all_zero) continue;
      S = 0;
      for (size_t e = 0; e < E; ++e) {
        if (m[e] == 0) continue;
        S += IB[e][e] * m[e] * m[e];
        for (size_t f = e + 1; f < E; ++f)
          if (m[f] != 0) S += 2 * IB[e][f] * m[e] * m[f];
      }
      bool ok = true;
      std::string why;
      t1 = S * md;
      if (t1 % qmod != 0) {
        ok = false;
        why = "q([x,y]) not divisible by the required modulus";
      }
      if (ok && container) {
        for (int t = 0; t < 4 && ok; ++t) {
          acc[t] = 0;
          for (size_t e = 0; e < E; ++e)
            if (m[e] != 0) acc[t] += m[e] * IC[e][t];
          if (acc[t] % Dc != 0) {
            ok = false;
            why = "[x,y] escapes the containment lattice";
          }
        }
      }
      if (!ok) {
        rep.pass = false;
        std::ostringstream os;
        os << why << " at coefficient pair (";
        for (size_t i = 0; i < r; ++i) os << x[i] << (i + 1 < r ? "," : ") x (");
        for (size_t i = 0; i < r; ++i) os << y[i] << (i + 1 < r ? "," : ")");
        rep.detail = os.str();
        return rep;
      }
    }
  }
  return rep;
}

double commutator_arch_ratio(const Lattice& L, const ArchFrame& frame, const Rat& delta,
                             const Rat& T, size_t max_pairs, uint64_t seed) {
  QMat P = form_gram(L, frame, {1, 1, 1, 1});
  QMat U = form_gram(L, frame, {0, 1, 1, 0});
  auto pts = enumerate_gauge(Gauge{P, U, delta}, T);
  std::vector<Quat> q;
  for (auto& c : pts) q.push_back(lattice_vector(L, c));
  double denom = dbl(delta * T * T * T * T);
  double best = 0;
  auto eval = [&](size_t i, size_t j) {
    Quat comm = commutator(q[i], q[j]);
    best = std::max(best, std::abs(dbl(reduced_norm(comm))) / denom);
    best = std::max(best, P_val(comm, frame) / denom);
  };
  size_t n = q.size();
  if (n * n <= max_pairs) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) eval(i, j);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    for (size_t k = 0; k < max_pairs; ++k) eval(pick(rng), pick(rng));
  }
  return best;
}

bool norm_decomposition_check(const Quat& gamma) {
  Rat tr = reduced_trace(gamma);
  Quat half(gamma.alg, tr / 2, 0, 0, 0);
  return reduced_norm(gamma) == tr * tr / 4 + reduced_norm(gamma - half);
}

namespace {

// determinant histogram of region points of L; include_zero controls whether
// the origin contributes to the det = 0 fiber
std::map<Rat, long> region_det_histogram(const Lattice& L, const ArchFrame& frame,
                                         const Region& region, bool include_zero, long cap) {
  std::array<int, 4> pinch = (region.shape == Region::Shape::Omega)
                                 ? std::array<int, 4>{0, 1, 1, 0}
                                 : std::array<int, 4>{1, 0, 0, 1};
  Gauge g{form_gram(L, frame, {1, 1, 1, 1}), form_gram(L, frame, pinch), region.delta};
  auto pts = enumerate_gauge(g, region.T);
  if ((long)pts.size() > cap)
    throw std::runtime_error("pair enumeration cap exceeded: " + std::to_string(pts.size()) +
                             " region points");
  std::map<Rat, long> h;
  for (auto& c : pts) {
    if (!include_zero && is_zero_vec(c)) continue;
    h[reduced_norm(lattice_vector(L, c))]++;
  }
  return h;
}

long sum_sq(const std::map<Rat, long>& h) {
  long s = 0;
  for (auto& [d, m] : h) s += m * m;
  return s;
}

}  // namespace

long pair_count_equal_det(const Lattice& L, const ArchFrame& frame, const Region& region,
                          long cap) {
  return sum_sq(region_det_histogram(L, frame, region, false, cap));
}

SplittingReport splitting_inequality_checks(const CountExperiment& exp, long cap) {
  validate(exp);
  Lattice Rl = partial_dual(make_order(exp.d_B, exp.N), exp.ell);
  Lattice R0 = traceless_sublattice(Rl);
  SplittingReport rep;
  // inclusion (lattice splitting): tr(gamma) in Z, 2 gamma^0 in R(ell)^0
  {
    std::vector<long> cur(4, -2);
    while (true) {
      IVec c(4);
      for (int i = 0; i < 4; ++i) c[i] = cur[i];
      Quat gamma = lattice_vector(Rl, c);
      Rat tr = reduced_trace(gamma);
      Quat g0 = gamma - Quat(gamma.alg, tr / 2, 0, 0, 0);
      if (!is_integer(tr) || !lattice_member(R0, Rat(2) * g0)) {
        rep.inclusion_ok = false;
        break;
      }
      size_t k = 0;
      while (k < 4 && cur[k] == 2) cur[k++] = -2;
      if (k == 4) break;
      ++cur[k];
    }
  }
  Region star{exp.shape, exp.delta, exp.T};
  Region twoT{exp.shape, exp.delta, Rat(2) * exp.T};
  rep.lhs_pairs = pair_count_equal_det(Rl, exp.frame, star, cap);
  auto h0 = region_det_histogram(R0, exp.frame, twoT, true, cap);
  long total = 0, max_fiber = 0;
  for (auto& [d, m] : h0) {
    total += m;
    max_fiber = std::max(max_fiber, m);
  }
  rep.diag_pairs = sum_sq(h0);
  double coef = (exp.shape == Region::Shape::Omega)
                    ? dbl(exp.T)
                    : std::sqrt(dbl(exp.delta)) * dbl(exp.T);
  rep.rhs = double(total) * double(total) + coef * rep.diag_pairs;
  rep.ratio = rep.rhs > 0 ? rep.lhs_pairs / rep.rhs : 0;
  if (exp.shape == Region::Shape::Omega) {
    rep.fiber_bound = total * max_fiber;
  } else {
    // fiber taken over the larger set Omega(1, 2T)
    auto h1 = region_det_histogram(R0, exp.frame, Region{Region::Shape::Omega, Rat(1), twoT.T},
                                   true, cap);
    long mf = 0;
    for (auto& [d, m] : h1) mf = std::max(mf, m);
    rep.fiber_bound = total * mf;
  }
  rep.fiber_ok = rep.diag_pairs <= rep.fiber_bound;
  return rep;
}

namespace {

// eigenvalues of a small symmetric matrix by cyclic Jacobi rotations
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> A) {
  size_t n = A.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
    if (off < 1e-28) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (std::abs(A[p][q]) < 1e-18) continue;
        double theta = (A[q][q] - A[p][p]) / (2 * A[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (size_t i = 0; i < n; ++i) ev[i] = A[i][i];
  return ev;
}

// content of a lattice-with-form from its bilinear Gram (gcd of represented
// values): gcd({G_ii / 2} U {G_ij, i<j})
Rat bilinear_content(const QMat& G) {
  Rat c(0);
  size_t n = G.size();
  for (size_t i = 0; i < n; ++i) {
    c = gcd_rat(c, G[i][i] / 2);
    for (size_t j = i + 1; j < n; ++j) c = gcd_rat(c, G[i][j]);
  }
  return c;
}

}  // namespace

Prop8Report prop8_checks(const QMat& gram_q, const QMat& gram_Q,
                         const std::vector<double>& X_sweep) {
  size_t n = gram_q.size();
  if (n != 3 || gram_Q.size() != 3) throw std::invalid_argument("prop8_checks: rank 3 required");
  Prop8Report rep;
  MinimaReport mins = successive_minima(Gauge{gram_Q, {}, Rat(1)});
  for (int i = 0; i < 3; ++i) rep.lambda[i] = mins.minima[i];
  // anisotropy scan: no nonzero q-isotropic vector within the working radius
  double scan = 2 * mins.minima[2];
  for (double X : X_sweep) scan = std::max(scan, X);
  for (auto& c : enumerate_ellipsoid(gram_Q, Rat(scan) * Rat(scan)))
    if (!is_zero_vec(c) && quad_value(gram_q, c) == 0)
      throw std::domain_error("prop8_checks: isotropic vector found; Prop 8 path refused");
  // pair invariants: bilinear Grams are twice the quad_value Grams
  QMat bq(3, QVec(3)), bQ = gram_Q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) bq[i][j] = 2 * gram_q[i][j];
  Rat C_L = bilinear_content(bq);
  Rat N_L = 1 / bilinear_content(qmat_inverse(bq));
  // relative eigenvalues of q against Q via R^{-T} q R^{-1}, Q = R^T R
  std::vector<std::vector<double>> R(3, std::vector<double>(3, 0));
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s = dbl(gram_Q[i][j]);
      for (int k = 0; k < i; ++k) s -= R[k][i] * R[k][j];
      if (i == j) {
        if (s <= 0) throw std::invalid_argument("prop8_checks: Q not positive-definite");
        R[i][i] = std::sqrt(s);
      } else {
        R[i][j] = s / R[i][i];
      }
    }
  // M = R^{-T} q R^{-1}: solve R^T Y = q (rows), then M R = Y^T rows again
  auto fwd = [&](std::vector<double> v) {  // solve R^T w = v
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < i; ++k) v[i] -= R[k][i] * v[k];
      v[i] /= R[i][i];
    }
    return v;
  };
  std::vector<std::vector<double>> Y(3, std::vector<double>(3));
  for (int j = 0; j < 3; ++j) {
    std::vector<double> col = {dbl(gram_q[0][j]), dbl(gram_q[1][j]), dbl(gram_q[2][j])};
    col = fwd(col);
    for (int i = 0; i < 3; ++i) Y[i][j] = col[i];
  }
  std::vector<std::vector<double>> M(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i) {
    std::vector<double> row = {Y[i][0], Y[i][1], Y[i][2]};
    row = fwd(row);
    M[i] = row;
  }
  auto ev = jacobi_eigenvalues(M);
  double emax = 0, emin = 1e300;
  for (double e : ev) {
    emax = std::max(emax, std::abs(e));
    emin = std::min(emin, std::abs(e));
  }
  if (emin <= 0) throw std::domain_error("prop8_checks: q degenerate relative to Q");
  double C_Q = 1 / emax, N_Q = 1 / emin;
  rep.C = dbl(C_L) * C_Q;
  rep.level = dbl(N_L) * N_Q;
  rep.disc = std::abs(dbl(qmat_det(gram_Q)));
  rep.min_ok = rep.lambda[0] * rep.lambda[0] >= rep.C * (1 - 1e-9);
  rep.prod_ratio = rep.lambda[0] * rep.lambda[1] * rep.lambda[2] / std::sqrt(rep.disc);
  rep.pair_ratio = rep.lambda[0] * rep.lambda[1] / std::sqrt(rep.disc / rep.level);
  for (double X : X_sweep) {
    long cnt = (long)enumerate_ellipsoid(gram_Q, Rat(X) * Rat(X)).size();
    double bound = 1 + X / std::sqrt(rep.C) + X * X / std::sqrt(rep.disc / rep.level) +
                   X * X * X / std::sqrt(rep.disc);
    rep.max_count_ratio = std::max(rep.max_count_ratio, cnt / bound);
  }
  return rep;
}

DyadicReport dyadic_typeII_reduction(const CountExperiment& exp) {
  validate(exp);
  if (exp.shape != Region::Shape::Omega)
    throw std::invalid_argument("dyadic_typeII_reduction: Omega shape required");
  if (!exp.n) throw std::invalid_argument("dyadic_typeII_reduction: n required");
  if (!exp.frame.exact)
    throw std::invalid_argument("dyadic_typeII_reduction: exact frame required");
  Lattice L = experiment_lattice(exp);
  Gauge g{form_gram(L, exp.frame, {1, 1, 1, 1}), form_gram(L, exp.frame, {0, 1, 1, 0}),
          exp.delta};
  Rat T2 = exp.T * exp.T;
  // dyadic scales delta_j = 2^{-j} >= 16 delta
  std::vector<Rat> scales;
  for (Rat dj(1); dj >= 16 * exp.delta; dj /= 2) scales.push_back(dj);
  DyadicReport rep;
  rep.piece_counts.assign(1 + scales.size(), 0);
  // enumerate up to gauge 4T: covers Omega(delta,T) and Omega(1/16, 4 sqrt(delta) T)
  for (auto& c : enumerate_gauge(g, Rat(4) * exp.T)) {
    if (is_zero_vec(c)) continue;
    Quat gamma = lattice_vector(L, c);
    if (reduced_norm(gamma) != *exp.n) continue;
    Rat P = P_exact(gamma, exp.frame), u = u_exact(gamma, exp.frame);
    bool direct = (P <= T2 && u <= exp.delta * T2);
    if (direct) ++rep.direct;
    bool covered = false;
    if (P <= 16 * exp.delta * T2 && u <= exp.delta * T2) {
      ++rep.piece_counts[0];
      covered = true;
    }
    for (size_t j = 0; j < scales.size(); ++j)
      if (P > scales[j] * T2 / 2 && P <= scales[j] * T2 && u <= exp.delta * T2) {
        ++rep.piece_counts[1 + j];
        covered = true;
      }
    if (direct && !covered) rep.cover_ok = false;
  }
  long sum = 0;
  for (long p : rep.piece_counts) sum += p;
  rep.sum_ok = sum >= rep.direct;
  return rep;
}

}  // namespace qc
