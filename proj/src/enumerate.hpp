#pragma once

#include "archgeom.hpp"

namespace qc {

// A gauge on lattice coefficient vectors: primary quadratic part A (the P
// form) and optionally a pinched part B with factor delta, giving
// gauge(v) = max( sqrt(v A v), sqrt(v B v / delta) ).  With B empty the gauge
// is the plain quadratic gauge of A.
struct Gauge {
  QMat A;
  QMat B;  // empty => quadratic gauge
  Rat delta = 1;

  bool has_pinch() const { return !B.empty(); }
  size_t dim() const { return A.size(); }
};

Rat quad_value(const QMat& G, const IVec& c);
Rat gauge_sq(const Gauge& g, const IVec& c);          // gauge(v)^2, exact
double gauge_value(const Gauge& g, const IVec& c);
QMat surrogate_gram(const Gauge& g);  // A + B/delta (quadratic superset form)

// all integer vectors c with c^T G c <= bound (exact test); includes 0
std::vector<IVec> enumerate_ellipsoid(const QMat& G, const Rat& bound);

// shifted variant: (c - t)^T G (c - t) <= bound for a rational center t
std::vector<IVec> enumerate_ellipsoid_center(const QMat& G, const QVec& t, const Rat& bound);

// all c with gauge(c) <= R, via the surrogate ellipsoid then exact filtering
std::vector<IVec> enumerate_gauge(const Gauge& g, const Rat& R);

struct MinimaReport {
  std::vector<double> minima;      // lambda_1 <= ... <= lambda_n
  std::vector<Rat> minima_sq;      // exact gauge^2 values
  std::vector<IVec> witnesses;     // linearly independent attaining vectors
};

MinimaReport successive_minima(const Gauge& g);

struct ReducedBasis {
  std::vector<IVec> basis;  // unimodular change of basis
  double c_n;               // max gauge(b_i) / lambda_i achieved
};

ReducedBasis reduced_basis(const Gauge& g);

// |{gauge <= 1}| / prod(1 + 1/lambda_i)
double count_law_check(const Gauge& g);

struct BallCount2D {
  long count;
  double bound;  // 1 + R/lambda_1 + R^2/(lambda_1 lambda_2)
};

BallCount2D ball_count_2d(const QMat& G, const QVec& center, const Rat& R);

}  // namespace qc
