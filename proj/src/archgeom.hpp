#pragma once

#include <array>
#include <complex>

#include "lattice.hpp"

namespace qc {

using Cplx = std::complex<double>;

// Archimedean identification of B_infty with C + Cj giving coordinates
// [a,b,c]+d.  For a split algebra the frame is sigma_z-conjugation; for a
// definite algebra it is conjugation (rotation) by an algebra element g.
//
// The frame is "exact" when its data is rational: split frames store z with
// rational x and rational y^2, under which every embedded coordinate is a
// rational multiple of a fixed square root (see weights()), so that P, u and
// |X|^2 are exact rationals.
struct ArchFrame {
  enum class Kind { Split, Definite };
  Kind kind;
  AlgebraSpec alg;
  bool exact = false;
  Rat qx, qs;       // split, exact: z = qx + i*sqrt(qs)
  double fx = 0, fy = 1;  // split: floating z (always set)
  Quat g;           // definite: rational conjugator, nonzero norm

  static ArchFrame split_exact(const Rat& x, const Rat& y_squared);
  static ArchFrame split_approx(double x, double y);
  static ArchFrame definite(const Quat& g);
  static ArchFrame identity(const AlgebraSpec& alg);

  // weights w such that the coordinates are (e1 sqrt(w1), ..., e4 sqrt(w4))
  // with e rational (exact frames only)
  std::array<Rat, 4> weights() const;
};

// scaled rational coordinates e of the conjugated element; actual coordinates
// (a,b,c,d) = (e1 sqrt(w1), e2 sqrt(w2), e3 sqrt(w3), e4 sqrt(w4))
std::array<Rat, 4> embed_exact(const Quat& q, const ArchFrame& frame);
std::array<double, 4> embed_coords(const Quat& q, const ArchFrame& frame);

Rat P_exact(const Quat& q, const ArchFrame& frame);
Rat u_exact(const Quat& q, const ArchFrame& frame);
Rat X2_exact(const Quat& q, const ArchFrame& frame);  // |X|^2 = a^2 + d^2

double P_val(const Quat& q, const ArchFrame& frame);
double u_val(const Quat& q, const ArchFrame& frame);
Cplx X_val(const Quat& q, const ArchFrame& frame);  // X = d + i a

struct Region {
  enum class Shape { Omega, Psi };
  Shape shape;
  Rat delta;  // in (0,1]
  Rat T;      // > 0
};

bool in_region(const Quat& q, const ArchFrame& frame, const Region& region);

// gauge of Omega(delta,1) resp. Psi(delta,1): max(sqrt(P), sqrt(pinch/delta))
double omega_gauge(const Quat& q, const ArchFrame& frame, const Rat& delta);
double psi_gauge(const Quat& q, const ArchFrame& frame, const Rat& delta);

// sigma_z = [[y^1/2, x y^-1/2],[0, y^-1/2]], takes i to z
std::array<double, 4> sigma_z(double x, double y);

// integral matrix congruent to [[0,1],[-1,0]] mod ell and to I mod M/ell
std::array<long, 4> tau_ell(const Int& ell, const Int& M);

Int cusp_width(const Int& ell);

struct SiegelTile {
  Int ell;
  std::array<long, 4> tau;
  double x_min, x_max;  // [0, ell]
  double y_min;         // sqrt(3)/2 * ell^2 / M
};
std::vector<SiegelTile> siegel_tiles(const Int& M);

// H(z) = max Im over the Atkin-Lehner orbit A_0(N) z
double height_H(Cplx z, const Int& N);
Cplx reduce_to_AL_max(Cplx z, const Int& N);

Cplx mobius(const std::array<long, 4>& m, Cplx z);

}  // namespace qc
