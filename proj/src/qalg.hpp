#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

using Int = mpz_class;
using Rat = mpq_class;

// a/b as a canonical rational
Rat ratq(const Int& num, const Int& den);
Rat ratq(long num, long den = 1);

double to_double(const Rat& r);
std::string rat_str(const Rat& r);  // "p/q", or "p" when q = 1
Rat parse_rat(const std::string& s);

// gcd of rationals: gcd(nums)/lcm(dens); gcd_rat(0, x) = |x|
Rat gcd_rat(const Rat& a, const Rat& b);
bool is_integer(const Rat& r);
bool is_rational_square(const Rat& r);

// trial-division factorization, ascending primes (values are small here)
std::vector<std::pair<Int, int>> factorize(Int n);
bool is_squarefree(const Int& n);
Int divisor_count(const Int& n);
std::vector<Int> divisors(const Int& n);
int moebius(const Int& n);

// Hilbert symbol (a,b)_p over Q; p = 0 means the infinite place
int hilbert_symbol(const Rat& a, const Rat& b, const Int& p);

// The quaternion algebra B = (a,b | Q): i^2 = a, j^2 = b, ij = -ji = k.
struct AlgebraSpec {
  Rat a, b;
  Int d_B;  // reduced discriminant: product of finite ramified primes

  AlgebraSpec() : a(1), b(1), d_B(1) {}
  AlgebraSpec(const Rat& a_, const Rat& b_);

  bool is_definite() const { return a < 0 && b < 0; }
  bool is_split() const { return d_B == 1; }
  bool operator==(const AlgebraSpec& o) const { return a == o.a && b == o.b; }
};

// Element w + x i + y j + z k of B in exact rational coordinates
struct Quat {
  AlgebraSpec alg;
  Rat w, x, y, z;

  Quat() {}
  explicit Quat(const AlgebraSpec& A) : alg(A), w(0), x(0), y(0), z(0) {}
  Quat(const AlgebraSpec& A, const Rat& w_, const Rat& x_, const Rat& y_, const Rat& z_)
      : alg(A), w(w_), x(x_), y(y_), z(z_) {}

  bool operator==(const Quat& q) const {
    return w == q.w && x == q.x && y == q.y && z == q.z;
  }
  bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }
};

Quat operator+(const Quat& p, const Quat& q);
Quat operator-(const Quat& p, const Quat& q);
Quat operator-(const Quat& q);
Quat operator*(const Rat& c, const Quat& q);
Quat mul(const Quat& p, const Quat& q);
Quat conj(const Quat& q);
Rat reduced_trace(const Quat& q);
Rat reduced_norm(const Quat& q);
Rat bilinear(const Quat& p, const Quat& q);  // tr(p * conj(q))
Quat commutator(const Quat& p, const Quat& q);
Quat inverse(const Quat& q);  // requires reduced_norm != 0

// Fixed identification of the split algebra (1,1|Q) with 2x2 matrices:
//   i -> [[1,0],[0,-1]], j -> [[0,1],[1,0]], k -> [[0,1],[-1,0]]
// so that w + xi + yj + zk = [[w+x, y+z],[y-z, w-x]].
AlgebraSpec split_algebra();
Quat quat_from_matrix(const Rat& A, const Rat& B, const Rat& C, const Rat& D);
void quat_to_matrix(const Quat& q, Rat& A, Rat& B, Rat& C, Rat& D);

Int discriminant(const AlgebraSpec& spec);

}  // namespace qc
