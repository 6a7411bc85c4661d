#include "qalg.hpp"

#include <algorithm>

namespace qc {

Rat ratq(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("ratq: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat ratq(long num, long den) { return ratq(Int(num), Int(den)); }

double to_double(const Rat& r) { return r.get_d(); }

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return ratq(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string::npos) return ratq(Int(s), Int(1));
  // decimal literal: digits after the dot give a power-of-ten denominator
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  Int den = 1;
  for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return ratq(Int(digits, 10), den);  // explicit base: no octal from leading zeros
}

Rat gcd_rat(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Int n = gcd(a.get_num(), b.get_num());
  Int d = lcm(a.get_den(), b.get_den());
  return ratq(n, d);
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

bool is_rational_square(const Rat& r) {
  if (r < 0) return false;
  return mpz_perfect_square_p(r.get_num().get_mpz_t()) &&
         mpz_perfect_square_p(r.get_den().get_mpz_t());
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  n = abs(n);
  if (n <= 1) return out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.push_back({p, e});
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_squarefree(const Int& n) {
  for (auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return n != 0;
}

Int divisor_count(const Int& n) {
  Int t = 1;
  for (auto& [p, e] : factorize(n)) t *= (e + 1);
  return t;
}

std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out{1};
  for (auto& [p, e] : factorize(n)) {
    size_t m = out.size();
    Int pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t t = 0; t < m; ++t) out.push_back(out[t] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int moebius(const Int& n) {
  int sign = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

namespace {

// Legendre symbol (u|p) for u coprime to odd prime p
int legendre(const Int& u, const Int& p) {
  Int r;
  mpz_mod(r.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

// write r = p^val * (n/d) with n, d coprime to p
void split_at_p(const Rat& r, const Int& p, long& val, Int& unit_num, Int& unit_den) {
  val = 0;
  unit_num = r.get_num();
  unit_den = r.get_den();
  while (unit_num % p == 0) { unit_num /= p; ++val; }
  while (unit_den % p == 0) { unit_den /= p; --val; }
}

int eps2(const Int& u) {  // (u-1)/2 mod 2, u odd
  Int m;
  mpz_mod_ui(m.get_mpz_t(), u.get_mpz_t(), 4);
  return m == 3 ? 1 : 0;
}

int omega2(const Int& u) {  // (u^2-1)/8 mod 2, u odd
  Int m;
  mpz_mod_ui(m.get_mpz_t(), u.get_mpz_t(), 8);
  return (m == 3 || m == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
  if (p == 0)  // infinite place
    return (a < 0 && b < 0) ? -1 : 1;

  long alpha, beta;
  Int un, ud, vn, vd;
  split_at_p(a, p, alpha, un, ud);
  split_at_p(b, p, beta, vn, vd);
  alpha &= 1;
  beta &= 1;
  Int u = un * ud;  // same square class as the p-unit part of a
  Int v = vn * vd;

  if (p == 2) {
    int exp = eps2(u) * eps2(v) + alpha * omega2(v) + beta * omega2(u);
    return (exp & 1) ? -1 : 1;
  }
  int exp = alpha * beta * eps2(p);
  int s = (exp & 1) ? -1 : 1;
  if (beta) s *= legendre(u, p);
  if (alpha) s *= legendre(v, p);
  return s;
}

Int discriminant(const AlgebraSpec& spec) {
  std::vector<Int> candidates{2};
  for (const Rat& r : {spec.a, spec.b}) {
    for (auto& [p, e] : factorize(r.get_num())) candidates.push_back(p);
    for (auto& [p, e] : factorize(r.get_den())) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  Int d = 1;
  for (const Int& p : candidates)
    if (hilbert_symbol(spec.a, spec.b, p) == -1) d *= p;
  return d;
}

AlgebraSpec::AlgebraSpec(const Rat& a_, const Rat& b_) : a(a_), b(b_) {
  if (a == 0 || b == 0) throw std::invalid_argument("AlgebraSpec: zero structure constant");
  d_B = 1;  // discriminant() needs a constructed spec; fill in below
  d_B = discriminant(*this);
}

static void check_same(const Quat& p, const Quat& q) {
  if (!(p.alg == q.alg)) throw std::invalid_argument("Quat: mixed algebras");
}

Quat operator+(const Quat& p, const Quat& q) {
  check_same(p, q);
  return {p.alg, p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
}

Quat operator-(const Quat& p, const Quat& q) {
  check_same(p, q);
  return {p.alg, p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
}

Quat operator-(const Quat& q) { return {q.alg, -q.w, -q.x, -q.y, -q.z}; }

Quat operator*(const Rat& c, const Quat& q) {
  return {q.alg, c * q.w, c * q.x, c * q.y, c * q.z};
}

Quat mul(const Quat& p, const Quat& q) {
  check_same(p, q);
  const Rat& a = p.alg.a;
  const Rat& b = p.alg.b;
  // multiplication table: i^2=a, j^2=b, k=ij, ji=-k, ik=aj, ki=-aj, jk=-bi, kj=bi
  return {p.alg,
          p.w * q.w + a * p.x * q.x + b * p.y * q.y - a * b * p.z * q.z,
          p.w * q.x + p.x * q.w - b * p.y * q.z + b * p.z * q.y,
          p.w * q.y + p.y * q.w + a * p.x * q.z - a * p.z * q.x,
          p.w * q.z + p.z * q.w + p.x * q.y - p.y * q.x};
}

Quat conj(const Quat& q) { return {q.alg, q.w, -q.x, -q.y, -q.z}; }

Rat reduced_trace(const Quat& q) { return 2 * q.w; }

Rat reduced_norm(const Quat& q) {
  const Rat& a = q.alg.a;
  const Rat& b = q.alg.b;
  return q.w * q.w - a * q.x * q.x - b * q.y * q.y + a * b * q.z * q.z;
}

Rat bilinear(const Quat& p, const Quat& q) {
  check_same(p, q);
  const Rat& a = p.alg.a;
  const Rat& b = p.alg.b;
  return 2 * (p.w * q.w - a * p.x * q.x - b * p.y * q.y + a * b * p.z * q.z);
}

Quat commutator(const Quat& p, const Quat& q) { return mul(p, q) - mul(q, p); }

Quat inverse(const Quat& q) {
  Rat n = reduced_norm(q);
  if (n == 0) throw std::invalid_argument("inverse: norm-zero element");
  Rat c = 1 / n;
  Quat qb = conj(q);
  return c * qb;
}

AlgebraSpec split_algebra() { return AlgebraSpec(Rat(1), Rat(1)); }

Quat quat_from_matrix(const Rat& A, const Rat& B, const Rat& C, const Rat& D) {
  Rat half = ratq(1, 2);
  return {split_algebra(), half * (A + D), half * (A - D), half * (B + C), half * (B - C)};
}

void quat_to_matrix(const Quat& q, Rat& A, Rat& B, Rat& C, Rat& D) {
  A = q.w + q.x;
  B = q.y + q.z;
  C = q.y - q.z;
  D = q.w - q.x;
}

}  // namespace qc
