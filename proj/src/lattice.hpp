#pragma once

#include "exactmat.hpp"

namespace qc {

// Exact-rational lattice in B, basis rows = coordinates w.r.t. 1, i, j, k,
// kept in canonical (HNF) form.
struct Lattice {
  AlgebraSpec alg;
  QMat basis;  // rank x 4

  size_t rank() const { return basis.size(); }
  bool operator==(const Lattice& o) const { return alg == o.alg && qmat_eq(basis, o.basis); }
};

struct GramInvariants {
  Rat content;       // C: gcd of the represented values q(v)
  Rat level;         // N: 1 / content(dual)
  Rat discriminant;  // Delta: |det Gram|
  QVec elementary_divisors;  // ascending divisibility chain of the Gram
};

Quat quat_from_row(const AlgebraSpec& alg, const QVec& row);
QVec row_from_quat(const Quat& q);

Lattice make_lattice(const AlgebraSpec& alg, const std::vector<Quat>& gens);
Lattice make_lattice_rows(const AlgebraSpec& alg, const QMat& rows);

Quat lattice_vector(const Lattice& L, const IVec& coeffs);
bool lattice_member(const Lattice& L, const Quat& q);

// Gram matrix of <x,y> = tr(x conj(y)) on the basis
QMat gram_matrix(const Lattice& L);
Rat reduced_discriminant(const Lattice& L);  // sqrt(|det Gram|), rank 4

Lattice lattice_sum(const Lattice& A, const Lattice& B);
Lattice lattice_scale(const Rat& c, const Lattice& L);
Lattice lattice_intersect(const Lattice& A, const Lattice& B);
Rat lattice_index(const Lattice& big, const Lattice& small);  // [big : small]

bool is_order(const Lattice& L);
bool verify_eichler(const Lattice& L);

Lattice eichler_order_split(const Int& N);
Lattice builtin_maximal_order(const Int& d_B);
Lattice eichler_order(const Lattice& maximal, const Int& N);

Lattice dual_lattice(const Lattice& L);
Lattice partial_dual(const Lattice& R, const Int& ell);
Lattice traceless_sublattice(const Lattice& L);
// Ternary lattice with local components (R_p^0)^dual (dual taken inside the
// trace-zero space) at p | ell and R_p^0 elsewhere.  Its trace-form Gram
// realizes the eq.-(9.1) divisor table in all parity cases.  It agrees with
// traceless_sublattice(partial_dual(R, ell)) away from 2; for even ell the
// two differ 2-adically (dualizing and passing to the trace kernel do not
// commute at 2).
Lattice traceless_partial_dual(const Lattice& R, const Int& ell);
Lattice conjugate_rational(const Lattice& L, const Quat& g);

GramInvariants gram_invariants(const Lattice& L);

}  // namespace qc
