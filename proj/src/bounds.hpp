#pragma once

#include <optional>

#include "enumerate.hpp"

namespace qc {

// One lattice-counting experiment: the traceless partial dual R(ell)^0 of an
// Eichler order of level N in the algebra of discriminant d_B, viewed through
// an archimedean frame, intersected with Omega(delta,T) or Psi(delta,T), and
// optionally sliced by a determinant value n.
struct CountExperiment {
  Int d_B{1};
  Int N{1};
  Int ell{1};
  ArchFrame frame;
  Rat delta{1};
  Rat T{1};
  Region::Shape shape = Region::Shape::Omega;
  std::optional<Rat> n;
};

struct BoundReport {
  long observed = 0;       // nonzero lattice points (star count)
  double bound_value = 0;  // paper RHS with implied constant 1
  double ratio = 0;        // observed / bound_value
  double first_minimum = 0;
  double threshold = 0;    // paper lambda_1 lower-bound expression
  double H = 0;            // height (split frames only; 1 otherwise)
};

// throws std::invalid_argument on contract violations (ell | d_B N, delta in
// (0,1], T > 0, n * ell integral, Psi only for non-split algebras)
void validate(const CountExperiment& exp);

// Eichler order of level N and discriminant d_B (split table order for
// d_B = 1, built-in maximal order otherwise)
Lattice make_order(const Int& d_B, const Int& N);

// the lattice counted by the experiment: traceless part of the partial dual
Lattice experiment_lattice(const CountExperiment& exp);

// Gram matrix of the masked coordinate form sum_t mask[t] * coord_t^2 on the
// embedded basis (exact frames only); mask selects among a,b,c,d
QMat form_gram(const Lattice& L, const ArchFrame& frame, const std::array<int, 4>& mask);

// gauge of the experiment's region at T = 1 on experiment_lattice
Gauge experiment_gauge(const CountExperiment& exp);

long count_region(const CountExperiment& exp);       // includes 0
long count_region_star(const CountExperiment& exp);  // excludes 0

// nonzero region points grouped by determinant (= reduced norm), det ascending
std::vector<std::pair<Rat, long>> det_histogram(const CountExperiment& exp);

long type2_count(const CountExperiment& exp);  // requires exp.n

double height_of_frame(const ArchFrame& frame, const Int& N);

double type1_bound(const CountExperiment& exp);
double type2_bound(const CountExperiment& exp);
// Prop. "typeII-omega" refinement for n != 0:
//   1 + tau(d_B N) (1 + ell^2/(d_B N) min{delta^(1/2) T^2, delta T^4 / |n|})
double typeII_refined_bound(const CountExperiment& exp);
double first_min_threshold(const CountExperiment& exp);

BoundReport type1_report(const CountExperiment& exp);
BoundReport type2_report(const CountExperiment& exp);

// true iff -n is a rational square (split Type II extra-term criterion)
bool typeII_split_square_flag(const CountExperiment& exp);

// |{beta : q(beta) = n, Q(beta) <= X^2}| on a rank-2 lattice; q given by
// quad_value(gram_q, .), Q by quad_value(gram_Q, .).  Verifies |q| <= Q by a
// relative-eigenvalue check and that q is nondegenerate.
long binary_rep_count(const QMat& gram_q, const QMat& gram_Q, const Rat& n, double X);

struct CommutatorReport {
  bool pass = true;
  long pairs = 0;
  std::string detail;  // first failure, empty when pass
};

// exhaustive check over all coefficient vectors in [-radius, radius]^rank:
// q([x,y]) in norm_modulus * Z, and (if container != nullptr, rank 4)
// [x,y] in container
CommutatorReport commutator_congruence(const Lattice& L, const Rat& norm_modulus,
                                       const Lattice* container, long radius);

// max over sampled pairs x,y in L cap Omega(delta,T) of
// max(|q([x,y])|, P([x,y])) / (delta T^4)
double commutator_arch_ratio(const Lattice& L, const ArchFrame& frame, const Rat& delta,
                             const Rat& T, size_t max_pairs, uint64_t seed);

// det(gamma) = tr(gamma)^2/4 + det(gamma^0), exactly
bool norm_decomposition_check(const Quat& gamma);

// ordered pairs (g1, g2) of nonzero region points with det g1 = det g2;
// throws std::runtime_error when the point count exceeds cap
long pair_count_equal_det(const Lattice& L, const ArchFrame& frame, const Region& region,
                          long cap = 100000);

struct SplittingReport {
  bool inclusion_ok = true;  // tr in Z and 2 gamma^0 in R(ell)^0, boxed
  long lhs_pairs = 0;        // equal-det pairs of R(ell) in the starred region
  double rhs = 0;            // RHS of the splitting inequality, constant 1
  double ratio = 0;
  long diag_pairs = 0;       // equal-det pairs of R(ell)^0 at radius 2T
  long fiber_bound = 0;      // total count times max determinant fiber
  bool fiber_ok = true;
};

SplittingReport splitting_inequality_checks(const CountExperiment& exp, long cap = 100000);

struct Prop8Report {
  double C = 0;      // pair content  C_L * C_Q
  double level = 0;  // pair level    N_L * N_Q
  double disc = 0;   // det of the Q-Gram on the basis
  std::array<double, 3> lambda{};
  bool min_ok = false;       // lambda_1^2 >= C (1 - tol)
  double prod_ratio = 0;     // lambda_1 lambda_2 lambda_3 / disc^(1/2)
  double pair_ratio = 0;     // lambda_1 lambda_2 / (disc/level)^(1/2)
  double max_count_ratio = 0;  // count / (1 + X/sqrt(C) + X^2/sqrt(disc/level) + X^3/sqrt(disc))
};

// rank-3 pair (q, Q) on a lattice basis; throws std::domain_error when an
// isotropic vector of q is found within the enumeration radius
Prop8Report prop8_checks(const QMat& gram_q, const QMat& gram_Q,
                         const std::vector<double>& X_sweep);

struct DyadicReport {
  long direct = 0;  // nonzero points of Omega(delta,T) with det = n
  std::vector<long> piece_counts;
  bool cover_ok = true;
  bool sum_ok = true;
};

// dyadic decomposition Omega(delta,T) = Omega(1/16, 4 delta^(1/2) T) union
// shells {delta_j T^2 / 2 < P <= delta_j T^2, u <= delta T^2}
DyadicReport dyadic_typeII_reduction(const CountExperiment& exp);

}  // namespace qc
