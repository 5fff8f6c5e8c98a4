#pragma once

#include <map>
#include <optional>

#include "valtoric/order.hpp"
#include "valtoric/zmatrix.hpp"

namespace valtoric {

/// Finitely generated subsemigroup of an ordered Z^r; every generator is
/// strictly positive under the order, so the semigroup is well ordered.
struct AffineSemigroup {
  std::vector<ValueVec> gens;
  MonomialOrder order;

  AffineSemigroup(std::vector<ValueVec> g, MonomialOrder o);
};

/// Strictly positive rational functional on a finite set of order-positive
/// vectors: row_1 + eps*row_2 + ... with eps small enough.
class PositiveFunctional {
 public:
  PositiveFunctional(const MonomialOrder& order, const std::vector<ValueVec>& must_be_positive);
  QuadExt operator()(const ValueVec& v) const;

 private:
  const MonomialOrder* order_;
  mpq_class eps_;
};

/// Non-negative integer coefficients c with sum c_i*gens_i = v, or nullopt.
/// Complete search (no false negatives).
std::optional<ZVec> membership(const AffineSemigroup& s, const ValueVec& v);

/// Same semigroup with every generator expressible from the others removed.
AffineSemigroup minimal_generators(const AffineSemigroup& s);

struct GroupIndex {
  bool finite = false;
  mpz_class index;
};

/// Index [gp(B) : gp(A)] for gp(A) inside gp(B); Infinite when ranks differ.
GroupIndex group_index(const std::vector<ValueVec>& A, const std::vector<ValueVec>& B);

/// Data of the unique presentation n_i*delta_i = phi0 + sum t_k*delta_k with
/// minimal n_i, 0 <= t_k < n_k and phi0 in the group of Gamma_0.
struct PresentationRow {
  mpz_class n;
  std::map<int, mpz_class> t;  // index k (0-based into deltas) -> t_k
  ValueVec phi0;               // ambient coordinates
  ZVec phi0_coords;            // coordinates w.r.t. the free basis of Gamma_0
  ZVec r_part;                 // non-negative part of phi0_coords
  ZVec s_part;                 // negative part (stored non-negative)
};

struct Presentation {
  std::vector<PresentationRow> rows;
};

Presentation presentation(const std::vector<ValueVec>& gamma0_basis,
                          const std::vector<ValueVec>& deltas, const MonomialOrder& order);

/// Least c with c + N contained in the numerical semigroup; gcd must be 1.
mpz_class conductor(const std::vector<mpz_class>& gens);

/// Hypothesis of the translation finiteness statement: gamma + d*delta_j in
/// Gamma for every listed generator delta_j of the extension.
bool translation_hypothesis(const AffineSemigroup& gamma, const std::vector<ValueVec>& deltas,
                            const mpz_class& d, const ValueVec& gamma_elt);

struct JacobiPerronStep {
  ZVec gen_a, gen_b;         // basis of N^2_(h), coordinates w.r.t. (w1, w2)
  ZMat old_in_new;           // expresses the previous basis in this one
  mpz_class det;             // determinant of the basis matrix
};

struct JacobiPerronChain {
  std::vector<JacobiPerronStep> steps;
  std::vector<int> containment_step;  // per target: index of first containing step
};

/// Nested free approximations of the positive cone of a rank-one order on
/// Z^2 with irrational slope, built from continued-fraction convergents of
/// w2/w1, extended until every target lies in the last semigroup.
JacobiPerronChain jacobi_perron_chain(const MonomialOrder& order,
                                      const std::pair<ZVec, ZVec>& base,
                                      const std::vector<ZVec>& targets, int iteration_cap = 64);

}  // namespace valtoric
