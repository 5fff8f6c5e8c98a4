#pragma once

#include "valtoric/overweight.hpp"
#include "valtoric/zmatrix.hpp"

namespace valtoric {

/// Relation lattice of a weight map b: Z^N -> Z^r, gamma_i = b(e_i).
struct RelationLattice {
  int nvars = 0;                     // N
  std::vector<ZVec> gens;            // vectors m^l - n^l spanning ker b
  std::vector<ValueVec> weight_map;  // the gamma_i

  /// Non-negative/negative split of a generator.
  static std::pair<Expo, Expo> split(const ZVec& v);
};

/// Generating set of ker(b) via the Smith normal form of the weight matrix.
RelationLattice relation_lattice(const std::vector<ValueVec>& gamma, int rank);

/// True iff all Smith invariant factors of the generator matrix are 1.
bool saturation_check(const RelationLattice& lattice);

struct TameProjection {
  std::vector<int> chosen;  // 0-based indices of r generators
  mpz_class chosen_index;   // index of the subgroup they generate
  std::vector<std::pair<std::vector<int>, mpz_class>> minors;  // all r-subsets
};

/// Chooses r rationally independent generators whose group index is not
/// divisible by p; enumerates all r-subset minors. Throws when no choice
/// exists (possible only for unsaturated input).
TameProjection tame_projection(const std::vector<ValueVec>& gamma, int rank, unsigned long p);

struct JacobianCongruence {
  mpz_class minor;  // Det_{G,L'} of the m-n matrix
  bool holds = false;
  Poly residue;  // nonzero residue when the reduction fails
};

/// Verifies the jacobian congruence
///   U_{k_1}...U_{k_c} * J_{G,L'}  ==  (prod_{l in L'} U^{m^l}) * Det_{G,L'}(<m-n>)
/// modulo the binomial ideal, by normal-form reduction.
JacobianCongruence jacobian_congruence_check(const OverweightSystem& binomial_system,
                                             const std::vector<int>& G,
                                             const std::vector<int>& Lprime);

/// Pure binomial system over the given weights (trivial overweight
/// deformation); validated and ready for reduction.
OverweightSystem make_binomial_system(std::vector<std::string> var_names,
                                      std::vector<ValueVec> gamma, MonomialOrder order,
                                      Field field, std::vector<BinomialPair> pairs);

}  // namespace valtoric
