#pragma once

#include <optional>
#include <string>

#include "valtoric/poly.hpp"

namespace valtoric {

/// One designated binomial u^m - lambda*u^n (disjoint supports, lambda != 0).
struct BinomialPair {
  Expo m, n;
  mpq_class lambda;
};

/// Element of the binomial rewriting basis: u^lead - lambda*u^trail with
/// lead > trail in the refined monomial order, plus the deformed lift
/// (an element of the deformed ideal with this binomial as initial form).
struct BasisElt {
  Expo lead, trail;
  mpq_class lambda;
  Poly lift;
};

struct ReductionStep {
  size_t basis_index;
  Expo shift;
  mpq_class coeff;
};

/// Deformed equations F_l = c_l*(u^{m_l} - lambda_l u^{n_l}) + tail with all
/// tail terms of strictly greater weight. validate() certifies the
/// invariants and computes the rewriting basis; valuate() computes values
/// of ring elements by initial-form reduction.
class OverweightSystem {
 public:
  OverweightSystem(std::vector<std::string> var_names, VarWeights weights, Field field,
                   std::vector<Poly> equations,
                   std::vector<std::optional<BinomialPair>> designated, ValueVec truncation);

  /// Convenience: designated parts inferred from the initial forms.
  OverweightSystem(std::vector<std::string> var_names, VarWeights weights, Field field,
                   std::vector<Poly> equations, ValueVec truncation);

  const std::vector<std::string>& var_names() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const VarWeights& weights() const { return weights_; }
  const MonomialOrder& order() const { return weights_.order(); }
  const Field& field() const { return field_; }
  const std::vector<Poly>& equations() const { return eqs_; }
  const std::vector<BinomialPair>& binomials() const { return pairs_; }
  const ValueVec& truncation() const { return trunc_; }
  const std::vector<BasisElt>& rewriting_basis() const;
  bool validated() const { return validated_; }

  struct ValidationReport {
    bool valid = true;
    std::vector<std::string> failures;
  };

  /// Checks every invariant (designated initial forms, overweight tails,
  /// relation-lattice generation, primality certificate, standard-basis
  /// condition up to truncation) and computes the rewriting basis.
  /// require_full_lattice = false relaxes the condition that the binomials
  /// generate the whole relation lattice of the weights; the system is then
  /// only a reduction context for its own ideal.
  ValidationReport validate(bool require_full_lattice = true);

  /// Normal form against the binomial rewriting basis; optionally records
  /// the rewrite steps performed.
  Poly normal_form(Poly h, std::vector<ReductionStep>* trace = nullptr) const;

  struct Valuation {
    bool exact = true;  // false encodes AtLeast(bound)
    ValueVec value;     // the value, or the bound when !exact
  };

  /// Value of the image of f in the deformed ring, by initial-form
  /// reduction with lifting; AtLeast(truncation) when reduction exhausts
  /// the trusted range.
  Valuation valuate(const Poly& f) const;

 private:
  std::vector<std::string> vars_;
  VarWeights weights_;
  Field field_;
  std::vector<Poly> eqs_;
  std::vector<std::optional<BinomialPair>> designated_;
  std::vector<BinomialPair> pairs_;  // normalized, filled by validate
  ValueVec trunc_;
  std::vector<BasisElt> basis_;
  bool validated_ = false;

  bool reduce_term_once(Poly& h, std::vector<ReductionStep>* trace) const;
  void complete_basis(ValidationReport& report);
};

/// The sub-sum of terms of minimal order-value. Errors on zero input.
Poly initial_form(const Poly& f, const VarWeights& weights);

}  // namespace valtoric
