#pragma once

#include "valtoric/overweight.hpp"
#include "valtoric/zmatrix.hpp"

namespace valtoric {

/// Regular cone spanned by N primitive rays a^1..a^N (rows); |det| = 1.
/// Rays are non-negative when subdividing the positive orthant.
struct RegularCone {
  ZMat rays;

  explicit RegularCone(ZMat r);
  int dim() const { return static_cast<int>(rays.size()); }
  static RegularCone identity(int n);
};

/// The unique weights w(y_j) with w(u_i) = sum_j a^j_i * w(y_j).
std::vector<ValueVec> induced_weights(const RegularCone& cone,
                                      const std::vector<ValueVec>& u_weights,
                                      const MonomialOrder& order);

/// True iff every induced w(y_j) >= 0 in the order (the chart contains the
/// center of the monomial valuation).
bool is_w_centering(const RegularCone& cone, const std::vector<ValueVec>& u_weights,
                    const MonomialOrder& order);

struct TransformedEquation {
  Expo factored;  // exponent of the factored monomial, in the y-variables
  Poly strict;    // the strict transform
};

struct StrictTransform {
  std::vector<TransformedEquation> equations;
};

/// Monomial substitution u_i -> prod_j y_j^{a^j_i}; per equation the
/// componentwise-minimal exponent is factored out.
StrictTransform strict_transform(const OverweightSystem& sys, const RegularCone& cone);

struct ChartReport {
  RegularCone cone;
  std::vector<ValueVec> y_weights;
  StrictTransform transform;
  std::vector<int> w_rays;        // rays orthogonal to every m - n
  std::vector<int> local_coords;  // variables of nonzero weight
  bool uniformized = false;
  std::string verdict;
  std::vector<mpq_class> boundary_point;  // per variable; local coords get 0
};

/// Searches for a w-centering regular cone that is one-sided for every
/// hyperplane dual to m^l - n^l, meets W in dimension r and satisfies the
/// strict positivity conditions on deformation exponents. The search walks
/// mixed-sign ray pairs (continued-fraction steps in dimension 2).
ChartReport find_centering_chart(const OverweightSystem& sys, int iteration_cap = 64);

/// Verifies that the chart uniformizes: (a) each transformed equation is a
/// weight-zero binomial plus strictly positive-weight terms, (b) the
/// boundary binomial system has a torus point over the field, (c) the
/// jacobian of the binomial parts at that point has full rank. Fills the
/// boundary point and verdict fields of the report.
struct UniformizationCheck {
  bool ok = false;
  std::string failure;  // empty when ok
  std::vector<int> local_coords;
  std::vector<mpq_class> boundary_point;
};

UniformizationCheck check_uniformized(const OverweightSystem& sys, ChartReport& report);

/// d-th root in the field: exhaustive in F_p, exact num/den root over Q.
std::optional<mpq_class> field_root(const Field& f, const mpq_class& value, const mpz_class& d);

}  // namespace valtoric
