#pragma once

#include <map>
#include <string>
#include <vector>

#include "valtoric/order.hpp"

namespace valtoric {

/// Exact coefficient field: Q when p == 0, else the prime field F_p.
/// Elements are mpq_class values; in F_p they are kept as integer residues.
struct Field {
  unsigned long p = 0;

  bool is_rationals() const { return p == 0; }
  mpq_class normalize(const mpq_class& x) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return normalize(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return normalize(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return normalize(a * b); }
  mpq_class neg(const mpq_class& a) const { return normalize(-a); }
  mpq_class inv(const mpq_class& a) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }
  mpq_class from_int(const mpz_class& n) const { return normalize(mpq_class(n)); }
  bool is_zero(const mpq_class& a) const { return normalize(a) == 0; }
  bool equal(const mpq_class& a, const mpq_class& b) const { return is_zero(a - b); }
};

using Expo = std::vector<int>;

Expo expo_add(const Expo& a, const Expo& b);
/// Componentwise difference; requires a >= b.
Expo expo_sub(const Expo& a, const Expo& b);
bool expo_divides(const Expo& a, const Expo& b);  // a | b componentwise
Expo expo_min(const Expo& a, const Expo& b);
bool expo_is_zero(const Expo& a);

/// Multivariate polynomial over an exact field; no zero coefficients stored.
struct Poly {
  std::map<Expo, mpq_class> terms;

  bool is_zero() const { return terms.empty(); }
  size_t term_count() const { return terms.size(); }
  static Poly zero() { return {}; }
  static Poly constant(int nvars, const mpq_class& c, const Field& f);
  static Poly monomial(Expo e, const mpq_class& c, const Field& f);
  static Poly variable(int nvars, int idx);
};

Poly poly_add(const Field& f, const Poly& a, const Poly& b);
Poly poly_sub(const Field& f, const Poly& a, const Poly& b);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);
Poly poly_scale(const Field& f, const mpq_class& c, const Poly& a);
Poly poly_mul_term(const Field& f, const Poly& a, const Expo& e, const mpq_class& c);
Poly poly_pow(const Field& f, const Poly& a, const mpz_class& n);
Poly poly_derivative(const Field& f, const Poly& a, int var);
/// Substitutes images[i] for variable i (images over a possibly different
/// variable set; all images must share one exponent length).
Poly poly_subst(const Field& f, const Poly& a, const std::vector<Poly>& images, int out_nvars);
bool poly_equal(const Field& f, const Poly& a, const Poly& b);

/// Weights of the variables; computes order-values of exponents and the
/// weight decomposition of polynomials.
class VarWeights {
 public:
  VarWeights(std::vector<ValueVec> w, MonomialOrder order);

  int nvars() const { return static_cast<int>(w_.size()); }
  const MonomialOrder& order() const { return order_; }
  const std::vector<ValueVec>& weights() const { return w_; }
  ValueVec value(const Expo& e) const;
  /// Minimal order-value over the terms; throws on the zero polynomial.
  ValueVec weight(const Poly& p) const;
  /// Sub-sum of terms of minimal order-value.
  Poly initial_form(const Poly& p) const;
  /// Terms of value strictly greater than the given bound.
  Poly tail_above(const Poly& p, const ValueVec& bound) const;
  /// Drops terms of value strictly greater than the bound.
  Poly truncate_above(const Poly& p, const ValueVec& bound) const;

 private:
  std::vector<ValueVec> w_;
  MonomialOrder order_;
};

/// Weight order refined by graded-lex tie-breaking; a well order on
/// monomials when all weights are order-positive.
Cmp cmp_monomial(const VarWeights& vw, const Expo& a, const Expo& b);

/// Term grammar: `coef * u1^2 * x2` with +/- joining terms; coefficient
/// literals are rationals, `u1` alone means exponent 1.
Poly parse_poly(const std::string& text, const std::vector<std::string>& var_names,
                const Field& f);
std::string print_poly(const Poly& p, const std::vector<std::string>& var_names);

}  // namespace valtoric
