#pragma once

#include <map>
#include <optional>

#include "valtoric/overweight.hpp"
#include "valtoric/semigroup.hpp"

namespace valtoric {

/// Truncated series in the base variables x_1..x_r. trust = nullopt means
/// the polynomial is exact; otherwise terms of value > trust are unknown.
struct XSeries {
  Poly p;
  std::optional<ValueVec> trust;

  bool exact_zero() const { return p.is_zero() && !trust; }
};

/// The base ring R_0 = k[[x_1..x_r]] with a monomial valuation nu_0 whose
/// values on the variables are rationally independent.
class BaseRing {
 public:
  BaseRing(std::vector<std::string> xnames, VarWeights xweights, Field field);

  int r() const { return static_cast<int>(xnames_.size()); }
  const std::vector<std::string>& names() const { return xnames_; }
  const VarWeights& weights() const { return xw_; }
  const MonomialOrder& order() const { return xw_.order(); }
  const Field& field() const { return field_; }

  XSeries exact(Poly p) const { return XSeries{std::move(p), std::nullopt}; }
  XSeries zero() const { return XSeries{Poly::zero(), std::nullopt}; }
  XSeries one() const { return exact(Poly::constant(r(), 1, field_)); }
  XSeries monomial(const ZVec& e, const mpq_class& c) const;

  XSeries add(const XSeries& a, const XSeries& b) const;
  XSeries sub(const XSeries& a, const XSeries& b) const;
  XSeries mul(const XSeries& a, const XSeries& b) const;
  XSeries scale(const mpq_class& c, const XSeries& a) const;
  /// Minimal term value; nullopt when zero within trust.
  std::optional<ValueVec> value(const XSeries& a) const;

 private:
  std::vector<std::string> xnames_;
  VarWeights xw_;
  Field field_;
};

/// Polynomial in y over the base ring; coefficient of y^i at index i.
using YPoly = std::vector<XSeries>;

YPoly ypoly_zero();
YPoly ypoly_y(const BaseRing& R);  // the polynomial y
YPoly ypoly_constant(const BaseRing& R, XSeries c);
int ypoly_deg(const YPoly& p);  // -1 for (known) zero
bool ypoly_is_monic(const BaseRing& R, const YPoly& p);
YPoly ypoly_add(const BaseRing& R, const YPoly& a, const YPoly& b);
YPoly ypoly_sub(const BaseRing& R, const YPoly& a, const YPoly& b);
YPoly ypoly_mul(const BaseRing& R, const YPoly& a, const YPoly& b);
YPoly ypoly_scale(const BaseRing& R, const XSeries& c, const YPoly& a);
YPoly ypoly_pow(const BaseRing& R, const YPoly& a, const mpz_class& n);
/// Quotient and remainder by a monic divisor.
std::pair<YPoly, YPoly> ypoly_divmod(const BaseRing& R, const YPoly& a, const YPoly& monic);
/// p(y + s) for a base-ring shift s.
YPoly ypoly_shift(const BaseRing& R, const YPoly& p, const XSeries& s);
/// Conversion from a mixed polynomial in (x_1..x_r, y).
YPoly ypoly_from_mixed(const BaseRing& R, const Poly& mixed);
Poly ypoly_to_mixed(const BaseRing& R, const YPoly& p);
std::string ypoly_to_string(const BaseRing& R, const YPoly& p, const std::string& yname = "y");

/// One key equation u_{i+1} = c_i*(x^{s_i} u_i^{n_i} - lambda_i x^{r_i}
/// prod_k u_k^{t_k}) - g_i, encoding n_i gamma_i = (r_i - s_i) + sum t_k gamma_k.
struct BranchEquation {
  mpz_class n;
  std::map<int, mpz_class> t;  // 0-based lower index -> exponent, 0 <= t_k < n_k
  ZVec r_part, s_part;         // x-exponents
  mpq_class lambda = 1;
  Poly g;                      // in the combined variables (x_1..x_r, u_1..u_i)
  mpq_class unit = 1;          // c_i
};

/// Hypersurface presentation data over R_0.
struct BranchData {
  BaseRing base;
  std::vector<ValueVec> gamma;  // values of u_1..u_t
  std::vector<BranchEquation> eqs;

  int t() const { return static_cast<int>(eqs.size()); }
  std::vector<std::string> combined_names(const std::string& uprefix = "u") const;
  /// Value identity n_i gamma_i + s_i*gamma0 = r_i*gamma0 + sum t_k gamma_k
  /// plus the weight windows for the g_i; throws on violation.
  void validate() const;
};

/// Q_1 = y, Q_{i+1} by iterated substitution; the last eliminant is p(y).
struct Eliminated {
  std::vector<YPoly> Q;  // Q_1 .. Q_{t+1}; Q_{t+1} is p(y)
  YPoly p;
};
Eliminated eliminate(const BranchData& B);
/// Same with all g_i omitted (the H_i^o equations).
Eliminated eliminate_naked(const BranchData& B);

struct KeySequences {
  // [i][j], 1-based paper indices stored at [i-1][j-1]; entries outside the
  // defined range resolved per the conventions (T,S: 0; M: 1).
  std::vector<std::vector<mpz_class>> T, M;
  std::vector<std::vector<ZVec>> L, S;  // x-exponent vectors
  std::vector<ZVec> S_top;              // S_{i}(1) for i = 1..t+1
};

/// The four sequences; asserts the identities (MT), (**) and r_i > L_i(1).
KeySequences sequences(const BranchData& B);

struct StructureVerdict {
  bool irreducible = false;
  int witness_index = -1;  // first i with s_i != 0 when reducible
  mpz_class degree;        // prod n_i
  mpz_class index;         // [Phi : Phi_0]
  std::vector<ValueVec> semigroup_gens;            // Gamma when irreducible
  std::vector<ValueVec> henselian_semigroup_gens;  // <Phi_0,>=0, gamma_ik - S_ik>
};

/// Structural dichotomy: irreducible iff every s_i = 0; reports the henselian-factor
/// semigroup either way.
StructureVerdict analytic_irreducibility_structure(const BranchData& B);

/// Unique monic q of degree deg(p)/d with deg(p - q^d) < deg p - deg q;
/// requires d | deg p and d invertible in the field.
YPoly approximate_root(const BaseRing& R, const YPoly& p, const mpz_class& d);

struct ResultantValue {
  enum class Kind { Value, Infinite, TruncationInsufficient } kind;
  ValueVec value;  // nu_0(Res)/deg p when kind == Value
};

/// nu_0(Res_y(p, q))/deg p via the multiplication-matrix determinant over
/// the (possibly truncated) base ring; certified against the trust bounds.
ResultantValue resultant_valuation(const BaseRing& R, const YPoly& p, const YPoly& q,
                                   const ValueVec& truncation);

struct CriterionVerdict {
  enum class Outcome { Irreducible, Reducible, Undetermined } outcome;
  std::string witness;  // violated condition or obstruction
  XSeries shift;        // upsilon(x): the criterion ran on p(y + upsilon)
  std::vector<ValueVec> gammas;
  std::vector<mpz_class> ns;
  std::vector<ValueVec> semigroup_gens;  // x-values then gammas, when irreducible
  std::vector<YPoly> key_polys;          // Q_1..Q_t in the shifted coordinate
  std::vector<std::string> provenance;   // one line per verified inequality
};

/// Abhyankar-type irreducibility criterion by approximate roots and
/// resultant valuations; deg p must be prime to the characteristic.
CriterionVerdict abhyankar_criterion(const BaseRing& R, YPoly p, const ValueVec& truncation);

struct Realization {
  BranchData branch;
  YPoly p;
  std::vector<mpz_class> ns;
};

/// Bresinsky-type construction: checks n_i gamma_i in Gamma_{i-1} and
/// n_i gamma_i < gamma_{i+1}, builds the H_i^o equations (lambda = 1,
/// g = 0) and eliminates. Throws std::invalid_argument naming the first
/// violated condition.
Realization realize_semigroup(const BaseRing& R, const std::vector<ValueVec>& gamma,
                              const std::vector<mpq_class>* lambdas = nullptr);

/// The overweight system presenting R_0[y]/(p) in the variables
/// (x_1..x_r, u_1..u_t), equations H_1..H_t.
OverweightSystem to_overweight_system(const BranchData& B, const ValueVec& truncation);

struct ContactReport {
  bool infinite_contact = false;
  ValueVec contact;  // nu(q) on the branch of p
  ValueVec threshold;  // n_t * gamma_t
  bool hypothesis_holds = false;
  bool confirmed = false;  // independent criterion run agrees
  std::vector<ValueVec> semigroup_q;
};

/// Abhyankar-Moh style contact check: if the contact of q with the branch
/// exceeds n_t gamma_t, q must be analytically irreducible with the same
/// semigroup; verified independently through the criterion.
ContactReport am_contact_check(const BranchData& B, const Eliminated& E, const YPoly& q,
                               const ValueVec& truncation);

struct DefectSolution {
  std::vector<mpz_class> defects;
};

/// Ostrowski accounting: finds the defect assignment (powers of the
/// characteristic, 1 in characteristic zero) with sum e*f*d = n. Throws when
/// none or several assignments are consistent.
DefectSolution ostrowski_accounting(const mpz_class& n,
                                    const std::vector<std::pair<mpz_class, mpz_class>>& branches,
                                    unsigned long characteristic);

/// Least n >= 1 with n*v in the group generated by gens; 0 when v is not in
/// the rational span.
mpz_class least_multiple_in_group(const std::vector<ValueVec>& gens, const ValueVec& v);

}  // namespace valtoric
