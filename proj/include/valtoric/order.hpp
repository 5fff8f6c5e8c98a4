#pragma once

#include <vector>

#include "valtoric/quadext.hpp"

namespace valtoric {

/// Element of the value group Z^r (or of its divisible hull Q^r, which the
/// hypersurface analysis needs); compared only through a MonomialOrder.
using ValueVec = std::vector<mpq_class>;

enum class Cmp { LT = -1, EQ = 0, GT = 1 };

ValueVec vv_zero(int r);
ValueVec vv_add(const ValueVec& u, const ValueVec& v);
ValueVec vv_sub(const ValueVec& u, const ValueVec& v);
ValueVec vv_scale(const mpq_class& c, const ValueVec& v);
bool vv_is_integral(const ValueVec& v);
std::string to_string(const ValueVec& v);

/// Total order of finite rank h on Z^r, given by h linear forms with
/// coefficients in a fixed real quadratic field. Construction verifies that
/// the forms have trivial common rational kernel, so the induced order is
/// total on Z^r.
class MonomialOrder {
 public:
  MonomialOrder(int ambient_rank, std::vector<std::vector<QuadExt>> rows);

  int ambient_rank() const { return r_; }
  int height() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<QuadExt>>& rows() const { return rows_; }

  QuadExt row_value(int k, const ValueVec& v) const;

  Cmp cmp(const ValueVec& u, const ValueVec& v) const;
  bool lt(const ValueVec& u, const ValueVec& v) const { return cmp(u, v) == Cmp::LT; }
  bool gt(const ValueVec& u, const ValueVec& v) const { return cmp(u, v) == Cmp::GT; }
  bool leq(const ValueVec& u, const ValueVec& v) const { return cmp(u, v) != Cmp::GT; }
  bool geq(const ValueVec& u, const ValueVec& v) const { return cmp(u, v) != Cmp::LT; }
  bool positive(const ValueVec& v) const;
  bool negative(const ValueVec& v) const;
  bool is_zero_value(const ValueVec& v) const;

  /// The unique k with v in Psi_k \ Psi_{k+1} (rows 1..k vanish on v); h for v = 0.
  int convex_level(const ValueVec& v) const;

  ValueVec min(const ValueVec& u, const ValueVec& v) const { return lt(u, v) ? u : v; }
  ValueVec max(const ValueVec& u, const ValueVec& v) const { return gt(u, v) ? u : v; }

  /// Rank-one convenience: order on Z given by the single row (1).
  static MonomialOrder standard_rank1();
  /// Lexicographic order on Z^r.
  static MonomialOrder lex(int r);

 private:
  int r_;
  std::vector<std::vector<QuadExt>> rows_;
};

/// Rank over Q of a rational matrix (rows given as vectors).
int rational_rank(std::vector<std::vector<mpq_class>> m);

}  // namespace valtoric
