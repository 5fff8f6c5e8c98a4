#pragma once

#include "valtoric/toric.hpp"

namespace valtoric {

/// Truncated power series in one variable t over an exact field;
/// coefficients are trusted for degrees 0..trust (inclusive).
struct TSeries {
  std::vector<mpq_class> c;  // c[k] is the t^k coefficient
  long trust = 0;

  static TSeries zero(long trust);
  static TSeries monomial(long k, const mpq_class& coeff, long trust);
  /// Order of vanishing; nullopt when zero within trust.
  std::optional<long> ord(const Field& f) const;
};

TSeries ts_add(const Field& f, const TSeries& a, const TSeries& b);
TSeries ts_mul(const Field& f, const TSeries& a, const TSeries& b);
TSeries ts_scale(const Field& f, const mpq_class& s, const TSeries& a);
TSeries ts_pow(const Field& f, const TSeries& a, long n);
/// Multiplicative inverse; requires a nonzero constant term.
TSeries ts_inv(const Field& f, const TSeries& a);

/// Evaluates a polynomial at series arguments (one per variable).
TSeries ts_eval(const Field& f, const Poly& p, const std::vector<TSeries>& args);

struct Parametrization {
  std::vector<TSeries> u;        // per system variable
  std::vector<mpz_class> orders; // ord_t u_i(t), equal to gamma_i
  ChartReport chart;
};

/// Power-series parametrization u_i(t) with ord(u_i) = gamma_i solving every
/// equation up to the truncation, for rank-one (numerical) systems. Built by
/// uniformizing a chart and Hensel-lifting at the smooth boundary point.
Parametrization parametrization_oracle(const OverweightSystem& sys, long t_truncation,
                                       int iteration_cap = 64);

/// ord_t of f(u(t)); nullopt when f vanishes within the trusted range.
std::optional<long> oracle_ord(const Field& f, const Poly& poly, const Parametrization& par);

}  // namespace valtoric
