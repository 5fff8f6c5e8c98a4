#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace valtoric {

/// Element a + b*sqrt(D) of a real quadratic field.
/// D == 0 encodes a plain rational (then b must be 0); otherwise D is a
/// squarefree integer >= 2. All sign computations are exact.
struct QuadExt {
  mpq_class a;
  mpq_class b;
  unsigned long D = 0;

  QuadExt() = default;
  QuadExt(mpq_class ra) : a(std::move(ra)), b(0), D(0) {}
  QuadExt(long n) : a(n), b(0), D(0) {}
  QuadExt(mpq_class ra, mpq_class rb, unsigned long d);

  bool is_rational() const { return b == 0; }
  bool is_zero() const { return a == 0 && b == 0; }

  /// Exact sign of a + b*sqrt(D): -1, 0 or +1.
  int sign() const;

  QuadExt operator-() const { return QuadExt(-a, -b, D); }
  double to_double() const;

  static QuadExt sqrt_of(unsigned long d) { return QuadExt(0, 1, d); }
};

bool squarefree(unsigned long d);

unsigned long merge_radicand(const QuadExt& x, const QuadExt& y);

QuadExt operator+(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x, const QuadExt& y);
QuadExt operator*(const QuadExt& x, const QuadExt& y);
QuadExt operator*(const mpq_class& c, const QuadExt& y);
QuadExt operator/(const QuadExt& x, const QuadExt& y);
bool operator==(const QuadExt& x, const QuadExt& y);
bool operator!=(const QuadExt& x, const QuadExt& y);
bool operator<(const QuadExt& x, const QuadExt& y);
bool operator>(const QuadExt& x, const QuadExt& y);
bool operator<=(const QuadExt& x, const QuadExt& y);
bool operator>=(const QuadExt& x, const QuadExt& y);

/// Largest integer <= x.
mpz_class floor_int(const QuadExt& x);

/// Parses "p/q", "p/q + r/s*sqrt(D)", "sqrt(D)", "-3/4*sqrt(5)", ...
QuadExt parse_quadext(const std::string& text);
mpq_class parse_rational(const std::string& text);

std::string to_string(const mpq_class& q);
std::string to_string(const QuadExt& x);

}  // namespace valtoric
