#include "valtoric/quadext.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace valtoric {

bool squarefree(unsigned long d) {
  if (d == 0) return true;
  if (d % 4 == 0) return false;
  for (unsigned long f = 3; f * f <= d; f += 2)
    if (d % (f * f) == 0) return false;
  return true;
}

QuadExt::QuadExt(mpq_class ra, mpq_class rb, unsigned long d)
    : a(std::move(ra)), b(std::move(rb)), D(d) {
  if (D == 0 && b != 0) throw std::invalid_argument("quadext: sqrt(0) part must vanish");
  if (D == 1) {  // sqrt(1) folds into the rational part
    a += b;
    b = 0;
    D = 0;
  }
  if (!squarefree(D)) throw std::invalid_argument("quadext: radicand must be squarefree");
  if (b == 0) D = 0;
}

int QuadExt::sign() const {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against b^2*D; equality would force sqrt(D)
  // rational, excluded by squarefreeness.
  const mpq_class lhs = a * a;
  const mpq_class rhs = b * b * mpq_class(static_cast<long>(D));
  const int c = cmp(lhs, rhs);
  if (c == 0) throw std::logic_error("quadext: radicand is a perfect square");
  return c > 0 ? sa : sb;
}

double QuadExt::to_double() const {
  double v = a.get_d();
  if (b != 0) v += b.get_d() * std::sqrt(static_cast<double>(D));
  return v;
}

unsigned long merge_radicand(const QuadExt& x, const QuadExt& y) {
  if (x.D == 0) return y.D;
  if (y.D == 0 || x.D == y.D) return x.D;
  throw std::invalid_argument("quadext: mixed radicands");
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a + y.a, x.b + y.b, merge_radicand(x, y));
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a - y.a, x.b - y.b, merge_radicand(x, y));
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  const unsigned long d = merge_radicand(x, y);
  const mpq_class rad(static_cast<long>(d));
  return QuadExt(x.a * y.a + x.b * y.b * rad, x.a * y.b + x.b * y.a, d);
}

QuadExt operator*(const mpq_class& c, const QuadExt& y) { return QuadExt(c * y.a, c * y.b, y.D); }

QuadExt operator/(const QuadExt& x, const QuadExt& y) {
  if (y.is_zero()) throw std::domain_error("quadext: division by zero");
  const unsigned long d = merge_radicand(x, y);
  const mpq_class rad(static_cast<long>(d));
  const mpq_class norm = y.a * y.a - y.b * y.b * rad;  // (a+bs)(a-bs)
  QuadExt conj(y.a, -y.b, y.D);
  QuadExt num = x * conj;
  return QuadExt(num.a / norm, num.b / norm, d);
}

bool operator==(const QuadExt& x, const QuadExt& y) { return (x - y).is_zero(); }
bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
bool operator>(const QuadExt& x, const QuadExt& y) { return (x - y).sign() > 0; }
bool operator<=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() <= 0; }
bool operator>=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() >= 0; }

mpz_class floor_int(const QuadExt& x) {
  if (x.is_rational()) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.a.get_num().get_mpz_t(), x.a.get_den().get_mpz_t());
    return f;
  }
  mpz_class guess(static_cast<long>(std::floor(x.to_double())));
  while ((x - QuadExt(mpq_class(guess))).sign() < 0) guess -= 1;
  while ((x - QuadExt(mpq_class(guess + 1))).sign() >= 0) guess += 1;
  return guess;
}

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
  q.canonicalize();
  return q;
}

namespace {

// One summand: either "r" or "r*sqrt(D)" or "sqrt(D)".
void parse_summand(const std::string& s, mpq_class& rat, mpq_class& irr, unsigned long& D) {
  auto pos = s.find("sqrt(");
  if (pos == std::string::npos) {
    rat += parse_rational(s);
    return;
  }
  auto close = s.find(')', pos);
  if (close == std::string::npos) throw std::invalid_argument("bad sqrt literal: " + s);
  unsigned long d = std::stoul(s.substr(pos + 5, close - pos - 5));
  std::string coef = s.substr(0, pos);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  mpq_class c;
  if (coef.empty() || coef == "+")
    c = 1;
  else if (coef == "-")
    c = -1;
  else
    c = parse_rational(coef);
  if (D != 0 && d != D && c != 0) throw std::invalid_argument("mixed radicands in: " + s);
  if (c != 0) D = d;
  irr += c;
}

}  // namespace

QuadExt parse_quadext(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty quadext literal");
  mpq_class rat = 0, irr = 0;
  unsigned long D = 0;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '+' || c == '-') && i > 0 && s[i - 1] != '*' && s[i - 1] != '+' && s[i - 1] != '-' &&
        s[i - 1] != '/' && s[i - 1] != '(') {
      parse_summand(cur, rat, irr, D);
      cur.clear();
      if (c == '-') cur.push_back('-');
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parse_summand(cur, rat, irr, D);
  if (irr == 0) return QuadExt(rat);
  return QuadExt(rat, irr, D);
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

std::string to_string(const QuadExt& x) {
  if (x.is_rational()) return to_string(x.a);
  std::string s;
  if (x.a != 0) s = to_string(x.a) + (sgn(x.b) < 0 ? " - " : " + ");
  else if (sgn(x.b) < 0)
    s = "-";
  mpq_class babs = abs(x.b);
  if (babs != 1) s += to_string(babs) + "*";
  s += "sqrt(" + std::to_string(x.D) + ")";
  return s;
}

}  // namespace valtoric
