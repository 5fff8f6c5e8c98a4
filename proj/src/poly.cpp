#include "valtoric/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace valtoric {

mpq_class Field::normalize(const mpq_class& x) const {
  if (p == 0) return x;
  // a/b mod p with p prime and p not dividing b.
  mpz_class pp(static_cast<long>(p));
  mpz_class num = x.get_num() % pp;
  if (num < 0) num += pp;
  mpz_class den = x.get_den() % pp;
  if (den == 0) throw std::domain_error("field: denominator divisible by the characteristic");
  if (den != 1) {
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()) == 0)
      throw std::domain_error("field: denominator not invertible");
    num = (num * dinv) % pp;
  }
  return mpq_class(num);
}

mpq_class Field::inv(const mpq_class& a) const {
  mpq_class x = normalize(a);
  if (x == 0) throw std::domain_error("field: inverse of zero");
  if (p == 0) return 1 / x;
  mpz_class pp(static_cast<long>(p)), r;
  if (mpz_invert(r.get_mpz_t(), x.get_num().get_mpz_t(), pp.get_mpz_t()) == 0)
    throw std::domain_error("field: element not invertible");
  return mpq_class(r);
}

Expo expo_add(const Expo& a, const Expo& b) {
  if (a.size() != b.size()) throw std::invalid_argument("expo_add: arity mismatch");
  Expo c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Expo expo_sub(const Expo& a, const Expo& b) {
  if (a.size() != b.size()) throw std::invalid_argument("expo_sub: arity mismatch");
  Expo c(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    c[i] = a[i] - b[i];
    if (c[i] < 0) throw std::invalid_argument("expo_sub: negative exponent");
  }
  return c;
}

bool expo_divides(const Expo& a, const Expo& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Expo expo_min(const Expo& a, const Expo& b) {
  Expo c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = std::min(a[i], b[i]);
  return c;
}

bool expo_is_zero(const Expo& a) {
  for (int x : a)
    if (x) return false;
  return true;
}

Poly Poly::constant(int nvars, const mpq_class& c, const Field& f) {
  Poly p;
  mpq_class cc = f.normalize(c);
  if (cc != 0) p.terms[Expo(static_cast<size_t>(nvars), 0)] = cc;
  return p;
}

Poly Poly::monomial(Expo e, const mpq_class& c, const Field& f) {
  Poly p;
  mpq_class cc = f.normalize(c);
  if (cc != 0) p.terms[std::move(e)] = cc;
  return p;
}

Poly Poly::variable(int nvars, int idx) {
  Poly p;
  Expo e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(idx)] = 1;
  p.terms[e] = 1;
  return p;
}

Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
  Poly c = a;
  for (const auto& [e, coef] : b.terms) {
    auto it = c.terms.find(e);
    if (it == c.terms.end()) {
      mpq_class v = f.normalize(coef);
      if (v != 0) c.terms[e] = v;
    } else {
      mpq_class v = f.add(it->second, coef);
      if (v == 0)
        c.terms.erase(it);
      else
        it->second = v;
    }
  }
  return c;
}

Poly poly_sub(const Field& f, const Poly& a, const Poly& b) {
  return poly_add(f, a, poly_scale(f, -1, b));
}

Poly poly_scale(const Field& f, const mpq_class& c, const Poly& a) {
  Poly r;
  mpq_class cc = f.normalize(c);
  if (cc == 0) return r;
  for (const auto& [e, coef] : a.terms) r.terms[e] = f.mul(cc, coef);
  return r;
}

Poly poly_mul_term(const Field& f, const Poly& a, const Expo& e, const mpq_class& c) {
  Poly r;
  mpq_class cc = f.normalize(c);
  if (cc == 0) return r;
  for (const auto& [ae, coef] : a.terms) r.terms[expo_add(ae, e)] = f.mul(cc, coef);
  return r;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ae, ac] : a.terms)
    for (const auto& [be, bc] : b.terms) {
      Expo e = expo_add(ae, be);
      auto it = r.terms.find(e);
      mpq_class v = f.mul(ac, bc);
      if (it == r.terms.end()) {
        if (v != 0) r.terms[std::move(e)] = v;
      } else {
        it->second = f.add(it->second, v);
        if (it->second == 0) r.terms.erase(it);
      }
    }
  return r;
}

Poly poly_pow(const Field& f, const Poly& a, const mpz_class& n) {
  if (n < 0) throw std::invalid_argument("poly_pow: negative exponent");
  if (a.is_zero() && n == 0) throw std::invalid_argument("poly_pow: 0^0");
  size_t nv = a.terms.empty() ? 0 : a.terms.begin()->first.size();
  Poly r = Poly::constant(static_cast<int>(nv), 1, f);
  Poly base = a;
  mpz_class k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = poly_mul(f, r, base);
    k >>= 1;
    if (k > 0) base = poly_mul(f, base, base);
  }
  return r;
}

Poly poly_derivative(const Field& f, const Poly& a, int var) {
  Poly r;
  for (const auto& [e, c] : a.terms) {
    int k = e[static_cast<size_t>(var)];
    if (k == 0) continue;
    mpq_class v = f.mul(c, mpq_class(k));
    if (v == 0) continue;
    Expo d = e;
    d[static_cast<size_t>(var)] -= 1;
    r.terms[d] = f.add(r.terms.count(d) ? r.terms[d] : mpq_class(0), v);
    if (r.terms[d] == 0) r.terms.erase(d);
  }
  return r;
}

Poly poly_subst(const Field& f, const Poly& a, const std::vector<Poly>& images, int out_nvars) {
  Poly r = Poly::zero();
  for (const auto& [e, c] : a.terms) {
    Poly t = Poly::constant(out_nvars, c, f);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      t = poly_mul(f, t, poly_pow(f, images[i], e[i]));
    }
    r = poly_add(f, r, t);
  }
  return r;
}

bool poly_equal(const Field& f, const Poly& a, const Poly& b) {
  return poly_sub(f, a, b).is_zero();
}

VarWeights::VarWeights(std::vector<ValueVec> w, MonomialOrder order)
    : w_(std::move(w)), order_(std::move(order)) {
  for (const auto& v : w_)
    if (static_cast<int>(v.size()) != order_.ambient_rank())
      throw std::invalid_argument("var weights: dimension mismatch");
}

ValueVec VarWeights::value(const Expo& e) const {
  if (e.size() != w_.size()) throw std::invalid_argument("var weights: arity mismatch");
  ValueVec v = vv_zero(order_.ambient_rank());
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    for (size_t k = 0; k < v.size(); ++k) v[k] += e[i] * w_[i][k];
  }
  return v;
}

ValueVec VarWeights::weight(const Poly& p) const {
  if (p.is_zero()) throw std::invalid_argument("weight of the zero polynomial");
  bool first = true;
  ValueVec best;
  for (const auto& [e, c] : p.terms) {
    ValueVec v = value(e);
    if (first || order_.lt(v, best)) {
      best = v;
      first = false;
    }
  }
  return best;
}

Poly VarWeights::initial_form(const Poly& p) const {
  ValueVec w = weight(p);
  Poly r;
  for (const auto& [e, c] : p.terms)
    if (order_.cmp(value(e), w) == Cmp::EQ) r.terms[e] = c;
  return r;
}

Poly VarWeights::tail_above(const Poly& p, const ValueVec& bound) const {
  Poly r;
  for (const auto& [e, c] : p.terms)
    if (order_.gt(value(e), bound)) r.terms[e] = c;
  return r;
}

Poly VarWeights::truncate_above(const Poly& p, const ValueVec& bound) const {
  Poly r;
  for (const auto& [e, c] : p.terms)
    if (!order_.gt(value(e), bound)) r.terms[e] = c;
  return r;
}

Cmp cmp_monomial(const VarWeights& vw, const Expo& a, const Expo& b) {
  Cmp c = vw.order().cmp(vw.value(a), vw.value(b));
  if (c != Cmp::EQ) return c;
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db ? Cmp::LT : Cmp::GT;
  if (a < b) return Cmp::LT;
  if (b < a) return Cmp::GT;
  return Cmp::EQ;
}

namespace {

int find_var(const std::vector<std::string>& names, const std::string& s) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<int>(i);
  return -1;
}

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& var_names,
                const Field& f) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  const int nv = static_cast<int>(var_names.size());
  Poly result = Poly::zero();

  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("dangling sign in polynomial: " + text);
    // One term: factors joined by '*'.
    mpq_class coef(sign);
    Expo e(static_cast<size_t>(nv), 0);
    bool more = true;
    while (more) {
      size_t j = i;
      while (j < s.size() && s[j] != '*' && s[j] != '+' && s[j] != '-') ++j;
      std::string factor = s.substr(i, j - i);
      if (factor.empty()) throw std::invalid_argument("empty factor in polynomial: " + text);
      std::string base = factor;
      int exp = 1;
      auto caret = factor.find('^');
      if (caret != std::string::npos) {
        base = factor.substr(0, caret);
        exp = std::stoi(factor.substr(caret + 1));
        if (exp < 0) throw std::invalid_argument("negative exponent in polynomial: " + text);
      }
      int v = find_var(var_names, base);
      if (v >= 0) {
        e[static_cast<size_t>(v)] += exp;
      } else {
        if (caret != std::string::npos)
          throw std::invalid_argument("unknown variable in polynomial: " + base);
        coef *= parse_rational(base);
      }
      i = j;
      more = i < s.size() && s[i] == '*';
      if (more) ++i;
    }
    result = poly_add(f, result, Poly::monomial(std::move(e), coef, f));
  }
  return result;
}

std::string print_poly(const Poly& p, const std::vector<std::string>& var_names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    mpq_class a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (a != 1 || expo_is_zero(e)) {
      os << a.get_str();
      printed = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << var_names[i];
      if (e[i] != 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace valtoric
