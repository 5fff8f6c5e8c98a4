#include "valtoric/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace valtoric {

TSeries TSeries::zero(long trust) {
  TSeries s;
  s.trust = trust;
  s.c.assign(static_cast<size_t>(trust) + 1, mpq_class(0));
  return s;
}

TSeries TSeries::monomial(long k, const mpq_class& coeff, long trust) {
  TSeries s = zero(trust);
  if (k <= trust) s.c[static_cast<size_t>(k)] = coeff;
  return s;
}

std::optional<long> TSeries::ord(const Field& f) const {
  for (size_t k = 0; k < c.size(); ++k)
    if (!f.is_zero(c[k])) return static_cast<long>(k);
  return std::nullopt;
}

TSeries ts_add(const Field& f, const TSeries& a, const TSeries& b) {
  TSeries r = TSeries::zero(std::min(a.trust, b.trust));
  for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = f.add(a.c[k], b.c[k]);
  return r;
}

TSeries ts_scale(const Field& f, const mpq_class& s, const TSeries& a) {
  TSeries r = a;
  for (auto& x : r.c) x = f.mul(s, x);
  return r;
}

TSeries ts_mul(const Field& f, const TSeries& a, const TSeries& b) {
  // Trust of the product: min(trust_a + ord_b, trust_b + ord_a), capped.
  auto oa = a.ord(f), ob = b.ord(f);
  long ta = a.trust + (ob ? *ob : b.trust + 1);
  long tb = b.trust + (oa ? *oa : a.trust + 1);
  long trust = std::min({ta, tb, a.trust + b.trust});
  if (!oa || !ob) {  // one factor vanishes within trust
    return TSeries::zero(std::max(trust, std::max(a.trust, b.trust)));
  }
  TSeries r = TSeries::zero(trust);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size() && i + j < r.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
    }
  }
  return r;
}

TSeries ts_pow(const Field& f, const TSeries& a, long n) {
  if (n < 0) throw std::invalid_argument("ts_pow: negative exponent");
  TSeries r = TSeries::monomial(0, 1, a.trust);
  TSeries base = a;
  while (n > 0) {
    if (n & 1) r = ts_mul(f, r, base);
    n >>= 1;
    if (n) base = ts_mul(f, base, base);
  }
  return r;
}

TSeries ts_inv(const Field& f, const TSeries& a) {
  if (f.is_zero(a.c.empty() ? mpq_class(0) : a.c[0]))
    throw std::domain_error("ts_inv: constant term vanishes");
  TSeries r = TSeries::zero(a.trust);
  mpq_class c0inv = f.inv(a.c[0]);
  r.c[0] = c0inv;
  for (size_t k = 1; k < r.c.size(); ++k) {
    mpq_class acc(0);
    for (size_t j = 1; j <= k && j < a.c.size(); ++j)
      acc = f.add(acc, f.mul(a.c[j], r.c[k - j]));
    r.c[k] = f.neg(f.mul(c0inv, acc));
  }
  return r;
}

TSeries ts_eval(const Field& f, const Poly& p, const std::vector<TSeries>& args) {
  long trust = args.empty() ? 0 : args[0].trust;
  for (const auto& a : args) trust = std::min(trust, a.trust);
  std::vector<long> ord(args.size(), 0);
  for (size_t i = 0; i < args.size(); ++i) {
    auto o = args[i].ord(f);
    ord[i] = o ? *o : args[i].trust + 1;
  }
  TSeries acc = TSeries::zero(trust);
  std::vector<std::map<int, TSeries>> powers(args.size());
  std::function<const TSeries&(size_t, int)> power_of = [&](size_t i, int e) -> const TSeries& {
    auto it = powers[i].find(e);
    if (it != powers[i].end()) return it->second;
    TSeries v = e == 1 ? args[i] : ts_mul(f, power_of(i, e / 2), power_of(i, e - e / 2));
    return powers[i].emplace(e, std::move(v)).first->second;
  };
  for (const auto& [e, c] : p.terms) {
    // terms of order beyond the trusted range contribute nothing
    long lower = 0;
    for (size_t i = 0; i < e.size(); ++i) lower += static_cast<long>(e[i]) * ord[i];
    if (lower > trust) continue;
    TSeries term = TSeries::monomial(0, c, trust);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) term = ts_mul(f, term, power_of(i, e[i]));
    acc = ts_add(f, acc, term);
  }
  return acc;
}

Parametrization parametrization_oracle(const OverweightSystem& sys, long t_truncation,
                                       int iteration_cap) {
  if (sys.order().ambient_rank() != 1)
    throw std::invalid_argument("parametrization_oracle: needs a rank-one value group (r = 1)");
  if (!sys.validated()) throw std::logic_error("parametrization_oracle: validate first");
  const Field& f = sys.field();
  const int N = sys.nvars();

  ChartReport chart = find_centering_chart(sys, iteration_cap);
  UniformizationCheck uc = check_uniformized(sys, chart);
  if (!uc.ok) throw std::runtime_error("parametrization_oracle: chart not uniformized: " + uc.failure);
  if (chart.local_coords.size() != 1)
    throw std::logic_error("parametrization_oracle: expected one local coordinate");
  const int tvar = chart.local_coords[0];
  const long tweight = [&] {
    mpq_class w = chart.y_weights[static_cast<size_t>(tvar)][0];
    if (w.get_den() != 1 || w <= 0)
      throw std::logic_error("parametrization_oracle: non-integral local weight");
    return mpz_get_si(w.get_num().get_mpz_t());
  }();

  std::vector<int> zero_vars;
  for (int i = 0; i < N; ++i)
    if (i != tvar) zero_vars.push_back(i);
  const size_t z = zero_vars.size();

  // Select z equations whose jacobian w.r.t. the zero-weight variables is
  // invertible at the boundary point (full system is consistent; extras are
  // verified at the end).
  const auto& eqs = chart.transform.equations;
  auto eval_at_point = [&](const Poly& p) {
    mpq_class v(0);
    for (const auto& [e, c] : p.terms) {
      mpq_class term = c;
      for (int i = 0; i < N; ++i) {
        if (i == tvar && e[static_cast<size_t>(i)] > 0) {
          term = 0;
          break;
        }
        for (int q = 0; q < e[static_cast<size_t>(i)]; ++q)
          term = f.mul(term, chart.boundary_point[static_cast<size_t>(i)]);
      }
      v = f.add(v, term);
    }
    return v;
  };

  std::vector<std::vector<mpq_class>> jac_full(eqs.size(), std::vector<mpq_class>(z));
  for (size_t l = 0; l < eqs.size(); ++l)
    for (size_t k = 0; k < z; ++k)
      jac_full[l][k] = eval_at_point(poly_derivative(f, eqs[l].strict, zero_vars[k]));

  // Greedy row selection to an invertible z x z matrix (field Gaussian).
  std::vector<size_t> rows;
  {
    std::vector<std::vector<mpq_class>> m;
    for (size_t l = 0; l < eqs.size() && rows.size() < z; ++l) {
      m.push_back(jac_full[l]);
      // rank test
      auto g = m;
      size_t rank = 0;
      for (size_t col = 0; col < z && rank < g.size(); ++col) {
        size_t piv = rank;
        while (piv < g.size() && f.is_zero(g[piv][col])) ++piv;
        if (piv == g.size()) continue;
        std::swap(g[rank], g[piv]);
        for (size_t i = 0; i < g.size(); ++i) {
          if (i == rank || f.is_zero(g[i][col])) continue;
          mpq_class fac = f.div(g[i][col], g[rank][col]);
          for (size_t j = 0; j < z; ++j) g[i][j] = f.sub(g[i][j], f.mul(fac, g[rank][j]));
        }
        ++rank;
      }
      if (rank == m.size())
        rows.push_back(l);
      else
        m.pop_back();
    }
    if (rows.size() != z)
      throw std::runtime_error("parametrization_oracle: jacobian selection failed");
  }

  // Invert the selected jacobian over the field.
  std::vector<std::vector<mpq_class>> Jinv(z, std::vector<mpq_class>(z, 0));
  {
    std::vector<std::vector<mpq_class>> m(z, std::vector<mpq_class>(2 * z, 0));
    for (size_t i = 0; i < z; ++i) {
      for (size_t j = 0; j < z; ++j) m[i][j] = jac_full[rows[i]][j];
      m[i][z + i] = 1;
    }
    for (size_t col = 0; col < z; ++col) {
      size_t piv = col;
      while (piv < z && f.is_zero(m[piv][col])) ++piv;
      if (piv == z) throw std::logic_error("parametrization_oracle: singular jacobian");
      std::swap(m[col], m[piv]);
      mpq_class d = f.inv(m[col][col]);
      for (size_t j = 0; j < 2 * z; ++j) m[col][j] = f.mul(d, m[col][j]);
      for (size_t i = 0; i < z; ++i) {
        if (i == col || f.is_zero(m[i][col])) continue;
        mpq_class fac = m[i][col];
        for (size_t j = 0; j < 2 * z; ++j) m[i][j] = f.sub(m[i][j], f.mul(fac, m[col][j]));
      }
    }
    for (size_t i = 0; i < z; ++i)
      for (size_t j = 0; j < z; ++j) Jinv[i][j] = m[i][z + j];
  }

  // Hensel lifting: y(t) with y_tvar = t^{tweight}, other coordinates
  // starting at the boundary point, correcting order by order.
  const long T = t_truncation;
  std::vector<TSeries> y(static_cast<size_t>(N), TSeries::zero(T));
  y[static_cast<size_t>(tvar)] = TSeries::monomial(tweight, 1, T);
  for (size_t k = 0; k < z; ++k)
    y[static_cast<size_t>(zero_vars[k])] =
        TSeries::monomial(0, chart.boundary_point[static_cast<size_t>(zero_vars[k])], T);

  for (long deg = 1; deg <= T; ++deg) {
    std::vector<mpq_class> resid(z);
    bool any = false;
    for (size_t i = 0; i < z; ++i) {
      TSeries val = ts_eval(f, eqs[rows[i]].strict, y);
      resid[i] = deg < static_cast<long>(val.c.size()) ? val.c[static_cast<size_t>(deg)]
                                                       : mpq_class(0);
      if (!f.is_zero(resid[i])) any = true;
    }
    if (!any) continue;
    for (size_t k = 0; k < z; ++k) {
      mpq_class delta(0);
      for (size_t i = 0; i < z; ++i) delta = f.add(delta, f.mul(Jinv[k][i], resid[i]));
      delta = f.neg(delta);
      if (!f.is_zero(delta))
        y[static_cast<size_t>(zero_vars[k])].c[static_cast<size_t>(deg)] =
            f.add(y[static_cast<size_t>(zero_vars[k])].c[static_cast<size_t>(deg)], delta);
    }
  }

  // Verify every transformed equation vanishes within trust.
  for (size_t l = 0; l < eqs.size(); ++l) {
    TSeries val = ts_eval(f, eqs[l].strict, y);
    if (val.ord(f)) {
      std::ostringstream os;
      os << "parametrization_oracle: lifting obstruction in transformed equation " << (l + 1)
         << " at order " << *val.ord(f);
      throw std::runtime_error(os.str());
    }
  }

  // Pull back: u_i(t) = prod_j y_j^{a^j_i}.
  Parametrization par{std::vector<TSeries>(static_cast<size_t>(N), TSeries::zero(T)), {}, chart};
  for (int i = 0; i < N; ++i) {
    TSeries u = TSeries::monomial(0, 1, T);
    for (int j = 0; j < N; ++j) {
      long e = mpz_get_si(chart.cone.rays[static_cast<size_t>(j)][static_cast<size_t>(i)].get_mpz_t());
      if (e) u = ts_mul(f, u, ts_pow(f, y[static_cast<size_t>(j)], e));
    }
    par.u[static_cast<size_t>(i)] = u;
    auto o = u.ord(f);
    mpq_class gamma = sys.weights().weights()[static_cast<size_t>(i)][0];
    if (!o || mpq_class(*o) != gamma)
      throw std::runtime_error("parametrization_oracle: pulled-back order mismatch for " +
                               sys.var_names()[static_cast<size_t>(i)]);
    par.orders.push_back(mpz_class(*o));
  }

  // Original equations must vanish within the trusted range.
  for (size_t l = 0; l < sys.equations().size(); ++l) {
    TSeries val = ts_eval(f, sys.equations()[l], par.u);
    if (val.ord(f))
      throw std::runtime_error("parametrization_oracle: equation " + std::to_string(l + 1) +
                               " does not vanish on the parametrization");
  }
  return par;
}

std::optional<long> oracle_ord(const Field& f, const Poly& poly, const Parametrization& par) {
  TSeries val = ts_eval(f, poly, par.u);
  return val.ord(f);
}

}  // namespace valtoric
