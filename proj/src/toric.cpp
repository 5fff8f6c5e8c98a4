#include "valtoric/toric.hpp"

#include <algorithm>
#include <sstream>

namespace valtoric {

RegularCone::RegularCone(ZMat r) : rays(std::move(r)) {
  const size_t n = rays.size();
  for (const auto& ray : rays) {
    if (ray.size() != n) throw std::invalid_argument("cone: ray matrix must be square");
    mpz_class g = 0;
    for (const auto& x : ray) {
      if (x < 0) throw std::invalid_argument("cone: rays must be non-negative");
      g = gcd(g, x);
    }
    if (g != 1) throw std::invalid_argument("cone: rays must be primitive");
  }
  mpz_class d = zmat_det(rays);
  if (abs(d) != 1) throw std::invalid_argument("cone: ray matrix must be unimodular");
}

RegularCone RegularCone::identity(int n) { return RegularCone(zmat_identity(n)); }

namespace {

// Solves M x = rhs exactly over Q for square M (one rhs column per ambient
// coordinate handled by the caller).
std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> M,
                                      std::vector<mpq_class> rhs) {
  const size_t n = M.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("solve_rational: singular matrix");
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      mpq_class f = M[i][col] / M[col][col];
      for (size_t j = col; j < n; ++j) M[i][j] -= f * M[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  std::vector<mpq_class> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
  return x;
}

mpz_class dot(const ZVec& a, const Expo& e) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * e[i];
  return s;
}

mpz_class dot_diff(const ZVec& a, const Expo& m, const Expo& n) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * (m[i] - n[i]);
  return s;
}

}  // namespace

std::vector<ValueVec> induced_weights(const RegularCone& cone,
                                      const std::vector<ValueVec>& u_weights,
                                      const MonomialOrder& order) {
  const size_t n = cone.rays.size();
  if (u_weights.size() != n) throw std::invalid_argument("induced_weights: arity mismatch");
  const int r = order.ambient_rank();
  // For each i: sum_j rays[j][i] * wy[j] = wu[i]; solve per ambient coordinate.
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) M[i][j] = mpq_class(cone.rays[j][i]);
  std::vector<ValueVec> wy(n, vv_zero(r));
  for (int k = 0; k < r; ++k) {
    std::vector<mpq_class> rhs(n);
    for (size_t i = 0; i < n; ++i) rhs[i] = u_weights[i][static_cast<size_t>(k)];
    std::vector<mpq_class> col = solve_rational(M, rhs);
    for (size_t j = 0; j < n; ++j) wy[j][static_cast<size_t>(k)] = col[j];
  }
  return wy;
}

bool is_w_centering(const RegularCone& cone, const std::vector<ValueVec>& u_weights,
                    const MonomialOrder& order) {
  for (const auto& w : induced_weights(cone, u_weights, order))
    if (order.negative(w)) return false;
  return true;
}

StrictTransform strict_transform(const OverweightSystem& sys, const RegularCone& cone) {
  const int N = sys.nvars();
  if (cone.dim() != N) throw std::invalid_argument("strict_transform: dimension mismatch");
  StrictTransform out;
  for (const Poly& F : sys.equations()) {
    TransformedEquation te;
    Poly img;
    bool first = true;
    Expo minexp;
    std::vector<std::pair<Expo, mpq_class>> terms;
    for (const auto& [e, c] : F.terms) {
      Expo ne(static_cast<size_t>(N));
      for (int j = 0; j < N; ++j) {
        mpz_class v = dot(cone.rays[static_cast<size_t>(j)], e);
        ne[static_cast<size_t>(j)] = static_cast<int>(mpz_get_si(v.get_mpz_t()));
      }
      if (first) {
        minexp = ne;
        first = false;
      } else {
        minexp = expo_min(minexp, ne);
      }
      terms.emplace_back(std::move(ne), c);
    }
    for (auto& [e, c] : terms) {
      Expo red = expo_sub(e, minexp);
      auto it = img.terms.find(red);
      if (it == img.terms.end())
        img.terms[red] = c;
      else {
        it->second = sys.field().add(it->second, c);
        if (it->second == 0) img.terms.erase(it);
      }
    }
    te.factored = minexp;
    te.strict = img;
    out.equations.push_back(std::move(te));
  }
  return out;
}

namespace {

struct WalkState {
  ZMat rays;

  std::vector<std::vector<mpz_class>> deltas(const std::vector<BinomialPair>& pairs) const {
    std::vector<std::vector<mpz_class>> d(pairs.size(), std::vector<mpz_class>(rays.size()));
    for (size_t l = 0; l < pairs.size(); ++l)
      for (size_t i = 0; i < rays.size(); ++i)
        d[l][i] = dot_diff(rays[i], pairs[l].m, pairs[l].n);
    return d;
  }
};

ZVec primitive(ZVec v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

}  // namespace

ChartReport find_centering_chart(const OverweightSystem& sys, int iteration_cap) {
  if (!sys.validated()) throw std::logic_error("find_centering_chart: validate the system first");
  const int N = sys.nvars();
  const auto& pairs = sys.binomials();
  const auto& uw = sys.weights().weights();
  const MonomialOrder& order = sys.order();

  WalkState st;
  st.rays = zmat_identity(N);

  auto centering = [&](const ZMat& rays) {
    return is_w_centering(RegularCone(ZMat(rays)), uw, order);
  };

  int steps = 0;
  for (;; ++steps) {
    if (steps > iteration_cap) {
      std::ostringstream os;
      os << "find_centering_chart: not found within " << iteration_cap
         << " subdivisions; last cone tried:";
      for (const auto& ray : st.rays) {
        os << " (";
        for (size_t i = 0; i < ray.size(); ++i) os << (i ? "," : "") << ray[i].get_str();
        os << ")";
      }
      throw std::runtime_error(os.str());
    }
    auto d = st.deltas(pairs);
    // Smallest equation with mixed signs.
    int mixed = -1;
    for (size_t l = 0; l < pairs.size() && mixed < 0; ++l) {
      bool pos = false, neg = false;
      for (const auto& x : d[l]) {
        if (x > 0) pos = true;
        if (x < 0) neg = true;
      }
      if (pos && neg) mixed = static_cast<int>(l);
    }
    if (mixed < 0) break;
    // Candidate insertions v = a^i + a^j over mixed pairs; greedy choice of
    // the primitive vector nearest the weight ray (exact comparison of
    // <v,w1>^2/<v,v> where w1 is the leading weight row), ties broken by the
    // lexicographically smallest insertion vector.
    ZVec best;
    int bi = -1, bj = -1;
    QuadExt best_num(mpq_class(0));
    mpz_class best_den = 1;
    std::vector<QuadExt> w1(static_cast<size_t>(N), QuadExt(mpq_class(0)));
    for (int k = 0; k < N; ++k)
      w1[static_cast<size_t>(k)] = order.row_value(0, uw[static_cast<size_t>(k)]);
    for (size_t i = 0; i < st.rays.size(); ++i) {
      if (d[static_cast<size_t>(mixed)][i] >= 0) continue;
      for (size_t j = 0; j < st.rays.size(); ++j) {
        if (d[static_cast<size_t>(mixed)][j] <= 0) continue;
        ZVec v(st.rays[i].size());
        for (size_t k = 0; k < v.size(); ++k) v[k] = st.rays[i][k] + st.rays[j][k];
        v = primitive(std::move(v));
        QuadExt dotw(mpq_class(0));
        mpz_class vv = 0;
        for (size_t k = 0; k < v.size(); ++k) {
          dotw = dotw + mpq_class(v[k]) * w1[k];
          vv += v[k] * v[k];
        }
        QuadExt num = dotw * dotw;  // alignment = num / vv, compare by cross products
        bool better = false;
        if (bi < 0) {
          better = true;
        } else {
          QuadExt lhs = mpq_class(best_den) * num;
          QuadExt rhs = mpq_class(vv) * best_num;
          int c = (lhs - rhs).sign();
          if (c > 0) better = true;
          else if (c == 0 && v < best) better = true;
        }
        if (better) {
          best = v;
          best_num = num;
          best_den = vv;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    }
    // Replace the negative-side ray when the result still contains the
    // center, else the positive-side ray.
    ZMat cand = st.rays;
    cand[static_cast<size_t>(bi)] = best;
    if (centering(cand)) {
      st.rays = cand;
      continue;
    }
    cand = st.rays;
    cand[static_cast<size_t>(bj)] = best;
    if (centering(cand)) {
      st.rays = cand;
      continue;
    }
    throw std::logic_error("find_centering_chart: walk lost the center");
  }

  RegularCone cone(st.rays);
  ChartReport report{cone, induced_weights(cone, uw, order), strict_transform(sys, cone),
                     {}, {}, false, {}, {}};

  // W-rays: orthogonal to every m - n.
  auto d = st.deltas(pairs);
  for (int i = 0; i < N; ++i) {
    bool in_w = true;
    for (size_t l = 0; l < pairs.size(); ++l)
      if (d[l][static_cast<size_t>(i)] != 0) in_w = false;
    if (in_w) report.w_rays.push_back(i);
  }
  for (int i = 0; i < N; ++i)
    if (!order.is_zero_value(report.y_weights[static_cast<size_t>(i)]))
      report.local_coords.push_back(i);

  const int r = order.ambient_rank();
  std::ostringstream verdict;
  if (static_cast<int>(report.w_rays.size()) != r) {
    verdict << "intersection with W has dimension " << report.w_rays.size() << ", expected " << r;
    report.verdict = verdict.str();
    throw std::runtime_error("find_centering_chart: " + report.verdict);
  }
  if (report.local_coords != report.w_rays)
    throw std::runtime_error(
        "find_centering_chart: nonzero weights do not sit on the W-rays");
  {
    // Rational independence of the nonzero induced weights.
    std::vector<std::vector<mpq_class>> m;
    for (int i : report.local_coords) m.push_back(report.y_weights[static_cast<size_t>(i)]);
    if (rational_rank(m) != r)
      throw std::runtime_error(
          "find_centering_chart: induced weights are not rationally independent");
  }
  // Strict positivity on deformation exponents for W-rays.
  for (int i : report.w_rays) {
    for (size_t l = 0; l < pairs.size(); ++l) {
      const Poly& F = sys.equations()[l];
      for (const auto& [e, c] : F.terms) {
        if (e == pairs[l].m || e == pairs[l].n) continue;
        mpz_class vn = dot_diff(st.rays[static_cast<size_t>(i)], e, pairs[l].n);
        if (vn <= 0)
          throw std::runtime_error(
              "find_centering_chart: deformation exponent not strictly inside the dual cone");
      }
    }
  }
  report.verdict = "centering chart found";
  return report;
}

std::optional<mpq_class> field_root(const Field& f, const mpq_class& value, const mpz_class& d) {
  mpq_class v = f.normalize(value);
  if (d <= 0) throw std::invalid_argument("field_root: exponent must be positive");
  if (d == 1) return v;
  if (f.p == 0) {
    if (v == 0) return mpq_class(0);
    bool neg = sgn(v) < 0;
    if (neg && mpz_even_p(d.get_mpz_t())) return std::nullopt;
    mpz_class num = abs(v.get_num()), den = v.get_den(), rn, rd;
    unsigned long dd = mpz_get_ui(d.get_mpz_t());
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), dd)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), dd)) return std::nullopt;
    mpq_class root(rn, rd);
    root.canonicalize();
    return neg ? mpq_class(-root) : root;
  }
  mpz_class pp(static_cast<long>(f.p));
  mpz_class target = v.get_num() % pp;
  if (target < 0) target += pp;
  for (mpz_class c = 0; c < pp; ++c) {
    mpz_class cd;
    mpz_powm(cd.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    if (cd == target) return mpq_class(c);
  }
  return std::nullopt;
}

UniformizationCheck check_uniformized(const OverweightSystem& sys, ChartReport& report) {
  UniformizationCheck out;
  const Field& f = sys.field();
  const MonomialOrder& order = sys.order();
  const int N = sys.nvars();
  VarWeights yw(report.y_weights, order);

  std::vector<int> zero_vars;
  for (int i = 0; i < N; ++i)
    if (order.is_zero_value(report.y_weights[static_cast<size_t>(i)])) zero_vars.push_back(i);
  const size_t z = zero_vars.size();

  // (a) weight-zero binomial part + strictly positive tail, per equation.
  std::vector<Poly> binomial_parts;
  for (size_t l = 0; l < report.transform.equations.size(); ++l) {
    const Poly& S = report.transform.equations[l].strict;
    Poly part0;
    for (const auto& [e, c] : S.terms) {
      ValueVec v = yw.value(e);
      if (order.is_zero_value(v)) {
        part0.terms[e] = c;
      } else if (order.negative(v)) {
        out.failure = "transform has a negative-weight term";
        return out;
      }
    }
    if (part0.terms.size() != 2) {
      out.failure = "equation " + std::to_string(l + 1) +
                    ": weight-zero part is not a binomial (not overweight after transform)";
      return out;
    }
    for (const auto& [e, c] : part0.terms)
      for (int i = 0; i < N; ++i)
        if (e[static_cast<size_t>(i)] != 0 &&
            !order.is_zero_value(report.y_weights[static_cast<size_t>(i)])) {
          out.failure = "weight-zero part involves a positive-weight variable";
          return out;
        }
    binomial_parts.push_back(part0);
  }

  // (b) boundary point: multiplicative system over the zero-weight torus.
  // Each binomial part c*(y^alpha - lambda' y^beta) = 0 with y in the torus
  // reads y^{alpha-beta} = lambda'.
  const size_t s = binomial_parts.size();
  ZMat M(s, ZVec(z, 0));
  std::vector<mpq_class> lambdas(s);
  for (size_t l = 0; l < s; ++l) {
    auto it = binomial_parts[l].terms.begin();
    Expo e1 = it->first;
    mpq_class c1 = it->second;
    ++it;
    Expo e2 = it->first;
    mpq_class c2 = it->second;
    for (size_t k = 0; k < z; ++k)
      M[l][k] = e1[static_cast<size_t>(zero_vars[k])] - e2[static_cast<size_t>(zero_vars[k])];
    lambdas[l] = f.neg(f.div(c2, c1));  // y^{e1-e2} = -c2/c1
  }
  SmithForm snf = smith_normal_form(M);
  if (static_cast<size_t>(snf.rank) != z) {
    out.failure = "boundary system does not cut a single torus point";
    return out;
  }
  // mu_t = prod_l lambda_l^{U[t][l]}; z-coordinates solve z_t^{d_t} = mu_t.
  std::vector<mpq_class> zvals(z);
  for (size_t t = 0; t < s; ++t) {
    mpq_class mu(1);
    for (size_t l = 0; l < s; ++l) {
      mpz_class e = snf.U[t][l];
      if (e == 0) continue;
      mpq_class base = lambdas[l];
      mpz_class ae = abs(e);
      mpq_class pw(1);
      for (mpz_class k = 0; k < ae; ++k) pw = f.mul(pw, base);
      if (e < 0) pw = f.inv(pw);
      mu = f.mul(mu, pw);
    }
    if (t < z) {
      auto root = field_root(f, mu, snf.D[t][t]);
      if (!root || f.is_zero(*root)) {
        std::ostringstream os;
        os << "no boundary point over the field: needs a " << snf.D[t][t].get_str()
           << "-th root of " << mu.get_str();
        out.failure = os.str();
        return out;
      }
      zvals[t] = *root;
    } else if (!f.equal(mu, 1)) {
      out.failure = "boundary system inconsistent over the field";
      return out;
    }
  }
  // y_i = prod_t z_t^{V[i][t]}.
  std::vector<mpq_class> point(static_cast<size_t>(N), 0);
  for (size_t k = 0; k < z; ++k) {
    mpq_class val(1);
    for (size_t t = 0; t < z; ++t) {
      mpz_class e = snf.V[k][t];
      if (e == 0) continue;
      mpq_class base = zvals[t];
      mpz_class ae = abs(e);
      mpq_class pw(1);
      for (mpz_class q = 0; q < ae; ++q) pw = f.mul(pw, base);
      if (e < 0) pw = f.inv(pw);
      val = f.mul(val, pw);
    }
    point[static_cast<size_t>(zero_vars[k])] = val;
  }

  // (c) jacobian of the binomial parts w.r.t. the zero-weight variables at
  // the point: full rank z over the field.
  std::vector<std::vector<mpq_class>> jac(s, std::vector<mpq_class>(z));
  for (size_t l = 0; l < s; ++l)
    for (size_t k = 0; k < z; ++k) {
      Poly dp = poly_derivative(f, binomial_parts[l], zero_vars[k]);
      mpq_class v(0);
      for (const auto& [e, c] : dp.terms) {
        mpq_class term = c;
        for (int i = 0; i < N; ++i)
          for (int q = 0; q < e[static_cast<size_t>(i)]; ++q)
            term = f.mul(term, point[static_cast<size_t>(i)]);
        v = f.add(v, term);
      }
      jac[l][k] = v;
    }
  // Field-exact rank.
  {
    auto m = jac;
    size_t row = 0;
    for (size_t col = 0; col < z && row < m.size(); ++col) {
      size_t piv = row;
      while (piv < m.size() && f.is_zero(m[piv][col])) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[row], m[piv]);
      for (size_t i = 0; i < m.size(); ++i) {
        if (i == row || f.is_zero(m[i][col])) continue;
        mpq_class fac = f.div(m[i][col], m[row][col]);
        for (size_t j = 0; j < z; ++j) m[i][j] = f.sub(m[i][j], f.mul(fac, m[row][j]));
      }
      ++row;
    }
    if (row != z) {
      out.failure = "singular (wild) transform: jacobian of binomial parts is degenerate";
      return out;
    }
  }

  out.ok = true;
  out.local_coords = report.local_coords;
  out.boundary_point = point;
  report.uniformized = true;
  report.boundary_point = point;
  report.verdict = "uniformized";
  return out;
}

}  // namespace valtoric
