#include "valtoric/semigroup.hpp"

#include <algorithm>
#include <numeric>

namespace valtoric {

AffineSemigroup::AffineSemigroup(std::vector<ValueVec> g, MonomialOrder o)
    : gens(std::move(g)), order(std::move(o)) {
  for (const auto& v : gens) {
    if (static_cast<int>(v.size()) != order.ambient_rank())
      throw std::invalid_argument("semigroup: generator dimension mismatch");
    if (!order.positive(v))
      throw std::invalid_argument("semigroup: generators must be strictly positive");
  }
}

PositiveFunctional::PositiveFunctional(const MonomialOrder& order,
                                       const std::vector<ValueVec>& must_be_positive)
    : order_(&order), eps_(1) {
  for (;;) {
    bool ok = true;
    for (const auto& v : must_be_positive) {
      if ((*this)(v).sign() <= 0) {
        ok = false;
        break;
      }
    }
    if (ok) return;
    eps_ /= 2;
    if (eps_.get_den() > mpz_class("1000000000000000000000000000000"))
      throw std::logic_error("positive functional: no epsilon found (input not order-positive?)");
  }
}

QuadExt PositiveFunctional::operator()(const ValueVec& v) const {
  QuadExt acc(mpq_class(0));
  mpq_class scale(1);
  for (int k = 0; k < order_->height(); ++k) {
    acc = acc + scale * order_->row_value(k, v);
    scale *= eps_;
  }
  return acc;
}

namespace {

// Clears denominators: returns integer vectors lambda*v.
std::vector<ZVec> scale_to_integers(const std::vector<ValueVec>& vs, mpz_class* lambda_out) {
  mpz_class lambda = 1;
  for (const auto& v : vs)
    for (const auto& x : v) lambda = lcm(lambda, x.get_den());
  std::vector<ZVec> out;
  for (const auto& v : vs) {
    ZVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      mpq_class q = v[i] * lambda;
      w[i] = q.get_num();
    }
    out.push_back(std::move(w));
  }
  if (lambda_out) *lambda_out = lambda;
  return out;
}

bool search(const AffineSemigroup& s, const PositiveFunctional& f, size_t idx, ValueVec rest,
            ZVec& coeffs) {
  if (s.order.is_zero_value(rest)) {
    for (size_t j = idx; j < coeffs.size(); ++j) coeffs[j] = 0;
    return true;
  }
  if (idx == s.gens.size()) return false;
  if (f(rest).sign() < 0) return false;
  // Upper bound for the coefficient of gens[idx]: f(rest - c*g) >= 0.
  const QuadExt fg = f(s.gens[idx]);
  const QuadExt fr = f(rest);
  mpz_class cmax = floor_int(fr / fg);
  for (mpz_class c = cmax; c >= 0; --c) {
    coeffs[idx] = c;
    ValueVec next = rest;
    for (size_t i = 0; i < next.size(); ++i) next[i] -= c * s.gens[idx][i];
    if (search(s, f, idx + 1, std::move(next), coeffs)) return true;
  }
  return false;
}

}  // namespace

std::optional<ZVec> membership(const AffineSemigroup& s, const ValueVec& v) {
  if (static_cast<int>(v.size()) != s.order.ambient_rank())
    throw std::invalid_argument("membership: dimension mismatch");
  ZVec coeffs(s.gens.size(), 0);
  if (s.order.is_zero_value(v)) return coeffs;  // all-zero witness
  if (s.order.negative(v)) return std::nullopt;
  PositiveFunctional f(s.order, s.gens);
  if (search(s, f, 0, v, coeffs)) return coeffs;
  return std::nullopt;
}

AffineSemigroup minimal_generators(const AffineSemigroup& s) {
  // Kept generators sorted ascending so removal is deterministic.
  std::vector<ValueVec> gens = s.gens;
  std::sort(gens.begin(), gens.end(),
            [&](const ValueVec& a, const ValueVec& b) { return s.order.lt(a, b); });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (size_t i = gens.size(); i-- > 0;) {
    std::vector<ValueVec> others;
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (others.empty()) continue;
    AffineSemigroup rest(others, s.order);
    if (membership(rest, gens[i]).has_value()) gens.erase(gens.begin() + static_cast<long>(i));
  }
  return AffineSemigroup(gens, s.order);
}

GroupIndex group_index(const std::vector<ValueVec>& A, const std::vector<ValueVec>& B) {
  std::vector<ValueVec> all = A;
  all.insert(all.end(), B.begin(), B.end());
  mpz_class lambda;
  std::vector<ZVec> scaled = scale_to_integers(all, &lambda);
  std::vector<ZVec> za(scaled.begin(), scaled.begin() + static_cast<long>(A.size()));
  std::vector<ZVec> zb(scaled.begin() + static_cast<long>(A.size()), scaled.end());
  LatticeIndex li = lattice_index(za, zb);
  GroupIndex out;
  out.finite = li.finite;
  if (li.finite) out.index = li.index;
  return out;
}

namespace {

// Least n >= 1 with n*delta in the lattice spanned by gens; requires delta
// to lie in the rational span (finite index), else returns 0.
mpz_class least_multiple_in_lattice(const std::vector<ZVec>& gens, const ZVec& delta) {
  if (gens.empty()) return 0;
  const size_t n = delta.size();
  ZMat A(n, ZVec(gens.size(), 0));
  for (size_t j = 0; j < gens.size(); ++j)
    for (size_t i = 0; i < n; ++i) A[i][j] = gens[j][i];
  SmithForm s = smith_normal_form(A);
  ZVec ud = zmat_apply(s.U, delta);
  mpz_class m = 1;
  for (size_t i = 0; i < n; ++i) {
    if (i < static_cast<size_t>(s.rank)) {
      // need n*ud_i divisible by d_i
      mpz_class g = gcd(ud[i], s.D[i][i]);
      mpz_class need;
      mpz_divexact(need.get_mpz_t(), s.D[i][i].get_mpz_t(), g.get_mpz_t());
      m = lcm(m, need);
    } else if (ud[i] != 0) {
      return 0;  // not in the rational span
    }
  }
  return m;
}

}  // namespace

Presentation presentation(const std::vector<ValueVec>& gamma0_basis,
                          const std::vector<ValueVec>& deltas, const MonomialOrder& order) {
  const int r = order.ambient_rank();
  for (const auto& b : gamma0_basis)
    if (static_cast<int>(b.size()) != r) throw std::invalid_argument("presentation: bad basis");
  {
    std::vector<std::vector<mpq_class>> m;
    for (const auto& b : gamma0_basis) m.push_back(b);
    if (rational_rank(m) != static_cast<int>(gamma0_basis.size()))
      throw std::invalid_argument("presentation: Gamma_0 basis is not free");
  }

  std::vector<ValueVec> all = gamma0_basis;
  all.insert(all.end(), deltas.begin(), deltas.end());
  mpz_class lambda;
  std::vector<ZVec> scaled = scale_to_integers(all, &lambda);
  std::vector<ZVec> basis(scaled.begin(), scaled.begin() + static_cast<long>(gamma0_basis.size()));
  std::vector<ZVec> zdeltas(scaled.begin() + static_cast<long>(gamma0_basis.size()), scaled.end());

  Presentation out;
  std::vector<ZVec> lower = basis;  // generators of Phi_i^-
  for (size_t i = 0; i < zdeltas.size(); ++i) {
    PresentationRow row;
    row.n = least_multiple_in_lattice(lower, zdeltas[i]);
    if (row.n == 0) throw std::invalid_argument("presentation: infinite index");
    // Integer expression n*delta_i = sum over lower generators.
    ZVec target(zdeltas[i].size());
    for (size_t k = 0; k < target.size(); ++k) target[k] = row.n * zdeltas[i][k];
    auto sol = lattice_solve(lower, target);
    if (!sol) throw std::logic_error("presentation: internal solve failure");
    ZVec phi_coords(basis.size(), 0);
    std::vector<mpz_class> tcoef(i, 0);
    for (size_t j = 0; j < basis.size(); ++j) phi_coords[j] = (*sol)[j];
    for (size_t j = 0; j < i; ++j) tcoef[j] = (*sol)[basis.size() + j];

    // Reduce each t_k into [0, n_k), folding the quotient through the
    // relation n_k*delta_k = phi0^(k) + sum t^(k)*delta_j. Reduce from the
    // highest index down; the loop re-runs until everything is in range.
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t k = i; k-- > 0;) {
        const mpz_class& nk = out.rows[k].n;
        mpz_class q, t;
        mpz_fdiv_qr(q.get_mpz_t(), t.get_mpz_t(), tcoef[k].get_mpz_t(), nk.get_mpz_t());
        if (q == 0) continue;
        tcoef[k] = t;
        for (size_t j = 0; j < basis.size(); ++j)
          phi_coords[j] += q * out.rows[k].phi0_coords[j];
        for (const auto& [idx, tv] : out.rows[k].t) tcoef[static_cast<size_t>(idx)] += q * tv;
        changed = true;
      }
    }

    row.phi0_coords = phi_coords;
    row.r_part.assign(basis.size(), 0);
    row.s_part.assign(basis.size(), 0);
    for (size_t j = 0; j < basis.size(); ++j) {
      if (phi_coords[j] >= 0)
        row.r_part[j] = phi_coords[j];
      else
        row.s_part[j] = -phi_coords[j];
    }
    row.phi0 = vv_zero(r);
    for (size_t j = 0; j < basis.size(); ++j)
      for (int k = 0; k < r; ++k) row.phi0[static_cast<size_t>(k)] += phi_coords[j] * gamma0_basis[j][static_cast<size_t>(k)];
    for (size_t j = 0; j < i; ++j)
      if (tcoef[j] != 0) row.t[static_cast<int>(j)] = tcoef[j];

    out.rows.push_back(std::move(row));
    lower.push_back(zdeltas[i]);
  }
  return out;
}

mpz_class conductor(const std::vector<mpz_class>& gens) {
  if (gens.empty()) throw std::invalid_argument("conductor: no generators");
  mpz_class g = 0;
  for (const auto& x : gens) {
    if (x <= 0) throw std::invalid_argument("conductor: generators must be positive");
    g = gcd(g, x);
  }
  if (g != 1) throw std::invalid_argument("conductor: gcd of generators is not 1");
  unsigned long gmin = mpz_get_ui(gens[0].get_mpz_t());
  std::vector<unsigned long> gs;
  for (const auto& x : gens) {
    gs.push_back(mpz_get_ui(x.get_mpz_t()));
    gmin = std::min(gmin, gs.back());
  }
  if (gmin == 1) return 0;
  // Grow the bound until a run of gmin consecutive members appears; the run
  // start is the conductor.
  for (unsigned long bound = 4 * (*std::max_element(gs.begin(), gs.end()));; bound *= 2) {
    std::vector<char> in(bound + 1, 0);
    in[0] = 1;
    for (unsigned long v = 1; v <= bound; ++v)
      for (unsigned long gg : gs)
        if (v >= gg && in[v - gg]) {
          in[v] = 1;
          break;
        }
    unsigned long run = 0;
    for (unsigned long v = 1; v <= bound; ++v) {
      run = in[v] ? run + 1 : 0;
      if (run == gmin) return mpz_class(static_cast<long>(v - gmin + 1));
    }
  }
}

bool translation_hypothesis(const AffineSemigroup& gamma, const std::vector<ValueVec>& deltas,
                            const mpz_class& d, const ValueVec& gamma_elt) {
  if (!membership(gamma, gamma_elt)) return false;
  for (const auto& delta : deltas) {
    ValueVec v = gamma_elt;
    for (size_t i = 0; i < v.size(); ++i) v[i] += d * delta[i];
    if (!membership(gamma, v)) return false;
  }
  return true;
}

namespace {

// target = alpha*a + beta*b over Z (basis has |det| = 1).
std::optional<std::pair<mpz_class, mpz_class>> solve2(const ZVec& a, const ZVec& b,
                                                      const ZVec& target) {
  mpz_class det = a[0] * b[1] - a[1] * b[0];
  if (det == 0) return std::nullopt;
  mpz_class alpha_num = target[0] * b[1] - target[1] * b[0];
  mpz_class beta_num = a[0] * target[1] - a[1] * target[0];
  if (alpha_num % det != 0 || beta_num % det != 0) return std::nullopt;
  return std::make_pair(alpha_num / det, beta_num / det);
}

bool contains2(const ZVec& a, const ZVec& b, const ZVec& target) {
  auto s = solve2(a, b, target);
  return s && s->first >= 0 && s->second >= 0;
}

}  // namespace

JacobiPerronChain jacobi_perron_chain(const MonomialOrder& order,
                                      const std::pair<ZVec, ZVec>& base,
                                      const std::vector<ZVec>& targets, int iteration_cap) {
  if (order.ambient_rank() != 2 || order.height() != 1)
    throw std::invalid_argument("jacobi_perron_chain: needs a rank-one order on Z^2");
  const QuadExt w1 = order.row_value(0, ValueVec{1, 0});
  const QuadExt w2 = order.row_value(0, ValueVec{0, 1});
  if (w1.sign() <= 0 || w2.sign() <= 0)
    throw std::invalid_argument("jacobi_perron_chain: weights must be positive");
  QuadExt theta = w2 / w1;
  if (theta.is_rational())
    throw std::invalid_argument("jacobi_perron_chain: w2/w1 must be irrational");

  auto value_positive = [&](const ZVec& v) {
    return order.row_value(0, ValueVec{mpq_class(v[0]), mpq_class(v[1])}).sign() > 0;
  };
  for (const auto& t : targets)
    if (!value_positive(t))
      throw std::invalid_argument("jacobi_perron_chain: target not order-positive");
  if (!value_positive(base.first) || !value_positive(base.second) ||
      abs(base.first[0] * base.second[1] - base.first[1] * base.second[0]) != 1)
    throw std::invalid_argument("jacobi_perron_chain: base must be a positive unimodular pair");

  JacobiPerronChain chain;
  JacobiPerronStep first;
  first.gen_a = base.first;
  first.gen_b = base.second;
  first.det = base.first[0] * base.second[1] - base.first[1] * base.second[0];
  chain.steps.push_back(first);

  // Continued-fraction convergents p_h/q_h of theta; positions 0,1 hold the
  // seed values p_{-2} = 0, p_{-1} = 1 (and q_{-2} = 1, q_{-1} = 0).
  std::vector<mpz_class> p = {0, 1}, q = {1, 0};
  QuadExt th = theta;
  auto push_convergent = [&]() {
    mpz_class a = floor_int(th);
    p.push_back(a * p[p.size() - 1] + p[p.size() - 2]);
    q.push_back(a * q[q.size() - 1] + q[q.size() - 2]);
    QuadExt frac = th - QuadExt(mpq_class(a));
    if (frac.is_zero()) throw std::logic_error("jacobi_perron_chain: slope became rational");
    th = QuadExt(mpq_class(1)) / frac;
  };

  auto all_contained = [&](const ZVec& a, const ZVec& b) {
    for (const auto& t : targets)
      if (!contains2(a, b, t)) return false;
    return true;
  };

  std::vector<int> found(targets.size(), -1);
  auto record_containment = [&](int step) {
    const auto& st = chain.steps[static_cast<size_t>(step)];
    for (size_t i = 0; i < targets.size(); ++i)
      if (found[i] < 0 && contains2(st.gen_a, st.gen_b, targets[i])) found[i] = step;
  };
  record_containment(0);
  if (all_contained(first.gen_a, first.gen_b)) {
    chain.containment_step = found;
    return chain;
  }

  int emitted = 0;
  for (int h = 0; emitted < iteration_cap && h < 4 * iteration_cap; h += 2) {
    while (p.size() < static_cast<size_t>(h) + 4) push_convergent();
    // Convergent pair bracketing theta: p_h/q_h below (h even), p_{h+1}/q_{h+1} above.
    ZVec A = {-p[static_cast<size_t>(h) + 2], q[static_cast<size_t>(h) + 2]};
    ZVec B = {p[static_cast<size_t>(h) + 3], -q[static_cast<size_t>(h) + 3]};
    const auto& prev = chain.steps.back();
    auto ca = solve2(A, B, prev.gen_a);
    auto cb = solve2(A, B, prev.gen_b);
    if (!ca || !cb || ca->first < 0 || ca->second < 0 || cb->first < 0 || cb->second < 0)
      continue;  // previous basis not yet inside this approximation
    JacobiPerronStep st;
    st.gen_a = A;
    st.gen_b = B;
    st.det = A[0] * B[1] - A[1] * B[0];
    st.old_in_new = {{ca->first, ca->second}, {cb->first, cb->second}};
    chain.steps.push_back(st);
    ++emitted;
    record_containment(static_cast<int>(chain.steps.size()) - 1);
    if (all_contained(A, B)) {
      chain.containment_step = found;
      return chain;
    }
  }
  throw std::runtime_error(
      "jacobi_perron_chain: iteration cap reached (target not order-positive or arithmetic bug)");
}

}  // namespace valtoric
