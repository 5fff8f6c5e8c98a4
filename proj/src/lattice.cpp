#include "valtoric/lattice.hpp"

#include <algorithm>
#include <functional>

namespace valtoric {

std::pair<Expo, Expo> RelationLattice::split(const ZVec& v) {
  Expo m(v.size(), 0), n(v.size(), 0);
  for (size_t i = 0; i < v.size(); ++i) {
    long x = mpz_get_si(v[i].get_mpz_t());
    if (x > 0)
      m[i] = static_cast<int>(x);
    else
      n[i] = static_cast<int>(-x);
  }
  return {m, n};
}

namespace {

ZMat weight_matrix(const std::vector<ValueVec>& gamma, int rank) {
  mpz_class den = 1;
  for (const auto& g : gamma)
    for (const auto& x : g) den = lcm(den, x.get_den());
  ZMat m(static_cast<size_t>(rank), ZVec(gamma.size(), 0));
  for (size_t i = 0; i < gamma.size(); ++i) {
    if (static_cast<int>(gamma[i].size()) != rank)
      throw std::invalid_argument("weight map: dimension mismatch");
    for (int k = 0; k < rank; ++k) {
      mpq_class q = gamma[i][static_cast<size_t>(k)] * den;
      m[static_cast<size_t>(k)][i] = q.get_num();
    }
  }
  return m;
}

}  // namespace

RelationLattice relation_lattice(const std::vector<ValueVec>& gamma, int rank) {
  RelationLattice out;
  out.nvars = static_cast<int>(gamma.size());
  out.weight_map = gamma;
  out.gens = integer_kernel(weight_matrix(gamma, rank));
  return out;
}

bool saturation_check(const RelationLattice& lattice) { return lattice_saturated(lattice.gens); }

namespace {

void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_rec(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TameProjection tame_projection(const std::vector<ValueVec>& gamma, int rank, unsigned long p) {
  const int N = static_cast<int>(gamma.size());
  if (N > 16) throw std::invalid_argument("tame_projection: too many generators (N > 16)");
  ZMat W = weight_matrix(gamma, rank);  // rank x N
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  subsets_rec(N, rank, 0, cur, subsets);

  TameProjection out;
  bool have = false;
  mpz_class pp(static_cast<long>(p));
  for (const auto& sub : subsets) {
    ZMat M(static_cast<size_t>(rank), ZVec(static_cast<size_t>(rank)));
    for (int a = 0; a < rank; ++a)
      for (int b = 0; b < rank; ++b)
        M[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            W[static_cast<size_t>(a)][static_cast<size_t>(sub[static_cast<size_t>(b)])];
    mpz_class d = zmat_det(M);
    out.minors.emplace_back(sub, d);
    if (!have && d != 0 && (p == 0 || d % pp != 0)) {
      have = true;
      out.chosen = sub;
      out.chosen_index = abs(d);
    }
  }
  if (!have)
    throw std::runtime_error(
        "tame_projection: no tame choice; either the weight map is not surjective or the "
        "relation lattice is not saturated (ideal not prime)");
  return out;
}

OverweightSystem make_binomial_system(std::vector<std::string> var_names,
                                      std::vector<ValueVec> gamma, MonomialOrder order,
                                      Field field, std::vector<BinomialPair> pairs) {
  std::vector<Poly> eqs;
  std::vector<std::optional<BinomialPair>> designated;
  for (const auto& bp : pairs) {
    Poly f = poly_add(field, Poly::monomial(bp.m, 1, field),
                      Poly::monomial(bp.n, field.neg(bp.lambda), field));
    eqs.push_back(f);
    designated.push_back(bp);
  }
  // A generous truncation; pure binomial systems never reach it.
  ValueVec trunc = vv_zero(order.ambient_rank());
  for (const auto& g : gamma)
    for (size_t k = 0; k < trunc.size(); ++k) trunc[k] += 1000 * abs(g[k]);
  VarWeights vw(std::move(gamma), order);
  OverweightSystem sys(std::move(var_names), std::move(vw), field, std::move(eqs),
                       std::move(designated), std::move(trunc));
  auto report = sys.validate(/*require_full_lattice=*/false);
  if (!report.valid) {
    std::string msg = "binomial system invalid:";
    for (const auto& s : report.failures) msg += " " + s;
    throw std::invalid_argument(msg);
  }
  return sys;
}

JacobianCongruence jacobian_congruence_check(const OverweightSystem& sys,
                                             const std::vector<int>& G,
                                             const std::vector<int>& Lprime) {
  if (G.size() != Lprime.size())
    throw std::invalid_argument("jacobian congruence: |G| must equal |L'|");
  const Field& f = sys.field();
  const int nv = sys.nvars();
  const size_t c = G.size();
  JacobianCongruence out;
  out.minor = 0;
  if (c == 0) {  // empty minor: both sides are the empty product times det = 1... the
    // congruence degenerates to 1*1 - 1*1 = 0.
    out.minor = 1;
    out.holds = true;
    return out;
  }

  const auto& pairs = sys.binomials();
  // Jacobian matrix of the chosen binomials w.r.t. the chosen variables.
  std::vector<std::vector<Poly>> jac(c, std::vector<Poly>(c));
  ZMat mn(c, ZVec(c));
  for (size_t a = 0; a < c; ++a) {
    const BinomialPair& bp = pairs.at(static_cast<size_t>(Lprime[a]));
    Poly F = poly_add(f, Poly::monomial(bp.m, 1, f),
                      Poly::monomial(bp.n, f.neg(bp.lambda), f));
    for (size_t b = 0; b < c; ++b) {
      jac[a][b] = poly_derivative(f, F, G[b]);
      mn[a][b] = bp.m[static_cast<size_t>(G[b])] - bp.n[static_cast<size_t>(G[b])];
    }
  }
  // Symbolic determinant by cofactor expansion (c is small).
  std::vector<size_t> rows(c);
  for (size_t i = 0; i < c; ++i) rows[i] = i;
  std::function<Poly(std::vector<size_t>, size_t)> det = [&](std::vector<size_t> rr,
                                                             size_t col) -> Poly {
    if (rr.size() == 1) return jac[rr[0]][col];
    Poly acc = Poly::zero();
    for (size_t k = 0; k < rr.size(); ++k) {
      std::vector<size_t> rest;
      for (size_t l = 0; l < rr.size(); ++l)
        if (l != k) rest.push_back(rr[l]);
      Poly sub = det(rest, col + 1);
      Poly term = poly_mul(f, jac[rr[k]][col], sub);
      if (k % 2) term = poly_scale(f, -1, term);
      acc = poly_add(f, acc, term);
    }
    return acc;
  };
  Poly J = det(rows, 0);
  out.minor = zmat_det(mn);

  // LHS: U_{k_1}...U_{k_c} * J ; RHS: (prod U^{m^l}) * minor
  Expo uk(static_cast<size_t>(nv), 0);
  for (int g : G) uk[static_cast<size_t>(g)] += 1;
  Poly lhs = poly_mul_term(f, J, uk, 1);
  Expo mm(static_cast<size_t>(nv), 0);
  for (int l : Lprime) mm = expo_add(mm, pairs.at(static_cast<size_t>(l)).m);
  Poly rhs = Poly::monomial(mm, f.from_int(out.minor), f);
  Poly diff = poly_sub(f, lhs, rhs);
  out.residue = sys.normal_form(diff);
  out.holds = out.residue.is_zero();
  return out;
}

}  // namespace valtoric
