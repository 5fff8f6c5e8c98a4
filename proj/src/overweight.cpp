#include "valtoric/overweight.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "valtoric/zmatrix.hpp"

namespace valtoric {

Poly initial_form(const Poly& f, const VarWeights& weights) {
  if (f.is_zero()) throw std::invalid_argument("initial_form: zero input");
  return weights.initial_form(f);
}

OverweightSystem::OverweightSystem(std::vector<std::string> var_names, VarWeights weights,
                                   Field field, std::vector<Poly> equations,
                                   std::vector<std::optional<BinomialPair>> designated,
                                   ValueVec truncation)
    : vars_(std::move(var_names)),
      weights_(std::move(weights)),
      field_(field),
      eqs_(std::move(equations)),
      designated_(std::move(designated)),
      trunc_(std::move(truncation)) {
  if (static_cast<size_t>(weights_.nvars()) != vars_.size())
    throw std::invalid_argument("overweight system: weight count differs from variable count");
  if (designated_.size() != eqs_.size())
    throw std::invalid_argument("overweight system: designated parts count mismatch");
}

OverweightSystem::OverweightSystem(std::vector<std::string> var_names, VarWeights weights,
                                   Field field, std::vector<Poly> equations, ValueVec truncation)
    : OverweightSystem(std::move(var_names), std::move(weights), field, std::move(equations),
                       std::vector<std::optional<BinomialPair>>(equations.size()),
                       std::move(truncation)) {}

const std::vector<BasisElt>& OverweightSystem::rewriting_basis() const {
  if (!validated_) throw std::logic_error("overweight system: validate() first");
  return basis_;
}

bool OverweightSystem::reduce_term_once(Poly& h, std::vector<ReductionStep>* trace) const {
  for (auto it = h.terms.rbegin(); it != h.terms.rend(); ++it) {
    for (size_t bi = 0; bi < basis_.size(); ++bi) {
      const BasisElt& b = basis_[bi];
      if (!expo_divides(b.lead, it->first)) continue;
      Expo shift = expo_sub(it->first, b.lead);
      mpq_class c = it->second;
      // h -= c * u^shift * (u^lead - lambda*u^trail)
      Poly sub;
      sub.terms[expo_add(shift, b.lead)] = c;
      mpq_class lc = field_.mul(c, b.lambda);
      Expo tr = expo_add(shift, b.trail);
      auto jt = sub.terms.find(tr);
      if (jt == sub.terms.end())
        sub.terms[tr] = field_.neg(lc);
      else {
        jt->second = field_.sub(jt->second, lc);
        if (jt->second == 0) sub.terms.erase(jt);
      }
      h = poly_sub(field_, h, sub);
      if (trace) trace->push_back({bi, shift, c});
      return true;
    }
  }
  return false;
}

Poly OverweightSystem::normal_form(Poly h, std::vector<ReductionStep>* trace) const {
  while (reduce_term_once(h, trace)) {
  }
  return h;
}

namespace {

// Binomial normalization: returns lead/trail/lambda of c*(u^a - l*u^b) with
// the larger monomial first, or nullopt when the poly is not a 2-term form.
std::optional<BasisElt> as_basis_elt(const Poly& p, const Field& f, const VarWeights& vw) {
  if (p.terms.size() != 2) return std::nullopt;
  auto it = p.terms.begin();
  Expo e1 = it->first;
  mpq_class c1 = it->second;
  ++it;
  Expo e2 = it->first;
  mpq_class c2 = it->second;
  if (cmp_monomial(vw, e1, e2) == Cmp::LT) {
    std::swap(e1, e2);
    std::swap(c1, c2);
  }
  BasisElt b;
  b.lead = e1;
  b.trail = e2;
  b.lambda = f.neg(f.div(c2, c1));
  return b;
}

}  // namespace

void OverweightSystem::complete_basis(ValidationReport& report) {
  basis_.clear();
  // Seed with the designated binomials, lead first, lift = scaled equation.
  for (size_t l = 0; l < eqs_.size(); ++l) {
    const BinomialPair& bp = pairs_[l];
    Poly bin = poly_add(field_, Poly::monomial(bp.m, 1, field_),
                        Poly::monomial(bp.n, field_.neg(bp.lambda), field_));
    auto be = as_basis_elt(bin, field_, weights_);
    if (!be) {
      report.valid = false;
      report.failures.push_back("equation " + std::to_string(l + 1) +
                                ": degenerate designated binomial");
      continue;
    }
    // Scale the equation so its initial form is exactly the basis binomial.
    // F/c has initial form u^m - lambda*u^n; if the lead is the n side,
    // rescale by -lambda^{-1}.
    mpq_class c = eqs_[l].terms.at(bp.m);
    Poly lift = poly_scale(field_, field_.inv(c), eqs_[l]);
    if (be->lead == bp.n) lift = poly_scale(field_, field_.neg(field_.inv(bp.lambda)), lift);
    be->lift = lift;
    basis_.push_back(*be);
  }
  if (!report.valid) return;

  // Buchberger completion; S-pairs of binomials stay binomial. Pairs are
  // pruned by the product and chain criteria (the retained S-syzygies still
  // generate the syzygy module, so the lift checks below stay complete).
  std::vector<Poly> deferred_lift_checks;
  std::set<std::pair<size_t, size_t>> queue, handled;
  auto push_pairs_for = [&](size_t n) {
    for (size_t i = 0; i < n; ++i) queue.emplace(i, n);
  };
  for (size_t j = 1; j < basis_.size(); ++j) push_pairs_for(j);
  auto pair_lcm = [&](size_t i, size_t j) {
    Expo l(basis_[i].lead.size());
    for (size_t k = 0; k < l.size(); ++k) l[k] = std::max(basis_[i].lead[k], basis_[j].lead[k]);
    return l;
  };
  size_t guard = 0;
  while (!queue.empty()) {
    if (++guard > 20000) {
      report.valid = false;
      report.failures.push_back("rewriting basis completion exceeded the step guard");
      return;
    }
    // normal selection: smallest lcm first
    auto best = queue.begin();
    Expo bestl = pair_lcm(best->first, best->second);
    for (auto it = std::next(queue.begin()); it != queue.end(); ++it) {
      Expo l = pair_lcm(it->first, it->second);
      if (cmp_monomial(weights_, l, bestl) == Cmp::LT) {
        best = it;
        bestl = l;
      }
    }
    auto [i, j] = *best;
    queue.erase(best);
    handled.emplace(i, j);
    const BasisElt bi = basis_[i];
    const BasisElt bj = basis_[j];
    // product criterion
    bool coprime = true;
    for (size_t k = 0; k < bi.lead.size(); ++k)
      if (bi.lead[k] > 0 && bj.lead[k] > 0) coprime = false;
    if (coprime) continue;
    Expo lcm = bestl;
    // chain criterion: a third element dividing the lcm whose two subpairs
    // were already handled makes this pair redundant
    {
      bool redundant = false;
      for (size_t k = 0; k < basis_.size() && !redundant; ++k) {
        if (k == i || k == j) continue;
        if (!expo_divides(basis_[k].lead, lcm)) continue;
        auto p1 = std::minmax(i, k), p2 = std::minmax(j, k);
        if (handled.count({p1.first, p1.second}) && handled.count({p2.first, p2.second}))
          redundant = true;
      }
      if (redundant) continue;
    }
    Expo si = expo_sub(lcm, bi.lead);
    Expo sj = expo_sub(lcm, bj.lead);
    // S = u^si*B_i - u^sj*B_j = lambda_j u^{sj+trail_j} - lambda_i u^{si+trail_i}
    Poly s;
    Expo ti = expo_add(si, bi.trail);
    Expo tj = expo_add(sj, bj.trail);
    s = poly_add(field_, Poly::monomial(tj, bj.lambda, field_),
                 Poly::monomial(ti, field_.neg(bi.lambda), field_));
    Poly lift = poly_sub(field_, poly_mul_term(field_, bi.lift, si, 1),
                         poly_mul_term(field_, bj.lift, sj, 1));
    std::vector<ReductionStep> trace;
    Poly nf = normal_form(s, &trace);
    for (const auto& st : trace)
      lift = poly_sub(field_, lift,
                      poly_mul_term(field_, basis_[st.basis_index].lift, st.shift, st.coeff));
    if (nf.is_zero()) {
      if (!lift.is_zero()) deferred_lift_checks.push_back(lift);
      continue;
    }
    if (nf.terms.size() == 1) {
      report.valid = false;
      report.failures.push_back(
          "monomial in the reduced basis: the binomial ideal is not prime (" +
          print_poly(nf, vars_) + ")");
      return;
    }
    auto be = as_basis_elt(nf, field_, weights_);
    if (!be) {
      report.valid = false;
      report.failures.push_back("completion produced a non-binomial element");
      return;
    }
    mpq_class lead_c = nf.terms.at(be->lead);
    be->lift = poly_scale(field_, field_.inv(lead_c), lift);
    basis_.push_back(*be);
    push_pairs_for(basis_.size() - 1);
  }

  // Standard-basis condition (Def. OD) up to truncation: every lifted S-pair
  // relation must reduce past the truncation bound, i.e. be "0 as far as the
  // trusted weights go".
  validated_ = true;  // normal_form/valuate need the flag during the check
  for (const auto& lift : deferred_lift_checks) {
    Valuation v = valuate(lift);
    if (v.exact) {
      report.valid = false;
      std::ostringstream os;
      os << "standard-basis condition fails: an S-pair lift has value " << to_string(v.value)
         << " (initial forms do not generate the initial ideal)";
      report.failures.push_back(os.str());
      validated_ = false;
      return;
    }
  }
}

OverweightSystem::ValidationReport OverweightSystem::validate(bool require_full_lattice) {
  ValidationReport report;
  validated_ = false;
  pairs_.clear();
  const int nv = nvars();

  for (int i = 0; i < nv; ++i) {
    if (!order().positive(weights_.weights()[static_cast<size_t>(i)])) {
      report.valid = false;
      report.failures.push_back("weight of " + vars_[static_cast<size_t>(i)] +
                                " is not positive under the order");
    }
  }
  if (!report.valid) return report;

  for (size_t l = 0; l < eqs_.size(); ++l) {
    const Poly& F = eqs_[l];
    std::string tag = "equation " + std::to_string(l + 1);
    if (F.is_zero()) {
      report.valid = false;
      report.failures.push_back(tag + " is zero");
      continue;
    }
    Poly inw = weights_.initial_form(F);
    if (inw.terms.size() != 2) {
      report.valid = false;
      report.failures.push_back(tag + ": initial form is not a binomial: " +
                                print_poly(inw, vars_));
      continue;
    }
    BinomialPair bp;
    if (designated_[l]) {
      bp = *designated_[l];
      if (!inw.terms.count(bp.m) || !inw.terms.count(bp.n)) {
        report.valid = false;
        report.failures.push_back(tag + ": designated binomial is not the initial form");
        continue;
      }
      mpq_class c = inw.terms.at(bp.m);
      mpq_class lam = field_.neg(field_.div(inw.terms.at(bp.n), c));
      if (!field_.equal(lam, bp.lambda)) {
        report.valid = false;
        report.failures.push_back(tag + ": designated twist constant mismatch");
        continue;
      }
      bp.lambda = field_.normalize(bp.lambda);
    } else {
      auto be = as_basis_elt(inw, field_, weights_);
      bp.m = be->lead;
      bp.n = be->trail;
      bp.lambda = be->lambda;
    }
    if (field_.is_zero(bp.lambda)) {
      report.valid = false;
      report.failures.push_back(tag + ": twist constant is zero");
      continue;
    }
    for (size_t k = 0; k < bp.m.size(); ++k)
      if (bp.m[k] > 0 && bp.n[k] > 0) {
        report.valid = false;
        report.failures.push_back(tag + ": binomial supports are not disjoint");
        break;
      }
    // Overweight condition on the tail.
    ValueVec w0 = weights_.value(bp.m);
    for (const auto& [e, c] : F.terms) {
      if (e == bp.m || e == bp.n) continue;
      if (!order().gt(weights_.value(e), w0)) {
        report.valid = false;
        report.failures.push_back(tag + ": term of non-increased weight: " +
                                  print_poly(Poly::monomial(e, c, field_), vars_));
      }
    }
    pairs_.push_back(bp);
  }
  if (!report.valid) return report;

  // The m - n vectors must generate the relation lattice of the weights.
  {
    mpz_class den = 1;
    for (const auto& w : weights_.weights())
      for (const auto& x : w) den = lcm(den, x.get_den());
    const int r = order().ambient_rank();
    ZMat gamma(static_cast<size_t>(r), ZVec(static_cast<size_t>(nv), 0));
    for (int i = 0; i < nv; ++i)
      for (int k = 0; k < r; ++k) {
        mpq_class q = weights_.weights()[static_cast<size_t>(i)][static_cast<size_t>(k)] * den;
        gamma[static_cast<size_t>(k)][static_cast<size_t>(i)] = q.get_num();
      }
    std::vector<ZVec> kernel = integer_kernel(gamma);
    std::vector<ZVec> spanned;
    for (const auto& bp : pairs_) {
      ZVec v(static_cast<size_t>(nv));
      for (int i = 0; i < nv; ++i)
        v[static_cast<size_t>(i)] = bp.m[static_cast<size_t>(i)] - bp.n[static_cast<size_t>(i)];
      spanned.push_back(std::move(v));
    }
    for (const auto& v : spanned)
      if (!lattice_contains(kernel, v)) {
        report.valid = false;
        report.failures.push_back("a binomial exponent vector is not a weight relation");
      }
    if (require_full_lattice) {
      for (const auto& v : kernel)
        if (!lattice_contains(spanned, v)) {
          report.valid = false;
          report.failures.push_back(
              "binomial exponent vectors do not generate the relation lattice");
        }
      if (!lattice_saturated(spanned)) {
        report.valid = false;
        report.failures.push_back("relation lattice of the binomials is not saturated");
      }
    }
  }
  if (!report.valid) return report;

  complete_basis(report);
  validated_ = report.valid;
  return report;
}

OverweightSystem::Valuation OverweightSystem::valuate(const Poly& f) const {
  if (!validated_) throw std::logic_error("valuate: system not validated");
  if (f.is_zero()) throw std::invalid_argument("valuate: zero representative");
  // Terms above the truncation bound can never influence a value that is
  // still reported exactly, so they are dropped as the reduction climbs.
  Poly cur = weights_.truncate_above(f, trunc_);
  for (int step = 0; step < 1000000; ++step) {
    if (cur.is_zero()) return {false, trunc_};
    ValueVec w = weights_.weight(cur);
    if (order().gt(w, trunc_)) return {false, trunc_};
    Poly inw = weights_.initial_form(cur);
    std::vector<ReductionStep> trace;
    Poly nf = normal_form(inw, &trace);
    if (!nf.is_zero()) return {true, w};
    Poly subtract = Poly::zero();
    for (const auto& st : trace)
      subtract = poly_add(
          field_, subtract,
          weights_.truncate_above(
              poly_mul_term(field_, basis_[st.basis_index].lift, st.shift, st.coeff), trunc_));
    cur = poly_sub(field_, cur, subtract);
  }
  throw std::runtime_error("valuate: step guard exceeded");
}

}  // namespace valtoric
