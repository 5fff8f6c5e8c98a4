#include <doctest.h>

#include <random>

#include "valtoric/semigroup.hpp"

using namespace valtoric;

namespace {

AffineSemigroup numerical(std::vector<long> gens) {
  std::vector<ValueVec> g;
  for (long x : gens) g.push_back(ValueVec{x});
  return AffineSemigroup(g, MonomialOrder::standard_rank1());
}

// Brute-force membership for numerical semigroups.
bool brute_member(const std::vector<long>& gens, long v) {
  if (v == 0) return true;
  if (v < 0) return false;
  for (long g : gens)
    if (v >= g && brute_member(gens, v - g)) return true;
  return false;
}

}  // namespace

TEST_CASE("membership finds witnesses and rejects gaps") {
  AffineSemigroup s45 = numerical({4, 5});
  CHECK_FALSE(membership(s45, ValueVec{11}).has_value());
  auto w0 = membership(s45, ValueVec{0});
  REQUIRE(w0.has_value());
  for (const auto& c : *w0) CHECK(c == 0);

  AffineSemigroup s46 = numerical({4, 6});
  auto w = membership(s46, ValueVec{26});
  REQUIRE(w.has_value());
  CHECK((*w)[0] * 4 + (*w)[1] * 6 == 26);
}

TEST_CASE("membership complete against brute force (Z^1 exhaustive)") {
  std::vector<long> gens = {5, 7, 9};
  AffineSemigroup s = numerical(gens);
  for (long v = 0; v <= 60; ++v) {
    auto m = membership(s, ValueVec{v});
    CHECK(m.has_value() == brute_member(gens, v));
    if (m) {
      mpz_class total = 0;
      for (size_t i = 0; i < gens.size(); ++i) total += (*m)[i] * gens[i];
      CHECK(total == v);
    }
  }
}

TEST_CASE("membership in Z^2 against brute force") {
  MonomialOrder lex = MonomialOrder::lex(2);
  std::vector<ValueVec> gens = {{2, 0}, {1, 1}, {0, 3}, {3, 1}};
  AffineSemigroup s(gens, lex);
  // brute force over small coefficient boxes
  auto brute = [&](long a, long b) {
    for (int c0 = 0; c0 <= 6; ++c0)
      for (int c1 = 0; c1 <= 6; ++c1)
        for (int c2 = 0; c2 <= 6; ++c2)
          for (int c3 = 0; c3 <= 6; ++c3)
            if (2 * c0 + c1 + 3 * c3 == a && c1 + 3 * c2 + c3 == b) return true;
    return false;
  };
  for (long a = 0; a <= 8; ++a)
    for (long b = 0; b <= 8; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(membership(s, ValueVec{a, b}).has_value() == brute(a, b));
    }
}

TEST_CASE("minimal generators") {
  AffineSemigroup s = minimal_generators(numerical({4, 6, 10, 13}));
  REQUIRE(s.gens.size() == 3);
  CHECK(s.gens[0][0] == 4);
  CHECK(s.gens[1][0] == 6);
  CHECK(s.gens[2][0] == 13);

  AffineSemigroup one = minimal_generators(numerical({1}));
  CHECK(one.gens.size() == 1);

  AffineSemigroup same = minimal_generators(numerical({4, 6, 13}));
  CHECK(same.gens.size() == 3);
}

TEST_CASE("group index") {
  GroupIndex gi = group_index({{4}, {6}}, {{1}});
  REQUIRE(gi.finite);
  CHECK(gi.index == 2);
  GroupIndex same = group_index({{4}, {6}}, {{4}, {6}});
  REQUIRE(same.finite);
  CHECK(same.index == 1);
  GroupIndex five = group_index({{5}}, {{1}});
  REQUIRE(five.finite);
  CHECK(five.index == 5);
  GroupIndex inf = group_index({{2, 0}}, {{1, 0}, {0, 1}});
  CHECK_FALSE(inf.finite);
  CHECK_THROWS(group_index({{1, 0}}, {{2, 0}}));
}

TEST_CASE("presentation of <4;6,13> matches the deformation exponents") {
  MonomialOrder o = MonomialOrder::standard_rank1();
  Presentation p = presentation({{4}}, {{6}, {13}}, o);
  REQUIRE(p.rows.size() == 2);
  CHECK(p.rows[0].n == 2);
  CHECK(p.rows[0].t.empty());
  CHECK(p.rows[0].phi0_coords == ZVec{3});  // 12 = 3*4
  CHECK(p.rows[0].r_part == ZVec{3});
  CHECK(p.rows[0].s_part == ZVec{0});
  CHECK(p.rows[1].n == 2);
  REQUIRE(p.rows[1].t.count(0));
  CHECK(p.rows[1].t.at(0) == 1);
  CHECK(p.rows[1].phi0_coords == ZVec{5});  // 26 = 5*4 + 6
  CHECK(p.rows[1].phi0 == ValueVec{20});
}

TEST_CASE("presentation trivial and Rond cases") {
  MonomialOrder o = MonomialOrder::standard_rank1();
  Presentation triv = presentation({{4}}, {{8}}, o);
  CHECK(triv.rows[0].n == 1);
  CHECK(triv.rows[0].t.empty());
  CHECK(triv.rows[0].phi0 == ValueVec{8});

  MonomialOrder s2(2, {{QuadExt(mpq_class(1)), QuadExt::sqrt_of(2)}});
  Presentation rond = presentation({{1, 0}, {0, 1}}, {{-1, 3}}, s2);
  REQUIRE(rond.rows.size() == 1);
  CHECK(rond.rows[0].n == 1);
  CHECK(rond.rows[0].phi0_coords == (ZVec{-1, 3}));
  CHECK(rond.rows[0].s_part == (ZVec{1, 0}));
  CHECK(rond.rows[0].r_part == (ZVec{0, 3}));
}

TEST_CASE("presentation reconstruction and minimality on random data") {
  MonomialOrder o = MonomialOrder::standard_rank1();
  std::mt19937 rng(99);
  for (int it = 0; it < 40; ++it) {
    long g0 = 2 + static_cast<long>(rng() % 11);
    std::vector<ValueVec> deltas;
    int t = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < t; ++i) deltas.push_back(ValueVec{1 + static_cast<long>(rng() % 50)});
    Presentation p;
    try {
      p = presentation({{static_cast<long>(g0)}}, deltas, o);
    } catch (const std::invalid_argument&) {
      continue;  // infinite index cannot happen in rank 1 with positive gens
    }
    std::vector<mpq_class> vals = {mpq_class(g0)};
    for (const auto& d : deltas) vals.push_back(d[0]);
    for (size_t i = 0; i < p.rows.size(); ++i) {
      // reconstruction: n_i*delta_i = phi0 + sum t_k*delta_k
      mpq_class lhs = p.rows[i].n * deltas[i][0];
      mpq_class rhs = p.rows[i].phi0[0];
      for (const auto& [k, tv] : p.rows[i].t) {
        CHECK(tv >= 0);
        CHECK(tv < p.rows[static_cast<size_t>(k)].n);
        rhs += tv * deltas[static_cast<size_t>(k)][0];
      }
      CHECK(lhs == rhs);
      // minimality: no smaller multiple lands in the lower group
      std::vector<ZVec> lower = {{mpz_class(g0)}};
      for (size_t k = 0; k < i; ++k) lower.push_back({mpz_class(deltas[k][0].get_num())});
      for (mpz_class n = 1; n < p.rows[i].n; ++n) {
        ZVec target{mpz_class(n * deltas[i][0].get_num())};
        CHECK_FALSE(lattice_contains(lower, target));
      }
    }
  }
}

TEST_CASE("conductor agrees with gap enumeration") {
  CHECK(conductor({4, 6, 13}) == 16);
  CHECK(conductor({1}) == 0);
  CHECK(conductor({2, 3}) == 2);
  CHECK_THROWS(conductor({4, 6}));

  std::mt19937 rng(4242);
  for (int it = 0; it < 30; ++it) {
    std::vector<mpz_class> gens;
    std::vector<long> raw;
    mpz_class g = 0;
    for (int i = 0; i < 3; ++i) {
      long x = 2 + static_cast<long>(rng() % 30);
      raw.push_back(x);
      gens.push_back(x);
      g = gcd(g, mpz_class(x));
    }
    if (g != 1) continue;
    mpz_class c = conductor(gens);
    long bound = mpz_get_si(c.get_mpz_t()) + 10 * *std::max_element(raw.begin(), raw.end());
    std::vector<char> in(static_cast<size_t>(bound) + 1, 0);
    in[0] = 1;
    for (long v = 1; v <= bound; ++v)
      for (long x : raw)
        if (v >= x && in[static_cast<size_t>(v - x)]) in[static_cast<size_t>(v)] = 1;
    for (long v = mpz_get_si(c.get_mpz_t()); v <= bound; ++v) CHECK(in[static_cast<size_t>(v)]);
    if (c > 0) CHECK_FALSE(in[static_cast<size_t>(mpz_get_si(c.get_mpz_t())) - 1]);
  }
}

TEST_CASE("jacobi-perron chain for sqrt(2)") {
  MonomialOrder o(2, {{QuadExt(mpq_class(1)), QuadExt::sqrt_of(2)}});
  std::pair<ZVec, ZVec> base{{1, 0}, {0, 1}};
  std::vector<ZVec> targets = {{-1, 3}, {-2, 3}};
  JacobiPerronChain chain = jacobi_perron_chain(o, base, targets);
  REQUIRE(chain.steps.size() >= 2);
  // every basis determinant is +-1
  for (const auto& st : chain.steps) CHECK(abs(st.det) == 1);
  // inclusions expressed with non-negative integer coefficients
  for (size_t i = 1; i < chain.steps.size(); ++i) {
    const auto& m = chain.steps[i].old_in_new;
    REQUIRE(m.size() == 2);
    for (const auto& row : m)
      for (const auto& c : row) CHECK(c >= 0);
    // and they truly reproduce the previous generators
    const auto& prev = chain.steps[i - 1];
    const auto& cur = chain.steps[i];
    for (int k = 0; k < 2; ++k) {
      CHECK(prev.gen_a[static_cast<size_t>(k)] ==
            m[0][0] * cur.gen_a[static_cast<size_t>(k)] + m[0][1] * cur.gen_b[static_cast<size_t>(k)]);
      CHECK(prev.gen_b[static_cast<size_t>(k)] ==
            m[1][0] * cur.gen_a[static_cast<size_t>(k)] + m[1][1] * cur.gen_b[static_cast<size_t>(k)]);
    }
  }
  // targets contained at finite steps
  for (int stepidx : chain.containment_step) CHECK(stepidx >= 0);
  // a target already in the base is contained at step 0
  JacobiPerronChain triv = jacobi_perron_chain(o, base, {{2, 3}});
  CHECK(triv.containment_step[0] == 0);
  CHECK(triv.steps.size() == 1);
}

TEST_CASE("translation hypothesis checker") {
  AffineSemigroup g = numerical({4, 6, 13});
  CHECK(translation_hypothesis(g, {{1}}, 4, ValueVec{16}));
  CHECK_FALSE(translation_hypothesis(g, {{1}}, 1, ValueVec{4}));
}

TEST_CASE("membership with mixed-sign generators under the sqrt2 order") {
  // S = <(1,0), (0,1), (-1,3)>: order-positive generators with a negative
  // component; cross-check against brute force over coefficient boxes.
  MonomialOrder o(2, {{QuadExt(mpq_class(1)), QuadExt::sqrt_of(2)}});
  std::vector<ValueVec> gens = {{1, 0}, {0, 1}, {-1, 3}};
  AffineSemigroup s(gens, o);
  auto brute = [&](long a, long b) {
    for (int c0 = 0; c0 <= 10; ++c0)
      for (int c1 = 0; c1 <= 10; ++c1)
        for (int c2 = 0; c2 <= 10; ++c2)
          if (c0 - c2 == a && c1 + 3 * c2 == b) return true;
    return false;
  };
  for (long a = -6; a <= 6; ++a)
    for (long b = 0; b <= 9; ++b) {
      ValueVec v{a, b};
      if (o.negative(v)) continue;
      CAPTURE(a);
      CAPTURE(b);
      auto m = membership(s, v);
      CHECK(m.has_value() == brute(a, b));
      if (m) {
        CHECK((*m)[0] - (*m)[2] == a);
        CHECK((*m)[1] + 3 * (*m)[2] == b);
      }
    }
}
