#include <doctest.h>

#include <random>
#include <sstream>

#include "valtoric/toric.hpp"

using namespace valtoric;

namespace {

OverweightSystem artin_schreier(unsigned long p) {
  Field fp{p};
  std::vector<std::string> vars = {"x", "y"};
  VarWeights w({{static_cast<long>(p)}, {static_cast<long>(p - 1)}},
               MonomialOrder::standard_rank1());
  std::ostringstream eq;
  eq << "y^" << p << " - x^" << (p - 1) << " - x^" << (p - 1) << "*y";
  std::vector<Poly> eqs = {parse_poly(eq.str(), vars, fp)};
  OverweightSystem sys(vars, w, fp, std::move(eqs), ValueVec{static_cast<long>(6 * p * p)});
  REQUIRE(sys.validate().valid);
  return sys;
}

OverweightSystem system_4613() {
  Field q;
  std::vector<std::string> vars = {"u1", "u2", "u3"};
  VarWeights w({{4}, {6}, {13}}, MonomialOrder::standard_rank1());
  std::vector<Poly> eqs = {parse_poly("u2^2 - u1^3 - u3", vars, q),
                           parse_poly("u3^2 - u1^5*u2", vars, q)};
  OverweightSystem sys(vars, w, q, std::move(eqs), ValueVec{400});
  REQUIRE(sys.validate().valid);
  return sys;
}

}  // namespace

TEST_CASE("induced weights") {
  MonomialOrder o = MonomialOrder::standard_rank1();
  // Artin-Schreier chart for p = 3: rays (3,2), (1,1); w(x) = 3, w(y) = 2.
  RegularCone as(ZMat{{3, 2}, {1, 1}});
  auto wy = induced_weights(as, {{3}, {2}}, o);
  CHECK(wy[0] == ValueVec{1});
  CHECK(wy[1] == ValueVec{0});

  RegularCone id = RegularCone::identity(2);
  auto wid = induced_weights(id, {{5}, {7}}, o);
  CHECK(wid[0] == ValueVec{5});
  CHECK(wid[1] == ValueVec{7});

  RegularCone c(ZMat{{1, 1}, {0, 1}});
  auto wc = induced_weights(c, {{2}, {3}}, o);
  CHECK(wc[0] == ValueVec{2});
  CHECK(wc[1] == ValueVec{1});
}

TEST_CASE("is_w_centering") {
  MonomialOrder o = MonomialOrder::standard_rank1();
  CHECK(is_w_centering(RegularCone(ZMat{{3, 2}, {1, 1}}), {{3}, {2}}, o));
  CHECK(is_w_centering(RegularCone::identity(2), {{1}, {2}}, o));
  CHECK_FALSE(is_w_centering(RegularCone(ZMat{{2, 1}, {1, 1}}), {{1}, {3}}, o));
}

TEST_CASE("is_w_centering agrees with the half-space formulation on rank-2 fixtures") {
  // Direct half-space formulation: sigma is centering iff
  // for each j, w(j+1) lies in the half-spaces of the hyperplanes that
  // vanish on w(1..j). For rank-2 lex-type orders on Z^2 the data is small
  // enough to enumerate.
  MonomialOrder lex = MonomialOrder::lex(2);
  std::vector<ZMat> cones = {{{1, 0}, {0, 1}}, {{1, 1}, {0, 1}}, {{1, 1}, {1, 0}},
                             {{2, 1}, {1, 1}}, {{1, 2}, {1, 1}}, {{3, 1}, {2, 1}}};
  // weights of u1, u2 in Z^2: pick several
  std::vector<std::vector<ValueVec>> weight_sets = {
      {{1, 0}, {0, 1}}, {{1, 2}, {0, 1}}, {{2, -1}, {1, 3}}, {{1, 5}, {1, -2}}};
  for (const auto& rays : cones) {
    for (const auto& uw : weight_sets) {
      RegularCone cone{ZMat(rays)};
      bool direct;
      {
        // w(j) vectors: row j of the weight matrix evaluated on u-weights:
        // w(1) = (uw[0][0], uw[1][0]), w(2) = (uw[0][1], uw[1][1]).
        std::vector<std::vector<mpq_class>> wj = {{uw[0][0], uw[1][0]}, {uw[0][1], uw[1][1]}};
        // supporting hyperplanes of the cone = rows of the inverse matrix;
        // for a 2x2 unimodular matrix invert directly.
        mpq_class a = mpq_class(rays[0][0]), b = mpq_class(rays[0][1]);
        mpq_class c = mpq_class(rays[1][0]), d = mpq_class(rays[1][1]);
        mpq_class det = a * d - b * c;
        // L_s(x) = barycentric coordinate s of x
        auto bary = [&](const std::vector<mpq_class>& x) {
          std::vector<mpq_class> out(2);
          out[0] = (d * x[0] - c * x[1]) / det;
          out[1] = (-b * x[0] + a * x[1]) / det;
          return out;
        };
        auto b1 = bary(wj[0]);
        auto b2 = bary(wj[1]);
        direct = true;
        // j = 0: w(1) must be in the cone (all barycentric coords >= 0)
        for (int s = 0; s < 2; ++s)
          if (b1[static_cast<size_t>(s)] < 0) direct = false;
        // j = 1: w(2) must be >= 0 on the hyperplanes vanishing on w(1)
        if (direct)
          for (int s = 0; s < 2; ++s)
            if (b1[static_cast<size_t>(s)] == 0 && b2[static_cast<size_t>(s)] < 0) direct = false;
      }
      CHECK(is_w_centering(cone, uw, lex) == direct);
    }
  }
}

TEST_CASE("strict transform of the artin-schreier equation") {
  OverweightSystem sys = artin_schreier(3);
  RegularCone cone(ZMat{{3, 2}, {1, 1}});
  StrictTransform st = strict_transform(sys, cone);
  REQUIRE(st.equations.size() == 1);
  CHECK(st.equations[0].factored == Expo{6, 2});  // y1^{p(p-1)} y2^{p-1}
  Field f3{3};
  std::vector<std::string> yv = {"y1", "y2"};
  CHECK(poly_equal(f3, st.equations[0].strict, parse_poly("y2 - 1 - y1^2*y2", yv, f3)));
}

TEST_CASE("strict transform basics") {
  Field q;
  std::vector<std::string> vars = {"u1", "u2"};
  VarWeights w({{2}, {3}}, MonomialOrder::standard_rank1());
  std::vector<Poly> eqs = {parse_poly("u2^2 - u1^3", vars, q)};
  OverweightSystem sys(vars, w, q, std::move(eqs), ValueVec{100});
  REQUIRE(sys.validate().valid);

  // identity cone leaves everything unchanged
  StrictTransform id = strict_transform(sys, RegularCone::identity(2));
  CHECK(id.equations[0].factored == Expo{0, 0});
  CHECK(poly_equal(q, id.equations[0].strict, sys.equations()[0]));

  // sigma = <(2,3),(1,2)>: factor y1^6 y2^3 * (y2 - 1)
  StrictTransform st = strict_transform(sys, RegularCone(ZMat{{2, 3}, {1, 2}}));
  CHECK(st.equations[0].factored == Expo{6, 3});
  std::vector<std::string> yv = {"y1", "y2"};
  CHECK(poly_equal(q, st.equations[0].strict, parse_poly("y2 - 1", yv, q)));
}

TEST_CASE("substitution identity on random monomials") {
  Field q;
  std::mt19937 rng(1212);
  std::vector<ZMat> cones = {{{3, 2}, {1, 1}}, {{2, 3}, {1, 2}}, {{1, 0}, {0, 1}}};
  for (const auto& rays : cones) {
    RegularCone cone{ZMat(rays)};
    for (int it = 0; it < 20; ++it) {
      Expo m = {static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
      // direct image new exponent
      Expo ne(2);
      for (int j = 0; j < 2; ++j) {
        long acc = 0;
        for (int i = 0; i < 2; ++i)
          acc += mpz_get_si(rays[static_cast<size_t>(j)][static_cast<size_t>(i)].get_mpz_t()) *
                 m[static_cast<size_t>(i)];
        ne[static_cast<size_t>(j)] = static_cast<int>(acc);
      }
      // symbolic route: substitute u_i = prod y_j^{a^j_i} and multiply out
      std::vector<Poly> images;
      for (int i = 0; i < 2; ++i) {
        Expo e(2, 0);
        for (int j = 0; j < 2; ++j)
          e[static_cast<size_t>(j)] =
              static_cast<int>(mpz_get_si(rays[static_cast<size_t>(j)][static_cast<size_t>(i)].get_mpz_t()));
        images.push_back(Poly::monomial(e, 1, q));
      }
      Poly img = poly_subst(q, Poly::monomial(m, 1, q), images, 2);
      REQUIRE(img.terms.size() == 1);
      CHECK(img.terms.begin()->first == ne);
    }
  }
}

TEST_CASE("find_centering_chart on the artin-schreier system (p = 3)") {
  OverweightSystem sys = artin_schreier(3);
  ChartReport report = find_centering_chart(sys);
  CHECK(report.cone.rays == (ZMat{{3, 2}, {1, 1}}));
  CHECK(report.y_weights[0] == ValueVec{1});
  CHECK(report.y_weights[1] == ValueVec{0});
  CHECK(report.local_coords == std::vector<int>{0});

  UniformizationCheck uc = check_uniformized(sys, report);
  REQUIRE(uc.ok);
  CHECK(uc.boundary_point[1] == 1);  // y2 = 1
  CHECK(report.uniformized);

  // weight conservation for every term of the transformed equation
  for (size_t l = 0; l < report.transform.equations.size(); ++l) {
    const auto& te = report.transform.equations[l];
    const Poly& orig = sys.equations()[l];
    // strict + factored exponents reproduce values: check per original term
    // that order-value before = sum of new exponents times w(y)
    for (const auto& [e, c] : orig.terms) {
      ValueVec before = sys.weights().value(e);
      // transform the exponent directly
      mpq_class after = 0;
      for (int j = 0; j < 2; ++j) {
        mpz_class v = 0;
        for (int i = 0; i < 2; ++i)
          v += report.cone.rays[static_cast<size_t>(j)][static_cast<size_t>(i)] *
               e[static_cast<size_t>(i)];
        after += mpq_class(v) * report.y_weights[static_cast<size_t>(j)][0];
      }
      CHECK(before[0] == after);
    }
  }
}

TEST_CASE("find_centering_chart on the (4,6,13) system") {
  OverweightSystem sys = system_4613();
  ChartReport report = find_centering_chart(sys);
  // the W-ray is the weight vector itself
  REQUIRE(report.w_rays.size() == 1);
  const auto& wray = report.cone.rays[static_cast<size_t>(report.w_rays[0])];
  CHECK(wray == (ZVec{4, 6, 13}));
  UniformizationCheck uc = check_uniformized(sys, report);
  REQUIRE(uc.ok);
  CHECK(uc.local_coords.size() == 1);
}

TEST_CASE("trivial system gets the identity cone") {
  // No equations: the weights must be rationally independent, so r = N.
  Field q;
  std::vector<std::string> vars = {"u1", "u2"};
  VarWeights w({{1, 0}, {0, 1}}, MonomialOrder::lex(2));
  OverweightSystem sys(vars, w, q, {}, ValueVec{50, 50});
  REQUIRE(sys.validate().valid);
  ChartReport report = find_centering_chart(sys);
  CHECK(report.cone.rays == zmat_identity(2));
}

TEST_CASE("check_uniformized rejects the singular origin of a pure binomial at the identity cone") {
  Field q;
  std::vector<std::string> vars = {"u1", "u2"};
  VarWeights w({{2}, {3}}, MonomialOrder::standard_rank1());
  std::vector<Poly> eqs = {parse_poly("u2^2 - u1^3", vars, q)};
  OverweightSystem sys(vars, w, q, std::move(eqs), ValueVec{100});
  REQUIRE(sys.validate().valid);
  RegularCone id = RegularCone::identity(2);
  ChartReport report{id, induced_weights(id, sys.weights().weights(), sys.order()),
                     strict_transform(sys, id)};
  UniformizationCheck uc = check_uniformized(sys, report);
  CHECK_FALSE(uc.ok);
}

TEST_CASE("find_centering_chart reports the last cone when capped") {
  OverweightSystem sys = artin_schreier(3);
  CHECK_THROWS_WITH_AS(find_centering_chart(sys, 0), doctest::Contains("last cone tried"),
                       std::runtime_error);
}
