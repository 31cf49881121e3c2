#include <doctest.h>

#include "latva/fock.hpp"

using namespace latva;

namespace {

FockVector vac(int r) { return FockVector::single(make_vacuum(LatticeVector(r, 0))); }

} // namespace

TEST_CASE("heisenberg contraction on the vacuum: h_1 h_{-1} |0> = c |0>") {
  LatticeLevel c2(1, {2});
  FockSpace space(c2, Rational(6));
  FockVector v = vac(1);
  FockVector w = space.apply_h(LatticeVector{1}, 1, space.apply_h(LatticeVector{1}, -1, v));
  CHECK(w == v.scaled(2));
}

TEST_CASE("h_0 reads the momentum: charge-1 vacuum of level 2") {
  LatticeLevel c2(1, {2});
  FockSpace space(c2, Rational(6));
  FockVector e1 = FockVector::single(make_vacuum({1}));
  CHECK(space.apply_h(LatticeVector{1}, 0, e1) == e1.scaled(2));
}

TEST_CASE("annihilation kills the vacuum") {
  LatticeLevel c2(1, {2});
  FockSpace space(c2, Rational(6));
  CHECK(space.apply_h(LatticeVector{1}, 5, vac(1)).is_zero());
}

TEST_CASE("multiplicity in contraction") {
  LatticeLevel c1(1, {1});
  FockSpace space(c1, Rational(8));
  FockVector v = vac(1);
  v = space.apply_h(LatticeVector{1}, -2, v);
  v = space.apply_h(LatticeVector{1}, -2, v); // h_{-2}^2 |0>
  FockVector w = space.apply_h(LatticeVector{1}, 2, v);
  // [h_2, h_{-2}^2] = 2 * 2 * h_{-2}
  FockVector expect = space.apply_h(LatticeVector{1}, -2, vac(1)).scaled(4);
  CHECK(w == expect);
}

TEST_CASE("shift operators compose through the cocycle") {
  LatticeLevel a2(2, {2, 1, 1, 2});
  SignCocycle eps = build_cocycle(a2);
  FockSpace space(a2, Rational(40));
  FockVector e = FockVector::single(make_vacuum({0, 1}));
  // t~^g e^{g2} = eps(g, g2) e^{g+g2}
  FockVector s = space.apply_shift({1, 0}, e, eps);
  int sign = eps.eval({1, 0}, {0, 1});
  CHECK(s == FockVector::single(make_vacuum({1, 1})).scaled(sign));
  // t~^0 = id
  CHECK(space.apply_shift({0, 0}, e, eps) == e);
  // (t~^{g1} t~^{g2}) = eps(g1,g2) t~^{g1+g2} on every ket
  for (const auto& g1 : std::vector<LatticeVector>{{1, 0}, {1, -1}, {0, 2}})
    for (const auto& g2 : std::vector<LatticeVector>{{0, 1}, {-1, 1}}) {
      FockVector lhs = space.apply_shift(g1, space.apply_shift(g2, e, eps), eps);
      LatticeVector g12{g1[0] + g2[0], g1[1] + g2[1]};
      FockVector rhs = space.apply_shift(g12, e, eps).scaled(eps.eval(g1, g2));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("shift commutes with nonzero modes") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  FockSpace space(c2, Rational(12));
  FockVector v = space.apply_h(LatticeVector{1}, -2, FockVector::single(make_vacuum({1})));
  for (int n : {-1, 1, 2}) {
    FockVector a = space.apply_shift({1}, space.apply_h(LatticeVector{1}, n, v), eps);
    FockVector b = space.apply_h(LatticeVector{1}, n, space.apply_shift({1}, v, eps));
    CHECK(a == b);
  }
}

TEST_CASE("sugawara eigenvalues of pure charges") {
  LatticeLevel c2(1, {2});
  FockSpace space(c2, Rational(8));
  FockVector e1 = FockVector::single(make_vacuum({1}));
  CHECK(space.sugawara_L(0, e1) == e1); // (1/2) c(1,1) = 1
  FockVector h = space.apply_h(LatticeVector{1}, -1, vac(1));
  CHECK(space.sugawara_L(0, h) == h); // mode count
  CHECK(space.sugawara_L(-1, e1) == space.apply_h(LatticeVector{1}, -1, e1));
  CHECK(space.sugawara_L(1, e1).is_zero());
  CHECK(space.sugawara_L(2, e1).is_zero());
}

TEST_CASE("weights include the quadratic momentum term") {
  LatticeLevel c2(1, {2});
  FockSpace space(c2, Rational(10));
  CHECK(space.weight(make_vacuum({1})) == Rational(1));
  CHECK(space.weight(make_vacuum({2})) == Rational(4));
  Ket offset_vac = make_vacuum({0}, {Rational(1)});
  CHECK(space.weight(offset_vac) == Rational(1, 4));
  Ket k = offset_vac;
  k.modes = {{2, 0}};
  CHECK(space.weight(k) == Rational(9, 4));
}

TEST_CASE("operators refuse to cross the weight cutoff") {
  LatticeLevel c2(1, {2});
  FockSpace space(c2, Rational(2));
  FockVector v = vac(1);
  v = space.apply_h(LatticeVector{1}, -2, v);
  CHECK_THROWS_AS(space.apply_h(LatticeVector{1}, -1, v), TruncationError);
  SignCocycle eps = build_cocycle(c2);
  CHECK_THROWS_AS(space.apply_shift({2}, vac(1), eps), TruncationError);
}

TEST_CASE("sugawara requires a nondegenerate level") {
  LatticeLevel deg(2, {1, 1, 1, 1});
  FockSpace space(deg, Rational(4));
  CHECK_THROWS_AS(space.sugawara_L(0, vac(2)), std::invalid_argument);
}

TEST_CASE("virasoro bracket smoke test at rank 2") {
  LatticeLevel a2(2, {2, 1, 1, 2});
  FockSpace space(a2, Rational(9));
  FockVector v = vac(2);
  v = space.apply_h(LatticeVector{1, 0}, -1, v);
  v = space.apply_h(LatticeVector{0, 1}, -2, v); // weight 3 state
  for (int m : {-2, -1, 0, 1, 2})
    for (int n : {-2, 0, 2}) {
      FockVector lhs = space.sugawara_L(m, space.sugawara_L(n, v));
      lhs.add(space.sugawara_L(n, space.sugawara_L(m, v)), -1);
      FockVector rhs = space.sugawara_L(m + n, v).scaled(m - n);
      if (m + n == 0) rhs.add(v, Rational(2 * (m * m * m - m), 12));
      CHECK(lhs == rhs);
    }
}
