#include <doctest.h>

#include "latva/vertexop.hpp"

using namespace latva;

namespace {

FockVector vac(int r) { return FockVector::single(make_vacuum(LatticeVector(r, 0))); }

} // namespace

TEST_CASE("leading exponent of V^1(z) e^1 at level 2") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  FockSpace space(c2, Rational(12));
  FockVector e1 = FockVector::single(make_vacuum({1}));
  VertexExpansion E = vertex_apply_full(space, {1}, e1, Rational(4), eps);
  CHECK(E.zero_below == Rational(2)); // c(1,1)
  REQUIRE(E.leading().has_value());
  CHECK(*E.leading() == Rational(2));
  // top coefficient: kappa = (-1)^2, eps = 1, so +e^2
  CHECK(E.coeff(Rational(2)) == FockVector::single(make_vacuum({2})));
}

TEST_CASE("V^1(z) e^{-1} at level 2 has pole order -2 on the vacuum line") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  FockSpace space(c2, Rational(12));
  FockVector em1 = FockVector::single(make_vacuum({-1}));
  VertexExpansion E = vertex_apply_full(space, {1}, em1, Rational(2), eps);
  CHECK(E.zero_below == Rational(-2));
  CHECK(E.coeff(Rational(-2)) == vac(1)); // kappa = (-1)^{-2} = +1, eps = 1
  // momentum constancy across the window
  for (const auto& [q, v] : E.terms)
    for (const auto& [k, c] : v.terms()) CHECK(space.momentum(k) == Covector{Rational(0)});
}

TEST_CASE("V^0 is the identity") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  FockSpace space(c2, Rational(8));
  FockVector v = space.apply_h(LatticeVector{1}, -2, FockVector::single(make_vacuum({1})));
  VertexExpansion E = vertex_apply_full(space, {0}, v, Rational(5), eps);
  CHECK(E.coeff(Rational(0)) == v);
  for (const auto& [q, w] : E.terms)
    if (!(q == Rational(0))) CHECK(w.is_zero());
}

TEST_CASE("ope_leading examples") {
  {
    LatticeLevel c2(1, {2});
    SignCocycle eps = build_cocycle(c2);
    auto [pole, top] = ope_leading(c2, {1}, {1}, eps);
    CHECK(pole == 2);
    CHECK(top == FockVector::single(make_vacuum({2})));
  }
  {
    LatticeLevel c1(1, {1});
    SignCocycle eps = build_cocycle(c1);
    auto [pole, top] = ope_leading(c1, {1}, {-1}, eps);
    CHECK(pole == -1);
    // kappa = (-1)^{-1} = -1, eps = 1
    CHECK(top == vac(1).scaled(-1));
  }
  {
    LatticeLevel a2(2, {2, 1, 1, 2});
    SignCocycle eps = build_cocycle(a2);
    auto [pole, top] = ope_leading(a2, {1, -1}, {0, 0}, eps);
    CHECK(pole == 0);
    CHECK(top == FockVector::single(make_vacuum({1, -1}))); // unit axiom
  }
}

TEST_CASE("expansion coefficients obey the ODE recursion from the top term") {
  // Independent construction: on a pure charge, (q - c(g,g2)) V_q = sum_n h_{-n} V_{q-n}
  for (auto [g1v, g2v] : std::vector<std::pair<long long, long long>>{{1, 1}, {1, -1}, {2, 1}}) {
    LatticeLevel c2(1, {2});
    SignCocycle eps = build_cocycle(c2);
    FockSpace space(c2, Rational(40));
    LatticeVector g1{g1v}, g2{g2v};
    FockVector e2 = FockVector::single(make_vacuum(g2));
    long long c12 = c2.pairing(g1, g2);
    VertexExpansion E = vertex_apply_full(space, g1, e2, to_rational(c12 + 5), eps);
    std::map<Rational, FockVector> rec;
    rec[to_rational(c12)] = E.coeff(to_rational(c12));
    for (long long q = c12 + 1; q <= c12 + 5; ++q) {
      FockVector acc;
      for (long long n = 1; n <= q - c12; ++n)
        acc.add(space.apply_h(g1, static_cast<int>(-n), rec[to_rational(q - n)]));
      rec[to_rational(q)] = acc.scaled(Rational(1) / to_rational(q - c12));
    }
    for (long long q = c12; q <= c12 + 5; ++q) CHECK(E.coeff(to_rational(q)) == rec[to_rational(q)]);
  }
}

TEST_CASE("ODE residual vanishes and the corrupted operator fails") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  FockSpace space(c2, Rational(24));
  FockVector v = space.apply_h(LatticeVector{1}, -1, FockVector::single(make_vacuum({1})));
  VertexExpansion R = ode_residual(space, {1}, Rational(-4), Rational(4), eps, v);
  CHECK(R.is_zero_on_window());

  VertexOptions corrupt;
  corrupt.drop_creation_n1 = true;
  VertexExpansion Rc = ode_residual(space, {1}, Rational(-4), Rational(4), eps, v, corrupt);
  CHECK(!Rc.is_zero_on_window());

  VertexExpansion R0 = ode_residual(space, {0}, Rational(-4), Rational(4), eps, v);
  CHECK(R0.is_zero_on_window());
}

TEST_CASE("locality at the minimal clearing order") {
  {
    // even lattice: commuting at N = 0
    LatticeLevel c2(1, {2});
    SignCocycle eps = build_cocycle(c2);
    FockSpace space(c2, Rational(24));
    LocalityReport r = locality_residual(space, {1}, {1}, 0, 4, eps, vac(1));
    CHECK(r.checked > 0);
    CHECK(r.zero());
  }
  {
    // odd lattice: fermionic anticommutation, Koszul sign -1
    LatticeLevel c1(1, {1});
    SignCocycle eps = build_cocycle(c1);
    FockSpace space(c1, Rational(24));
    LocalityReport r = locality_residual(space, {1}, {1}, 0, 4, eps, vac(1));
    CHECK(r.checked > 0);
    CHECK(r.zero());
  }
  {
    // pole order 2 pair: zero at N = 2, nonzero at N = 1
    LatticeLevel c2(1, {2});
    SignCocycle eps = build_cocycle(c2);
    FockSpace space(c2, Rational(24));
    LocalityReport r2 = locality_residual(space, {1}, {-1}, 2, 4, eps, vac(1));
    CHECK(r2.checked > 0);
    CHECK(r2.zero());
    LocalityReport r1 = locality_residual(space, {1}, {-1}, 1, 4, eps, vac(1));
    CHECK(!r1.zero());
  }
}

TEST_CASE("cocycle round trip and corruption witness") {
  LatticeLevel a2(2, {2, 1, 1, 2});
  SignCocycle eps = build_cocycle(a2);
  CHECK(cocycle_roundtrip(a2, eps) == eps);
  CHECK(roundtrip_check(a2, eps, 2).empty());

  std::vector<int> bad_tab;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) bad_tab.push_back(eps.basis_sign(i, j));
  bad_tab[2] = -bad_tab[2];
  CHECK(!roundtrip_check(a2, SignCocycle(2, bad_tab), 2).empty());
}

TEST_CASE("window certification failure raises TruncationError") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  FockSpace space(c2, Rational(3)); // too small for high creation degrees
  FockVector e1 = FockVector::single(make_vacuum({1}));
  CHECK_THROWS_AS(vertex_apply_full(space, {1}, e1, Rational(8), eps), TruncationError);
}

TEST_CASE("modified operator collapses on pure kets") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  FockSpace space(c2, Rational(12));
  FockVector e1 = FockVector::single(make_vacuum({1}));
  VertexExpansion V = modified_vertex_apply(space, {1}, e1, Rational(-4), Rational(6), eps);
  std::vector<Rational> sup = V.support();
  REQUIRE(sup.size() == 1);
  CHECK(sup[0] == Rational(2));
  CHECK(V.coeff(Rational(2)) == FockVector::single(make_vacuum({2})));
}
