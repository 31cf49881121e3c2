#include <doctest.h>

#include "latva/repmod.hpp"

using namespace latva;

TEST_CASE("class 0 module is the algebra itself") {
  LatticeLevel c2(1, {2});
  InducedModule m = build_module(c2, {0}, Rational(3));
  std::vector<long long> want_mu{0};
  CHECK(m.mu == want_mu);
  for (const auto& k : m.basis) CHECK((k.offset.empty() || k.offset[0] == 0));
  // graded dimension at weight 0: only the charge-0 vacuum
  CHECK(m.graded_dims.at(Rational(0)) == 1);
  // weight 1: h_{-1}|0> and e^{+-1}
  CHECK(m.graded_dims.at(Rational(1)) == 3);
}

TEST_CASE("chi = 1 module of level 2 and its generator weight") {
  LatticeLevel c2(1, {2});
  InducedModule m = build_module(c2, {1}, Rational(3));
  std::vector<long long> want_mu{1};
  CHECK(m.mu == want_mu);
  FockSpace space(c2, Rational(3));
  CHECK(space.weight(m.generator().terms().begin()->first) == Rational(1, 4));
  // two classes in total
  DualQuotient dq(c2);
  CHECK(dq.num_classes() == 2);
}

TEST_CASE("graded dimensions count partition-charge pairs") {
  LatticeLevel c1(1, {1});
  InducedModule m = build_module(c1, {0}, Rational(2));
  // weight 0: |0>; weight 1/2: e^{+-1}; weight 1: h_{-1}|0>;
  // weight 3/2: h_{-1} e^{+-1}; weight 2: h_{-2}|0>, h_{-1}^2|0>, e^{+-2}
  CHECK(m.graded_dims.at(Rational(0)) == 1);
  CHECK(m.graded_dims.at(Rational(1, 2)) == 2);
  CHECK(m.graded_dims.at(Rational(1)) == 1);
  CHECK(m.graded_dims.at(Rational(3, 2)) == 2);
  CHECK(m.graded_dims.at(Rational(2)) == 4);
}

TEST_CASE("indefinite levels are rejected by the enumerator") {
  LatticeLevel hyper(2, {0, 1, 1, 0});
  CHECK(hyper.nondegenerate());
  CHECK(!is_positive_definite(hyper));
  CHECK_THROWS_AS(build_module(hyper, {0, 0}, Rational(2)), std::invalid_argument);
  LatticeLevel deg(1, {0});
  CHECK_THROWS_AS(build_module(deg, {0}, Rational(2)), std::invalid_argument);
}

TEST_CASE("nilpotency certificate matches the weight bookkeeping") {
  LatticeLevel c2(1, {2});
  InducedModule m = build_module(c2, {0}, Rational(3));
  NilpotencyReport r = nilpotency_certificate(m, {1}, 3);
  CHECK(r.all_within_bound);
  // vacuum: killed immediately
  for (const auto& e : r.entries)
    if (e.ket.modes.empty()) CHECK(e.index == 1);
  // a weight-3 pure-mode ket (h_{-1}^3 |0>) needs (h_1)^4
  bool found = false;
  for (const auto& e : r.entries)
    if (e.n == 1 && e.ket.charge == LatticeVector{0} &&
        e.ket.modes == std::vector<std::pair<int, int>>{{1, 0}, {1, 0}, {1, 0}}) {
      CHECK(e.index == 4);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("h0 spectrum parity by class at level 2") {
  LatticeLevel c2(1, {2});
  for (long long chi : {0LL, 1LL}) {
    InducedModule m = build_module(c2, {chi}, Rational(4));
    SpectrumReport r = h0_spectrum(m, {1});
    CHECK(r.in_lattice_coset);
    for (const auto& [e, mult] : r.eigenvalues) {
      REQUIRE(is_integer(e));
      CHECK((e.get_num() % 2 != 0) == (chi == 1));
    }
  }
  // alpha = 0: spectrum {0}
  InducedModule m = build_module(c2, {1}, Rational(3));
  SpectrumReport r0 = h0_spectrum(m, {0});
  CHECK(r0.eigenvalues.size() == 1);
  CHECK(r0.eigenvalues.begin()->first == Rational(0));
}

TEST_CASE("modified vertex operator properties on both classes") {
  LatticeLevel c2(1, {2});
  SignCocycle eps = build_cocycle(c2);
  for (long long chi : {0LL, 1LL}) {
    InducedModule m = build_module(c2, {chi}, Rational(3));
    CHECK(check_modified_vertex(m, {1}, eps, Rational(2), Rational(3)).empty());
    CHECK(check_shift_reconstruction(m, {1}, eps).empty());
  }
}

TEST_CASE("graded character is independent of the section representative") {
  LatticeLevel c2(1, {2});
  InducedModule a = build_module_with_offset(c2, {1}, Rational(4));
  InducedModule b = build_module_with_offset(c2, {3}, Rational(4)); // 1 + c(1)
  InducedModule c = build_module_with_offset(c2, {-1}, Rational(4));
  CHECK(graded_character(a) == graded_character(b));
  CHECK(graded_character(a) == graded_character(c));
}
