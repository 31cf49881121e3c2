#include <doctest.h>

#include "latva/ccsymbol.hpp"
#include "latva/lattice.hpp"

using namespace latva;

TEST_CASE("unit decomposition read-offs") {
  RingHandle R = rational_ring();
  {
    // 5 t^2 (1 - t)
    LaurentSeries f = parse_series(R, "5*t^2 - 5*t^3", 12);
    UnitDecomposition d = decompose_unit(f);
    CHECK(d.v == 2);
    CHECK(d.f0 == Scalar::constant(R, 5));
    CHECK(d.fplus.agrees_with(parse_series(R, "1 - t", d.fplus.trunc())));
    CHECK(d.fminus.agrees_with(LaurentSeries::constant(R, 1, d.fminus.trunc())));
  }
  {
    RingHandle N = make_ring({"e1"}, {2});
    // (1 - e1 t^-1) t = t - e1
    LaurentSeries f = parse_series(N, "t - e1", 12);
    UnitDecomposition d = decompose_unit(f);
    CHECK(d.v == 1);
    CHECK(d.f0 == Scalar::constant(N, 1));
    CHECK(d.fplus.agrees_with(LaurentSeries::constant(N, 1, d.fplus.trunc())));
    CHECK(d.fminus.agrees_with(parse_series(N, "1 - e1*t^-1", d.fminus.trunc())));
  }
  {
    // t^-1 + 1 = t^-1 (1 + t)
    LaurentSeries f = parse_series(R, "t^-1 + 1", 12);
    UnitDecomposition d = decompose_unit(f);
    CHECK(d.v == -1);
    CHECK(d.f0 == Scalar::constant(R, 1));
    CHECK(d.fplus.agrees_with(parse_series(R, "1 + t", d.fplus.trunc())));
  }
}

TEST_CASE("decomposition recomposes the input") {
  RingHandle N = make_ring({"e1", "e2"}, {2, 2});
  LaurentSeries f = parse_series(N, "2*t^-1 + 3 + e1*t^-3 + t^2 - e2*t^4", 16);
  UnitDecomposition d = decompose_unit(f);
  LaurentSeries recomposed =
      d.fplus * d.fminus.scaled(d.f0) * LaurentSeries::power_of_t(N, d.v, 16);
  CHECK(recomposed.agrees_with(f));
}

TEST_CASE("decomposition requires an invertible input") {
  RingHandle N = make_ring({"e1"}, {2});
  CHECK_THROWS_AS(decompose_unit(LaurentSeries::zero(N, 8)), std::invalid_argument);
  CHECK_THROWS_AS(decompose_unit(parse_series(N, "e1 + e1*t^-2", 8)), std::invalid_argument);
  // below the numerical valuation every coefficient is nilpotent, so any
  // invertible series over a local ring decomposes
  CHECK_NOTHROW(decompose_unit(parse_series(N, "1 + 2*t^-2 + e1*t^-1", 12)));
  CHECK_NOTHROW(decompose_unit(parse_series(N, "1 + e1*t^-1 + t^-3", 12)));
}

TEST_CASE("cc symbol generating values") {
  RingHandle R = rational_ring();
  auto sym = [&](const std::string& f, const std::string& g) {
    return cc_symbol(parse_series(R, f, 16), parse_series(R, g, 16));
  };
  CHECK(sym("t", "t") == Scalar::constant(R, -1));
  CHECK(sym("t", "5") == Scalar::constant(R, 5));
  CHECK(sym("5", "t") == Scalar::constant(R, Rational(1, 5)));
  CHECK(sym("3", "7") == Scalar::constant(R, 1));
  CHECK(sym("t^2", "t^3") == Scalar::constant(R, 1));
  CHECK(sym("t^2", "t") == Scalar::constant(R, 1));
  CHECK(sym("2*t", "3*t") == Scalar::constant(R, Rational(-3, 2)));
}

TEST_CASE("cc symbol nilpotent deformation example") {
  RingHandle N = make_ring({"e1", "e2"}, {2, 2});
  LaurentSeries f = parse_series(N, "1 - e1*t", 16);
  LaurentSeries g = parse_series(N, "1 - e2*t^-1", 16);
  Scalar ee = Scalar::generator(N, 0) * Scalar::generator(N, 1);
  // exp-Res oracle route: exp(Res(log(1 - e1 t) dlog(1 - e2 t^-1))) = exp(-e1 e2)
  Scalar oracle = residue_pairing(log1(f), log1(g)).exp_nilpotent();
  CHECK(oracle == Scalar::constant(N, 1) - ee);
  CHECK(cc_symbol(f, g) == oracle);
  // swapped arguments give the inverse
  CHECK(cc_symbol(g, f) == Scalar::constant(N, 1) + ee);
}

TEST_CASE("steinberg on shapes with valuation") {
  RingHandle R = rational_ring();
  for (const std::string& lit : {"t", "5*t^2 - 5*t^3", "2 + 3*t", "t^-1 + 1"}) {
    LaurentSeries f = parse_series(R, lit, 20);
    LaurentSeries omf = LaurentSeries::constant(R, 1, 20) - f;
    if (!omf.invertible()) continue;
    CHECK(cc_symbol(f, omf) == Scalar::constant(R, 1));
  }
}

TEST_CASE("commutator pairing examples") {
  RingHandle R = rational_ring();
  LaurentSeries t = parse_series(R, "t", 16);
  LaurentSeries five = parse_series(R, "5", 16);
  {
    LatticeLevel L(1, {2});
    // <t,t>^{-c(1,1)} = (-1)^{-2} = 1
    CHECK(commutator_pairing({1}, t, {1}, t, L) == Scalar::constant(R, 1));
  }
  {
    LatticeLevel L(1, {1});
    CHECK(commutator_pairing({1}, t, {1}, five, L) == Scalar::constant(R, Rational(1, 5)));
    // zero pairing: always 1
    CHECK(commutator_pairing({0}, t, {1}, five, L) == Scalar::constant(R, 1));
  }
}

TEST_CASE("tame symbol agrees after augmentation") {
  RingHandle N = make_ring({"e1"}, {2});
  LaurentSeries f = parse_series(N, "3*t^-1 + 2 + e1*t", 16);
  LaurentSeries g = parse_series(N, "7*t^2 + t^3 - e1", 16);
  CHECK(cc_symbol(f, g).augment() == tame_symbol(f, g));
}
