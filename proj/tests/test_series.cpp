#include <doctest.h>

#include <random>

#include "latva/series.hpp"

using namespace latva;

namespace {

LaurentSeries geometric(const RingHandle& R, long trunc) {
  // sum_{n>=0} t^n
  LaurentSeries s(R, trunc);
  for (long n = 0; n < trunc; ++n) s.set_coeff(n, Scalar::constant(R, 1));
  return s;
}

LaurentSeries random_series(std::mt19937_64& rng, const RingHandle& R, long trunc) {
  LaurentSeries s(R, trunc);
  std::uniform_int_distribution<long> exp(-3, 5);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  for (int t = 0; t < 5; ++t) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    s.add_coeff(exp(rng), Scalar::constant(R, q));
  }
  return s;
}

} // namespace

TEST_CASE("telescoping product (1 - t) * geometric = 1") {
  RingHandle R = rational_ring();
  LaurentSeries f = parse_series(R, "1 - t", 8);
  LaurentSeries g = geometric(R, 8);
  LaurentSeries one = LaurentSeries::constant(R, 1, 7);
  CHECK((f * g).agrees_with(one));
}

TEST_CASE("t^-1 * t = 1") {
  RingHandle R = rational_ring();
  LaurentSeries a = parse_series(R, "t^-1", 12);
  LaurentSeries b = parse_series(R, "t", 12);
  CHECK((a * b).agrees_with(LaurentSeries::constant(R, 1, 10)));
}

TEST_CASE("nilpotent telescoping (1 - e1 t)(1 + e1 t) = 1") {
  RingHandle R = make_ring({"e1"}, {2});
  LaurentSeries f = parse_series(R, "1 - e1*t", 12);
  LaurentSeries g = parse_series(R, "1 + e1*t", 12);
  LaurentSeries p = f * g;
  CHECK(p.agrees_with(LaurentSeries::constant(R, 1, p.trunc())));
}

TEST_CASE("inverse of 1 - t is the geometric series") {
  RingHandle R = rational_ring();
  LaurentSeries f = parse_series(R, "1 - t", 8);
  CHECK(inverse(f).agrees_with(geometric(R, 8)));
}

TEST_CASE("inverse of t^2 + t^3") {
  RingHandle R = rational_ring();
  LaurentSeries f = parse_series(R, "t^2 + t^3", 10);
  LaurentSeries want = parse_series(R, "t^-2 - t^-1 + 1 - t + t^2 - t^3 + t^4 - t^5", 6);
  CHECK(inverse(f).agrees_with(want));
  CHECK((f * inverse(f)).agrees_with(LaurentSeries::constant(R, 1, 5)));
}

TEST_CASE("inverse of zero fails") {
  RingHandle R = rational_ring();
  CHECK_THROWS_AS(inverse(LaurentSeries::zero(R, 8)), std::invalid_argument);
  // all-nilpotent series have no defined valuation either
  RingHandle N = make_ring({"e1"}, {2});
  CHECK_THROWS_AS(inverse(parse_series(N, "e1*t", 8)), std::invalid_argument);
}

TEST_CASE("residue pairing basics") {
  RingHandle R = rational_ring();
  auto res = [&](const std::string& f, const std::string& g) {
    return residue_pairing(parse_series(R, f, 12), parse_series(R, g, 12));
  };
  CHECK(res("t^-1", "t") == Scalar::constant(R, 1));
  CHECK(res("t", "t^-1") == Scalar::constant(R, -1));
  CHECK(res("1 + t", "t^2") == Scalar(R));
}

TEST_CASE("residue pairing reports unknown coefficients") {
  RingHandle R = rational_ring();
  LaurentSeries f = parse_series(R, "t^-4", 0); // trunc too low: f * dg has trunc <= -1
  LaurentSeries g = parse_series(R, "t^2", 3);
  CHECK_THROWS_AS(residue_pairing(f, g), TruncationError);
}

TEST_CASE("dlog examples") {
  RingHandle R = rational_ring();
  CHECK(dlog(parse_series(R, "t^3", 12)).agrees_with(parse_series(R, "3*t^-1", 8)));
  LaurentSeries f = parse_series(R, "t^2 - t^3", 12); // t^2 (1 - t)
  LaurentSeries want = parse_series(R, "2*t^-1 - 1 - t - t^2 - t^3", 4);
  CHECK(dlog(f).agrees_with(want));

  RingHandle N = make_ring({"e1"}, {2});
  LaurentSeries g = parse_series(N, "1 - e1*t", 12);
  CHECK(dlog(g).agrees_with(parse_series(N, "0 - e1", 8)));
}

TEST_CASE("dlog is multiplicative") {
  std::mt19937_64 rng(7);
  RingHandle R = make_ring({"e1"}, {2});
  for (int it = 0; it < 20; ++it) {
    LaurentSeries f = random_series(rng, R, 14);
    LaurentSeries g = random_series(rng, R, 14);
    if (!f.invertible() || !g.invertible()) continue;
    LaurentSeries lhs = dlog(f * g);
    LaurentSeries rhs = dlog(f) + dlog(g);
    CHECK(lhs.agrees_with(rhs));
  }
}

TEST_CASE("log1/exp0 examples and round trip") {
  RingHandle R = rational_ring();
  LaurentSeries u = parse_series(R, "1 - t", 8);
  LaurentSeries want = parse_series(R, "0 - t - 1/2*t^2 - 1/3*t^3 - 1/4*t^4", 5);
  CHECK(log1(u).agrees_with(want));
  CHECK(exp0(log1(u)).agrees_with(u));

  RingHandle N = make_ring({"e1", "e2"}, {2, 2});
  Scalar ee = Scalar::generator(N, 0) * Scalar::generator(N, 1);
  LaurentSeries x = LaurentSeries::monomial(N, 0, -ee, 9);
  LaurentSeries got = exp0(x);
  LaurentSeries expect = LaurentSeries::constant(N, 1, 9);
  expect.add_coeff(0, -ee);
  CHECK(got.agrees_with(expect));

  CHECK_THROWS_AS(log1(parse_series(R, "t", 8)), std::invalid_argument);
}

TEST_CASE("round trip with mixed nilpotent and positive parts") {
  std::mt19937_64 rng(11);
  RingHandle N = make_ring({"e1", "e2"}, {2, 2});
  for (int it = 0; it < 15; ++it) {
    LaurentSeries x(N, 16);
    std::uniform_int_distribution<long> pos(1, 4), neg(-3, -1), num(-3, 3);
    for (int t = 0; t < 3; ++t) {
      Rational q(num(rng));
      x.add_coeff(pos(rng), Scalar::constant(N, q));
    }
    Scalar nil = Scalar::generator(N, 0) * Rational(num(rng)) +
                 Scalar::generator(N, 1) * Rational(num(rng));
    x.add_coeff(neg(rng), nil);
    LaurentSeries u = exp0(x);
    CHECK(log1(u).agrees_with(x));
  }
}

TEST_CASE("ring axioms on randomized series") {
  std::mt19937_64 rng(3);
  RingHandle R = make_ring({"e1"}, {3});
  for (int it = 0; it < 15; ++it) {
    LaurentSeries f = random_series(rng, R, 10);
    LaurentSeries g = random_series(rng, R, 10);
    LaurentSeries h = random_series(rng, R, 10);
    CHECK(((f * g) * h).agrees_with(f * (g * h)));
    CHECK((f * (g + h)).agrees_with(f * g + f * h));
    CHECK((f * g).agrees_with(g * f));
  }
}

TEST_CASE("residue antisymmetry Res(f dg) + Res(g df) = 0") {
  std::mt19937_64 rng(5);
  RingHandle R = rational_ring();
  for (int it = 0; it < 25; ++it) {
    LaurentSeries f = random_series(rng, R, 20);
    LaurentSeries g = random_series(rng, R, 20);
    Scalar s = residue_pairing(f, g) + residue_pairing(g, f);
    CHECK(s.is_zero());
  }
}

TEST_CASE("truncation propagation never reports uncertified coefficients") {
  RingHandle R = rational_ring();
  LaurentSeries f = parse_series(R, "t^-2 + 1", 5);
  LaurentSeries g = parse_series(R, "t^-1 + t", 4);
  LaurentSeries p = f * g;
  // min(5 + (-1), 4 + (-2)) = 2
  CHECK(p.trunc() == 2);
  CHECK_THROWS_AS(p.coeff(2), TruncationError);
  CHECK(p.coeff(1) == Scalar::constant(R, 1));
  CHECK(p.coeff(-1) == Scalar::constant(R, 2));
}

TEST_CASE("series literal round trip") {
  RingHandle N = make_ring({"e1", "e2"}, {2, 2});
  LaurentSeries s = parse_series(N, "3/2*t^-2 + t + e1*t^3", 12);
  LaurentSeries back = parse_series(N, s.to_string(), 12);
  CHECK(back.agrees_with(s));
  CHECK(s.to_string() == "3/2*t^-2 + t + e1*t^3");
}
