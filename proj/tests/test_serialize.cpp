#include <doctest.h>

#include "latva/serialize.hpp"
#include "latva/verify.hpp"

using namespace latva;

TEST_CASE("series JSON round trip") {
  RingHandle N = make_ring({"e1", "e2"}, {2, 2});
  LaurentSeries s = parse_series(N, "3/2*t^-2 + t + e1*t^3 - e1*e2", 12);
  Json j = series_to_json(s);
  LaurentSeries back = series_from_json(N, j, 12);
  CHECK(back.agrees_with(s));
  // shape: list of [exponent, [[monomial, num, den], ...]]
  CHECK(j.is_array());
  CHECK(j[0][0].get<long>() == -2);
  CHECK(j[0][1][0][0].get<std::string>() == "1");
  CHECK(j[0][1][0][1].get<long>() == 3);
  CHECK(j[0][1][0][2].get<long>() == 2);
}

TEST_CASE("fock JSON round trip") {
  FockVector v;
  Ket k1 = make_vacuum({1, -1});
  Ket k2 = make_vacuum({0, 0}, {Rational(1, 2), Rational(0)});
  k2.modes = {{1, 0}, {3, 1}};
  v.add(k1, Rational(2, 3));
  v.add(k2, Rational(-5));
  Json j = fock_to_json(v);
  FockVector back = fock_from_json(j, 2);
  CHECK(back == v);
  CHECK(j[0].contains("modes"));
  CHECK(j[0]["coeff"].is_array());
}

TEST_CASE("jet JSON round trip") {
  ConnectionJet nu = ConnectionJet::zero(2);
  nu.set_lambda(0, {Rational(1, 2), Rational(3)});
  nu.set_lambda(3, {Rational(0), Rational(-2, 7)});
  Json j = jet_to_json(nu);
  ConnectionJet back = jet_from_json(j, 2);
  CHECK(back == nu);
  CHECK(j[0][0].get<long>() == 0);
}

TEST_CASE("verify report JSON is deterministic") {
  VerifyConfig cfg;
  cfg.symbol_cases = 10;
  VerifyReport r1 = run_suite("symbol", cfg);
  VerifyReport r2 = run_suite("symbol", cfg);
  CHECK(report_to_json(r1).dump(2) == report_to_json(r2).dump(2));
  CHECK(r1.failed == 0);
}
