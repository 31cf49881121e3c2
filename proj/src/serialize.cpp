#include "latva/serialize.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latva {

namespace {

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return to_integer(j.get<long long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("expected integer or decimal string");
}

std::string monomial_key(const ScalarRing& ring, const Monomial& m) {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (any) os << "*";
    os << ring.name(static_cast<int>(i));
    if (m[i] > 1) os << "^" << m[i];
    any = true;
  }
  return any ? os.str() : "1";
}

Monomial monomial_from_key(const ScalarRing& ring, const std::string& key) {
  Monomial m(ring.generators(), 0);
  if (key == "1") return m;
  std::istringstream is(key);
  std::string part;
  while (std::getline(is, part, '*')) {
    std::string name = part;
    int power = 1;
    if (auto pos = part.find('^'); pos != std::string::npos) {
      name = part.substr(0, pos);
      power = std::stoi(part.substr(pos + 1));
    }
    int i = ring.index_of(name);
    if (i < 0) throw std::invalid_argument("unknown monomial symbol " + name);
    m[i] += power;
  }
  return m;
}

} // namespace

Json rational_to_json(const Rational& q) {
  Json pair = Json::array();
  pair.push_back(integer_to_json(q.get_num()));
  pair.push_back(integer_to_json(q.get_den()));
  return pair;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected [numerator, denominator]");
  Rational q(integer_from_json(j[0]), integer_from_json(j[1]));
  q.canonicalize();
  return q;
}

Json scalar_to_json(const Scalar& s) {
  Json out = Json::array();
  for (const auto& [m, q] : s.terms()) {
    Json term = Json::array();
    term.push_back(monomial_key(*s.ring(), m));
    term.push_back(integer_to_json(q.get_num()));
    term.push_back(integer_to_json(q.get_den()));
    out.push_back(term);
  }
  return out;
}

Json series_to_json(const LaurentSeries& s) {
  Json out = Json::array();
  for (const auto& [e, c] : s.coeffs()) {
    Json pair = Json::array();
    pair.push_back(e);
    pair.push_back(scalar_to_json(c));
    out.push_back(pair);
  }
  return out;
}

LaurentSeries series_from_json(const RingHandle& ring, const Json& j, long trunc) {
  LaurentSeries s(ring, trunc);
  if (!j.is_array()) throw std::invalid_argument("series JSON must be a list");
  for (const auto& pair : j) {
    long e = pair.at(0).get<long>();
    Scalar c(ring);
    for (const auto& term : pair.at(1)) {
      Monomial m = monomial_from_key(*ring, term.at(0).get<std::string>());
      Rational q(integer_from_json(term.at(1)), integer_from_json(term.at(2)));
      q.canonicalize();
      c.add_term(m, q);
    }
    s.add_coeff(e, c);
  }
  return s;
}

Json fock_to_json(const FockVector& v) {
  Json out = Json::array();
  for (const auto& [k, c] : v.terms()) {
    Json term = Json::object();
    Json modes = Json::array();
    for (const auto& [n, i] : k.modes) modes.push_back(Json::array({n, i}));
    term["modes"] = modes;
    Json charge = Json::array();
    for (long long g : k.charge) charge.push_back(g);
    term["charge"] = charge;
    term["coeff"] = rational_to_json(c);
    bool off = false;
    for (const auto& q : k.offset)
      if (!latva::is_zero(q)) off = true;
    if (off) {
      Json offset = Json::array();
      for (const auto& q : k.offset) offset.push_back(rational_to_json(q));
      term["offset"] = offset;
    }
    out.push_back(term);
  }
  return out;
}

FockVector fock_from_json(const Json& j, int rank) {
  FockVector v;
  if (!j.is_array()) throw std::invalid_argument("state JSON must be a list of terms");
  for (const auto& term : j) {
    Ket k;
    for (const auto& mi : term.at("modes"))
      k.modes.emplace_back(mi.at(0).get<int>(), mi.at(1).get<int>());
    std::sort(k.modes.begin(), k.modes.end());
    for (const auto& g : term.at("charge")) k.charge.push_back(g.get<long long>());
    if (k.charge.size() != static_cast<size_t>(rank))
      throw std::invalid_argument("state charge has wrong rank");
    for (const auto& [n, i] : k.modes)
      if (n < 1 || i < 0 || i >= rank)
        throw std::invalid_argument("state mode out of range");
    if (term.contains("offset")) {
      for (const auto& q : term.at("offset")) k.offset.push_back(rational_from_json(q));
      if (k.offset.size() != static_cast<size_t>(rank))
        throw std::invalid_argument("state offset has wrong rank");
    }
    v.add(k, rational_from_json(term.at("coeff")));
  }
  return v;
}

Json jet_to_json(const ConnectionJet& nu) {
  Json out = Json::array();
  for (const auto& [n, l] : nu.polar) {
    Json cov = Json::array();
    for (const auto& q : l) cov.push_back(rational_to_json(q));
    out.push_back(Json::array({n, cov}));
  }
  return out;
}

ConnectionJet jet_from_json(const Json& j, int rank) {
  ConnectionJet nu = ConnectionJet::zero(rank);
  if (!j.is_array()) throw std::invalid_argument("jet JSON must be a list of [n, covector]");
  for (const auto& pair : j) {
    long n = pair.at(0).get<long>();
    Covector l;
    for (const auto& q : pair.at(1)) l.push_back(rational_from_json(q));
    if (l.size() != static_cast<size_t>(rank))
      throw std::invalid_argument("jet covector has wrong rank");
    Covector cur = nu.lambda(n);
    for (int i = 0; i < rank; ++i) cur[i] += l[i];
    nu.set_lambda(n, cur);
  }
  return nu;
}

Json spectral_point_to_json(const SpectralPoint& p) {
  Json out = Json::object();
  Json irr = Json::array();
  for (const auto& [n, l] : p.irregular) {
    Json cov = Json::array();
    for (const auto& q : l) cov.push_back(rational_to_json(q));
    irr.push_back(Json::array({n, cov}));
  }
  out["irregular"] = irr;
  Json res = Json::array();
  for (const auto& q : p.residue) res.push_back(rational_to_json(q));
  out["residue"] = res;
  Json cls = Json::array();
  for (const auto& q : p.residue_class) cls.push_back(rational_to_json(q));
  out["residue_class"] = cls;
  Json cc = Json::array();
  for (const auto& z : p.central_character) cc.push_back(integer_to_json(z));
  out["central_character"] = cc;
  return out;
}

} // namespace latva
