#include "latva/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>

#include "latva/ccsymbol.hpp"

namespace latva {

namespace {

struct NamedLevel {
  std::string name;
  LatticeLevel level;
};

std::vector<NamedLevel> gram_set(const VerifyConfig& cfg) {
  if (cfg.custom_gram) return {{"custom", *cfg.custom_gram}};
  return {
      {"c1", LatticeLevel(1, {1})},
      {"c2", LatticeLevel(1, {2})},
      {"a2", LatticeLevel(2, {2, 1, 1, 2})},
  };
}

void add_case(VerifyReport& rep, const std::string& id, bool pass, const std::string& detail) {
  rep.cases.push_back({id, pass, detail});
  (pass ? rep.passed : rep.failed) += 1;
}

std::string vec_str(const LatticeVector& g) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
  os << ")";
  return os.str();
}

std::vector<LatticeVector> coord_box(int rank, long box) {
  std::vector<LatticeVector> pts;
  LatticeVector cur(rank, -box);
  while (true) {
    pts.push_back(cur);
    int i = rank - 1;
    for (; i >= 0; --i) {
      if (++cur[i] <= box) break;
      cur[i] = -box;
    }
    if (i < 0) break;
  }
  return pts;
}

// charges with (1/2) c(g,g) <= bound, positive-definite levels
std::vector<LatticeVector> charge_box(const LatticeLevel& level, const Rational& bound) {
  std::vector<LatticeVector> out;
  for (long box = 1;; ++box) {
    std::vector<LatticeVector> pts = coord_box(level.rank(), box);
    out.clear();
    bool shell_hit = false;
    for (const auto& g : pts) {
      if (Rational(to_rational(level.pairing(g, g))) / 2 <= bound) {
        out.push_back(g);
        for (long long x : g)
          if (x == box || x == -box) shell_hit = true;
      }
    }
    if (!shell_hit) return out;
    if (box > 64) return out;
  }
}

// ---- interned sparse evaluation for the Virasoro bracket ----

struct Interner {
  std::map<Ket, uint32_t> ids;
  std::vector<Ket> kets;
  uint32_t intern(const Ket& k) {
    auto [it, fresh] = ids.try_emplace(k, static_cast<uint32_t>(kets.size()));
    if (fresh) kets.push_back(k);
    return it->second;
  }
};

using SparseVec = std::vector<std::pair<uint32_t, Rational>>;

class CachedSugawara {
 public:
  CachedSugawara(const FockSpace& space, Interner& tab) : space_(space), tab_(tab) {}

  const SparseVec& column(int m, uint32_t id) {
    auto key = std::make_pair(m, id);
    auto it = cols_.find(key);
    if (it != cols_.end()) return it->second;
    FockVector out = space_.sugawara_L(m, FockVector::single(tab_.kets[id]));
    SparseVec col;
    col.reserve(out.terms().size());
    for (const auto& [k, c] : out.terms()) col.emplace_back(tab_.intern(k), c);
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return cols_.emplace(key, std::move(col)).first->second;
  }

 private:
  const FockSpace& space_;
  Interner& tab_;
  std::map<std::pair<int, uint32_t>, SparseVec> cols_;
};

struct DenseAcc {
  std::vector<Rational> val;
  std::vector<uint32_t> touched;
  void ensure(size_t n) {
    if (val.size() < n) val.resize(n, Rational(0));
  }
  void add(uint32_t id, const Rational& c) {
    ensure(id + 1);
    if (latva::is_zero(val[id])) touched.push_back(id);
    val[id] += c;
  }
  bool all_zero() const {
    for (uint32_t id : touched)
      if (!latva::is_zero(val[id])) return false;
    return true;
  }
  void clear() {
    for (uint32_t id : touched) val[id] = 0;
    touched.clear();
  }
};

// ---- expansion-identity helper: [h^{gp}_n, V^gamma(z)] = c(gamma,gp) z^n V ----

std::string check_heisenberg_covariance(const FockSpace& space, const LatticeVector& gamma,
                                        const SignCocycle& eps, const FockVector& v,
                                        const Rational& window_lo, const Rational& window_hi) {
  const LatticeLevel& level = space.level();
  int r = level.rank();
  Rational hi = window_hi + 4;
  VertexExpansion V = vertex_apply(space, gamma, v, window_lo - 4, hi, eps);
  for (int dir = 0; dir < r; ++dir) {
    LatticeVector gp(r, 0);
    gp[dir] = 1;
    Rational cgp = to_rational(level.pairing(gamma, gp));
    for (int n = -2; n <= 2; ++n) {
      FockVector hv = space.apply_h(gp, n, v);
      VertexExpansion Vh = vertex_apply(space, gamma, hv, window_lo - 4, hi, eps);
      for (Rational q = window_lo; q <= window_hi; q += 1) {
        FockVector lhs = space.apply_h(gp, n, V.coeff(q));
        lhs.add(Vh.coeff(q), -1);
        lhs.add(V.coeff(q - Rational(n)), -cgp);
        if (!lhs.is_zero()) {
          std::ostringstream os;
          os << "covariance fails: gamma=" << vec_str(gamma) << " dir=" << dir + 1
             << " n=" << n << " z^" << rational_to_string(q);
          return os.str();
        }
      }
    }
  }
  return "";
}

// ---- suites ----

void suite_heisenberg(const VerifyConfig& cfg, VerifyReport& rep) {
  for (const auto& [name, level] : gram_set(cfg)) {
    int r = level.rank();
    InducedModule alg = build_module(level, std::vector<long long>(r, 0), Rational(cfg.cutoff));
    FockSpace space(level, Rational(cfg.cutoff) + 9);
    long checked = 0;
    std::string witness;
    for (const auto& ket : alg.basis) {
      FockVector v = FockVector::single(ket);
      for (int i = 0; i < r && witness.empty(); ++i)
        for (int j = 0; j < r && witness.empty(); ++j) {
          LatticeVector a(r, 0), b(r, 0);
          a[i] = 1;
          b[j] = 1;
          for (int m = -4; m <= 4 && witness.empty(); ++m)
            for (int n = -4; n <= m; ++n) {
              FockVector lhs = space.apply_h(a, m, space.apply_h(b, n, v));
              lhs.add(space.apply_h(b, n, space.apply_h(a, m, v)), -1);
              if (m + n == 0) lhs.add(v, -to_rational(m * level.pairing(a, b)));
              ++checked;
              if (!lhs.is_zero()) {
                witness = "bracket fails on " + ket.to_string() + " dirs (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) + ") m=" +
                          std::to_string(m) + " n=" + std::to_string(n);
                break;
              }
            }
        }
      if (!witness.empty()) break;
    }
    add_case(rep, "heisenberg/" + name, witness.empty(),
             witness.empty() ? "checked " + std::to_string(checked) + " brackets on " +
                                   std::to_string(alg.basis.size()) + " kets"
                             : witness);

    // weight grading: h_n shifts weight by -n, shift moves momentum by c(gamma)
    std::string gwitness;
    SignCocycle eps = build_cocycle(level);
    for (const auto& ket : alg.basis) {
      if (gwitness.size()) break;
      Rational w0 = space.weight(ket);
      FockVector v = FockVector::single(ket);
      for (int n = -3; n <= 3 && gwitness.empty(); ++n) {
        if (n == 0) continue;
        LatticeVector a(r, 0);
        a[0] = 1;
        FockVector w = space.apply_h(a, n, v);
        for (const auto& [k2, c] : w.terms())
          if (space.weight(k2) != w0 - Rational(n)) {
            gwitness = "h_n weight shift fails on " + ket.to_string();
            break;
          }
      }
      LatticeVector g(r, 0);
      g[r - 1] = 1;
      FockVector sh = space.apply_shift(g, v, eps);
      Covector want = space.momentum(ket);
      auto cg = level.gram_times(g);
      for (int i = 0; i < r; ++i) want[i] += to_rational(cg[i]);
      for (const auto& [k2, c] : sh.terms())
        if (space.momentum(k2) != want) gwitness = "shift momentum fails on " + ket.to_string();
    }
    add_case(rep, "heisenberg/" + name + "/grading", gwitness.empty(),
             gwitness.empty() ? "weight and momentum grading verified" : gwitness);
  }
}

void suite_virasoro(const VerifyConfig& cfg, VerifyReport& rep) {
  for (const auto& [name, level] : gram_set(cfg)) {
    if (!level.nondegenerate()) continue;
    int r = level.rank();
    InducedModule alg = build_module(level, std::vector<long long>(r, 0), Rational(cfg.cutoff));
    FockSpace space(level, Rational(cfg.cutoff) + 6);
    Interner tab;
    CachedSugawara L(space, tab);
    DenseAcc acc;
    long checked = 0;
    std::string witness;
    for (const auto& ket : alg.basis) {
      if (!witness.empty()) break;
      uint32_t id0 = tab.intern(ket);
      for (int m = -3; m <= 3 && witness.empty(); ++m)
        for (int n = -3; n <= m; ++n) {
          acc.clear();
          // L_m L_n - L_n L_m - (m-n) L_{m+n} - delta (r/12)(m^3-m)
          for (const auto& [id1, c1] : L.column(n, id0))
            for (const auto& [id2, c2] : L.column(m, id1)) acc.add(id2, c1 * c2);
          for (const auto& [id1, c1] : L.column(m, id0))
            for (const auto& [id2, c2] : L.column(n, id1)) acc.add(id2, -c1 * c2);
          for (const auto& [id2, c2] : L.column(m + n, id0)) acc.add(id2, Rational(n - m) * c2);
          if (m + n == 0) {
            long mm = m;
            acc.add(id0, Rational(-r * (mm * mm * mm - mm), 12));
          }
          ++checked;
          if (!acc.all_zero()) {
            witness = "Virasoro bracket fails on " + ket.to_string() + " m=" +
                      std::to_string(m) + " n=" + std::to_string(n);
            break;
          }
        }
    }
    add_case(rep, "virasoro/" + name, witness.empty(),
             witness.empty() ? "checked " + std::to_string(checked) +
                                   " brackets (central charge = rank) on " +
                                   std::to_string(alg.basis.size()) + " kets"
                             : witness);

    // the translation/weight dictionary on pure charges
    std::string dwitness;
    long dcount = 0;
    for (const auto& g : coord_box(r, 3)) {
      Ket vac = make_vacuum(g);
      FockSpace s2(level, FockSpace(level, Rational(0)).weight(vac) + 2);
      FockVector e = FockVector::single(vac);
      Rational half = to_rational(level.pairing(g, g)) / 2;
      if (!(s2.sugawara_L(0, e) == e.scaled(half))) {
        dwitness = "L0 eigenvalue fails at " + vec_str(g);
        break;
      }
      if (!(s2.sugawara_L(-1, e) == s2.apply_h(g, -1, e))) {
        dwitness = "L_{-1} = h_{-1} fails at " + vec_str(g);
        break;
      }
      if (!s2.sugawara_L(1, e).is_zero() || !s2.sugawara_L(2, e).is_zero()) {
        dwitness = "L_{>=1} does not annihilate " + vec_str(g);
        break;
      }
      ++dcount;
    }
    add_case(rep, "virasoro/" + name + "/dictionary", dwitness.empty(),
             dwitness.empty() ? "L0/L-1/L>=1 verified on " + std::to_string(dcount) + " charges"
                              : dwitness);
  }
}

void suite_ope(const VerifyConfig& cfg, VerifyReport& rep) {
  for (const auto& [name, level] : gram_set(cfg)) {
    if (!level.nondegenerate()) continue;
    int r = level.rank();
    SignCocycle eps = build_cocycle(level);
    // pole law and top coefficient over the coordinate box
    std::string witness;
    long checked = 0;
    for (const auto& g1 : coord_box(r, 3)) {
      if (!witness.empty()) break;
      for (const auto& g2 : coord_box(r, 3)) {
        auto [pole, top] = ope_leading(level, g1, g2, eps);
        long long c12 = level.pairing(g1, g2);
        LatticeVector sum(r);
        for (int i = 0; i < r; ++i) sum[i] = g1[i] + g2[i];
        Rational sign = (c12 % 2) ? -1 : 1; // kappa
        if (eps.eval(g1, g2) < 0) sign = -sign;
        FockVector want = FockVector::single(make_vacuum(sum), sign);
        if (pole != c12 || !(top == want)) {
          witness = "pole law fails at " + vec_str(g1) + ", " + vec_str(g2);
          break;
        }
        ++checked;
      }
    }
    add_case(rep, "ope/" + name + "/pole-law", witness.empty(),
             witness.empty() ? "leading exponent c(g1,g2) and cocycle-signed top verified on " +
                                   std::to_string(checked) + " pairs"
                             : witness);

    // Heisenberg covariance of the vertex operator
    std::string cwitness;
    for (const auto& g : charge_box(level, 3)) {
      FockSpace space(level, Rational(cfg.cutoff) + to_rational(level.pairing(g, g)) + 16);
      FockVector v0 = FockVector::single(make_vacuum(LatticeVector(r, 0)));
      LatticeVector a(r, 0);
      a[0] = 1;
      FockVector v1 = space.apply_h(a, -1, v0);
      for (const auto& v : {v0, v1}) {
        cwitness = check_heisenberg_covariance(space, g, eps, v, Rational(cfg.window_lo),
                                               Rational(cfg.window_hi));
        if (!cwitness.empty()) break;
      }
      if (!cwitness.empty()) break;
    }
    add_case(rep, "ope/" + name + "/heisenberg-covariance", cwitness.empty(),
             cwitness.empty() ? "[h_n, V(z)] = c z^n V(z) coefficientwise" : cwitness);
  }

  // cocycle round trip, exhaustive over small symmetric levels
  for (int rank = 1; rank <= 2; ++rank) {
    std::string witness;
    long count = 0;
    std::vector<std::vector<long long>> mats;
    if (rank == 1) {
      for (long long a = -3; a <= 3; ++a) mats.push_back({a});
    } else {
      for (long long a = -3; a <= 3; ++a)
        for (long long b = -3; b <= 3; ++b)
          for (long long d = -3; d <= 3; ++d) mats.push_back({a, b, b, d});
    }
    for (const auto& mat : mats) {
      LatticeLevel level(rank, mat);
      if (!level.nondegenerate()) continue;
      SignCocycle eps = build_cocycle(level);
      std::string msg = roundtrip_check(level, eps, 2);
      ++count;
      if (!msg.empty()) {
        witness = "gram " + vec_str(LatticeVector(mat.begin(), mat.end())) + ": " + msg;
        break;
      }
    }
    add_case(rep, "ope/roundtrip/rank" + std::to_string(rank), witness.empty(),
             witness.empty() ? "reconstructed tables match on " + std::to_string(count) +
                                   " nondegenerate levels"
                             : witness);
  }
  {
    // corrupted cocycle must be detected with a witness pair
    LatticeLevel level(2, {2, 1, 1, 2});
    SignCocycle good = build_cocycle(level);
    std::vector<int> bad_tab;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) bad_tab.push_back(good.basis_sign(i, j));
    bad_tab[1 * 2 + 0] = -bad_tab[1 * 2 + 0];
    SignCocycle bad(2, bad_tab);
    std::string msg = roundtrip_check(level, bad, 2);
    add_case(rep, "ope/roundtrip/corrupted-detected", !msg.empty(),
             msg.empty() ? "corrupted cocycle went undetected" : "witness: " + msg);
  }
}

void suite_ode(const VerifyConfig& cfg, VerifyReport& rep) {
  for (const auto& [name, level] : gram_set(cfg)) {
    if (!level.nondegenerate()) continue;
    int r = level.rank();
    SignCocycle eps = build_cocycle(level);
    Rational wmax = std::min<Rational>(Rational(4), Rational(cfg.cutoff));
    InducedModule alg = build_module(level, std::vector<long long>(r, 0), wmax);
    std::string witness;
    long checked = 0;
    for (const auto& g : charge_box(level, 3)) {
      if (!witness.empty()) break;
      Rational quad = to_rational(level.pairing(g, g)) / 2;
      FockSpace space(level, wmax + quad + 2 * Rational(cfg.window_hi) + 12);
      for (const auto& ket : alg.basis) {
        VertexExpansion R = ode_residual(space, g, Rational(cfg.window_lo),
                                         Rational(cfg.window_hi), eps, FockVector::single(ket));
        ++checked;
        if (!R.is_zero_on_window()) {
          witness = "ODE residual nonzero for gamma=" + vec_str(g) + " on " + ket.to_string() +
                    " at z^" + rational_to_string(*R.leading());
          break;
        }
      }
    }
    add_case(rep, "ode/" + name, witness.empty(),
             witness.empty() ? "residual zero on " + std::to_string(checked) +
                                   " (gamma, test vector) pairs, window [" +
                                   std::to_string(cfg.window_lo) + "," +
                                   std::to_string(cfg.window_hi) + "]"
                             : witness);

    // negative control: dropping the n=1 creation term must break the ODE
    LatticeVector g0(r, 0);
    g0[0] = 1;
    Rational quad = to_rational(level.pairing(g0, g0)) / 2;
    FockSpace space(level, quad + 2 * Rational(cfg.window_hi) + 12);
    VertexOptions corrupt;
    corrupt.drop_creation_n1 = true;
    VertexExpansion R =
        ode_residual(space, g0, Rational(cfg.window_lo), Rational(cfg.window_hi), eps,
                     FockVector::single(make_vacuum(LatticeVector(r, 0))), corrupt);
    add_case(rep, "ode/" + name + "/negative-control", !R.is_zero_on_window(),
             !R.is_zero_on_window()
                 ? "corrupted operator detected at z^" + rational_to_string(*R.leading())
                 : "corrupted operator went undetected");
  }
}

void suite_locality(const VerifyConfig& cfg, VerifyReport& rep) {
  for (const auto& [name, level] : gram_set(cfg)) {
    if (!level.nondegenerate()) continue;
    int r = level.rank();
    SignCocycle eps = build_cocycle(level);
    auto charges = charge_box(level, 2);
    FockVector vac = FockVector::single(make_vacuum(LatticeVector(r, 0)));
    std::string witness;
    long pairs = 0, controls = 0;
    std::string control_witness;
    for (const auto& g1 : charges) {
      if (!witness.empty() || !control_witness.empty()) break;
      for (const auto& g2 : charges) {
        long long c12 = level.pairing(g1, g2);
        int N = static_cast<int>(std::max<long long>(0, -c12)) + cfg.locality_N_offset;
        if (N < 0) N = 0;
        Rational depth = (to_rational(level.pairing(g1, g1)) +
                          to_rational(level.pairing(g2, g2))) / 2 +
                         to_rational(std::abs(c12)) + Rational(cfg.locality_orders + N) * 2 + 8;
        FockSpace space(level, depth);
        LocalityReport lr =
            locality_residual(space, g1, g2, N, cfg.locality_orders, eps, vac);
        ++pairs;
        if (!lr.zero()) {
          auto& [p, q, c] = lr.nonzero.front();
          witness = "locality fails at N=" + std::to_string(N) + " for " + vec_str(g1) + ", " +
                    vec_str(g2) + " at z^" + rational_to_string(p) + " w^" +
                    rational_to_string(q);
          break;
        }
        if (lr.checked == 0) {
          witness = "no certified monomials for " + vec_str(g1) + ", " + vec_str(g2);
          break;
        }
        if (N >= 1 && cfg.locality_N_offset == 0) {
          LocalityReport under =
              locality_residual(space, g1, g2, N - 1, cfg.locality_orders, eps, vac);
          ++controls;
          if (under.zero())
            control_witness = "under-cleared residual unexpectedly zero for " + vec_str(g1) +
                              ", " + vec_str(g2);
        }
      }
    }
    add_case(rep, "locality/" + name, witness.empty(),
             witness.empty() ? "residual zero at minimal N on " + std::to_string(pairs) +
                                   " charge pairs (vacuum state)"
                             : witness);
    add_case(rep, "locality/" + name + "/minimality", control_witness.empty(),
             control_witness.empty()
                 ? "N-1 clearing detected nonzero on " + std::to_string(controls) + " pairs"
                 : control_witness);

    // one descendant test vector per level
    LatticeVector a(r, 0);
    a[0] = 1;
    LatticeVector g1 = a;
    LatticeVector g2(r, 0);
    g2[0] = -1;
    long long c12 = level.pairing(g1, g2);
    int N = static_cast<int>(std::max<long long>(0, -c12));
    Rational depth = to_rational(level.pairing(a, a)) + Rational(cfg.locality_orders + N) * 2 + 10;
    FockSpace space(level, depth);
    FockVector state = space.apply_h(a, -1, vac);
    LocalityReport lr = locality_residual(space, g1, g2, N, cfg.locality_orders, eps, state);
    add_case(rep, "locality/" + name + "/descendant-state", lr.zero() && lr.checked > 0,
             lr.zero() && lr.checked > 0
                 ? "residual zero on h_{-1}|0> (" + std::to_string(lr.checked) + " monomials)"
                 : "residual nonzero or uncertified on descendant state");
  }
}

void suite_symbol(const VerifyConfig& cfg, VerifyReport& rep) {
  std::mt19937_64 rng(cfg.seed);
  const long K = std::max<long>(cfg.trunc, 48);
  std::vector<RingHandle> rings = {
      rational_ring(),
      make_ring({"e1"}, {2}),
      make_ring({"e1", "e2"}, {2, 2}),
      make_ring({"e1", "e2"}, {3, 2}),
      make_ring({"e1", "e2"}, {3, 3}),
      make_ring({"e1", "e2", "e3"}, {2, 2, 2}),
  };
  auto rand_int = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  };
  auto rand_rat = [&]() {
    long num = rand_int(-6, 6);
    long den = rand_int(1, 6);
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  auto rand_nilpotent = [&](const RingHandle& ring) {
    Scalar s(ring);
    int tries = rand_int(1, 2);
    for (int t = 0; t < tries; ++t) {
      Monomial m(ring->generators(), 0);
      bool any = false;
      for (int i = 0; i < ring->generators(); ++i) {
        m[i] = static_cast<int>(rand_int(0, ring->order(i) - 1));
        if (m[i]) any = true;
      }
      if (!any && ring->generators() > 0) m[static_cast<size_t>(rand_int(0, ring->generators() - 1))] = 1;
      if (ring->generators() == 0) continue;
      s.add_term(m, rand_rat());
    }
    return s;
  };
  auto rand_unit_series = [&](const RingHandle& ring) {
    long v = rand_int(-2, 2);
    LaurentSeries f(ring, K);
    Rational lead = rand_rat();
    if (latva::is_zero(lead)) lead = 1;
    f.set_coeff(v, Scalar::constant(ring, lead) + rand_nilpotent(ring));
    int terms = rand_int(1, 4);
    for (int t = 0; t < terms; ++t) {
      long e = v + rand_int(1, 4);
      f.add_coeff(e, Scalar::constant(ring, rand_rat()) + rand_nilpotent(ring));
    }
    if (ring->generators() > 0 && rand_int(0, 1)) {
      long e = v - rand_int(1, 2);
      Scalar nil = rand_nilpotent(ring);
      if (!nil.is_zero()) f.add_coeff(e, nil);
    }
    return f;
  };

  long bimult_fail = 0, antisym_fail = 0, steinberg_fail = 0, steinberg_run = 0;
  long tame_fail = 0, oracle_fail = 0;
  std::string witness;
  for (int c = 0; c < cfg.symbol_cases; ++c) {
    const RingHandle& ring = rings[c % rings.size()];
    LaurentSeries f = rand_unit_series(ring);
    LaurentSeries g = rand_unit_series(ring);
    LaurentSeries h = rand_unit_series(ring);
    Scalar one = Scalar::constant(ring, 1);

    Scalar fg = cc_symbol(f, g);
    // bimultiplicativity
    if (!(cc_symbol(f * h, g) == fg * cc_symbol(h, g))) {
      ++bimult_fail;
      if (witness.empty()) witness = "bimultiplicativity case " + std::to_string(c);
    }
    // antisymmetry: <f,g><g,f> = 1 and the diagonal sign <f,f> = (-1)^{v(f)}
    if (!(fg * cc_symbol(g, f) == one)) {
      ++antisym_fail;
      if (witness.empty()) witness = "inverse-symmetry case " + std::to_string(c);
    }
    Scalar ff = cc_symbol(f, f);
    Scalar want_diag = Scalar::constant(ring, (*f.val() % 2) ? -1 : 1);
    if (!(ff == want_diag)) {
      ++antisym_fail;
      if (witness.empty()) witness = "diagonal sign case " + std::to_string(c);
    }
    // Steinberg, when 1 - f is invertible
    LaurentSeries one_minus_f = LaurentSeries::constant(ring, 1, f.trunc()) - f;
    if (one_minus_f.invertible()) {
      ++steinberg_run;
      if (!(cc_symbol(f, one_minus_f) == one)) {
        ++steinberg_fail;
        if (witness.empty()) witness = "Steinberg case " + std::to_string(c);
      }
    }
    // field reduction to the tame symbol
    if (cc_symbol(f, g).augment() != tame_symbol(f, g)) {
      ++tame_fail;
      if (witness.empty()) witness = "tame reduction case " + std::to_string(c);
    }
    // exp-Res oracle for f in 1 + t k[[t]]
    LaurentSeries u = LaurentSeries::constant(ring, 1, K);
    int terms = static_cast<int>(rand_int(1, 3));
    for (int t = 0; t < terms; ++t)
      u.add_coeff(rand_int(1, 4), Scalar::constant(ring, rand_rat()) + rand_nilpotent(ring));
    Scalar lhs = cc_symbol(u, g);
    Scalar res = residue_pairing(log1(u), log1(decompose_unit(g).fminus));
    // Res(log u . dlog g) = Res(log u . dlog g_-): the remaining factors of g
    // contribute nothing to the residue against a positive-exponent series
    if (!(lhs == res.exp_nilpotent())) {
      ++oracle_fail;
      if (witness.empty()) witness = "exp-Res oracle case " + std::to_string(c);
    }
  }
  std::ostringstream counts;
  counts << cfg.symbol_cases << " randomized cases (Steinberg applicable in " << steinberg_run
         << ")";
  add_case(rep, "symbol/bimultiplicativity", bimult_fail == 0,
           bimult_fail ? witness : counts.str());
  add_case(rep, "symbol/antisymmetry", antisym_fail == 0,
           antisym_fail ? witness : "<f,g><g,f> = 1 and <f,f> = (-1)^{v(f)}, " + counts.str());
  add_case(rep, "symbol/steinberg", steinberg_fail == 0,
           steinberg_fail ? witness : counts.str());
  add_case(rep, "symbol/tame-reduction", tame_fail == 0, tame_fail ? witness : counts.str());
  add_case(rep, "symbol/exp-res-oracle", oracle_fail == 0, oracle_fail ? witness : counts.str());
}

void suite_module(const VerifyConfig& cfg, VerifyReport& rep) {
  LatticeLevel level = cfg.custom_gram ? *cfg.custom_gram : LatticeLevel(1, {2});
  if (!level.nondegenerate() || !is_positive_definite(level)) {
    add_case(rep, "module/skipped", false, "module suite needs a positive-definite level");
    return;
  }
  int r = level.rank();
  DualQuotient dq(level);
  SignCocycle eps = build_cocycle(level);
  {
    Integer n = dq.num_classes();
    Integer want = abs(level.det());
    add_case(rep, "module/class-count", n == want,
             "|Gamma^vee / c(Gamma)| = " + n.get_str() + " = |det c|");
  }
  LatticeVector gamma(r, 0);
  gamma[0] = 1;
  for (const auto& chi : dq.enumerate_classes()) {
    std::string tag = "module/chi(";
    for (size_t i = 0; i < chi.size(); ++i) tag += (i ? "," : "") + chi[i].get_str();
    tag += ")";
    InducedModule m = build_module_from_class(level, chi, Rational(cfg.cutoff));

    {
      NilpotencyReport nr = nilpotency_certificate(m, gamma, 4);
      add_case(rep, tag + "/nilpotency", nr.all_within_bound,
               nr.all_within_bound
                   ? "indices within floor(w/n)+1 on " + std::to_string(m.basis.size()) +
                         " kets, max index " + std::to_string(nr.max_index)
                   : "nilpotency index exceeds the weight bound");
    }
    {
      LatticeVector alpha(r, 0);
      alpha[0] = 1;
      SpectrumReport sr = h0_spectrum(m, alpha);
      bool ok = sr.in_lattice_coset;
      std::string detail = "eigenvalues in <alpha, s(chi)> + <alpha, c(Gamma)>";
      // rank-1 level (2): chi = 0 -> even integers, chi = 1 -> odd integers
      if (r == 1 && level.gram(0, 0) == 2) {
        bool odd_class = chi[0] % 2 != 0;
        for (const auto& [e, mult] : sr.eigenvalues) {
          if (!latva::is_integer(e)) ok = false;
          else if (((e.get_num() % 2) != 0) != odd_class) ok = false;
        }
        detail += odd_class ? " (all odd)" : " (all even)";
      }
      add_case(rep, tag + "/h0-spectrum", ok, ok ? detail : "eigenvalue outside the coset");
    }
    {
      Rational wmax = std::min<Rational>(Rational(4), Rational(cfg.cutoff));
      std::string msg = check_modified_vertex(m, gamma, eps, wmax, Rational(4));
      add_case(rep, tag + "/modified-vertex", msg.empty(),
               msg.empty() ? "3.9(b)(i)-(iii) coefficientwise to weight " +
                                 rational_to_string(wmax)
                           : msg);
    }
    {
      std::string msg = check_shift_reconstruction(m, gamma, eps);
      add_case(rep, tag + "/shift-reconstruction", msg.empty(),
               msg.empty() ? "shift operators recovered from modified-operator tops" : msg);
    }
    {
      // graded character independent of the section representative
      std::vector<long long> mu2 = m.mu;
      auto cg = level.gram_times(gamma);
      for (int i = 0; i < r; ++i) mu2[i] += cg[i];
      InducedModule m2 = build_module_with_offset(level, mu2, Rational(cfg.cutoff));
      bool same = graded_character(m) == graded_character(m2);
      add_case(rep, tag + "/section-independence", same,
               same ? "graded character equal for offsets mu and mu + c(gamma)"
                    : "graded characters differ between section representatives");
    }
  }
  if (r == 1 && level.gram(0, 0) == 2) {
    InducedModule m1 = build_module(level, {1}, Rational(cfg.cutoff));
    FockSpace space(level, Rational(cfg.cutoff));
    Rational w = space.weight(m1.generator().terms().begin()->first);
    add_case(rep, "module/chi(1)/generator-weight", w == Rational(1, 4),
             "generator weight " + rational_to_string(w));
  }
  {
    // creation directions are not nilpotent below the cutoff
    InducedModule m = build_module(level, std::vector<long long>(r, 0), Rational(cfg.cutoff));
    FockSpace space(level, Rational(cfg.cutoff));
    FockVector v = m.generator();
    bool stayed_nonzero = true;
    bool cut = false;
    try {
      for (int k = 0; k < 2 * cfg.cutoff + 2; ++k) {
        v = space.apply_h(gamma, -1, v);
        if (v.is_zero()) stayed_nonzero = false;
      }
    } catch (const TruncationError&) {
      cut = true;
    }
    add_case(rep, "module/noncreation-negative-control", stayed_nonzero && cut,
             stayed_nonzero && cut ? "h_{-1} non-nilpotent up to the cutoff (refused beyond)"
                                   : "unexpected vanishing of creation powers");
  }
}

void suite_spectral(const VerifyConfig& cfg, VerifyReport& rep) {
  std::mt19937_64 rng(cfg.seed + 1);
  auto rand_int = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  };
  auto rand_rat = [&]() {
    Rational q(rand_int(-6, 6), rand_int(1, 6));
    q.canonicalize();
    return q;
  };
  std::vector<LatticeLevel> levels = {LatticeLevel(1, {2}), LatticeLevel(2, {2, 1, 1, 2})};
  if (cfg.custom_gram) levels = {*cfg.custom_gram};

  long cov_fail = 0, gauge_fail = 0, add_fail = 0, comm_fail = 0, sect_fail = 0;
  std::string witness;
  for (int c = 0; c < cfg.spectral_cases; ++c) {
    const LatticeLevel& level = levels[c % levels.size()];
    if (!level.nondegenerate() || !is_positive_definite(level)) continue;
    int r = level.rank();
    DualQuotient dq(level);
    auto classes = dq.enumerate_classes();
    const auto& chi = classes[rand_int(0, static_cast<long>(classes.size()) - 1)];
    InducedModule m = build_module_from_class(level, chi, Rational(2));
    FockSpace space(level, Rational(8));
    FockVector v = m.generator();

    ConnectionJet nu = ConnectionJet::zero(r);
    for (long n = 0; n <= 3; ++n) {
      if (rand_int(0, 1) == 0) continue;
      Covector l(r);
      for (int i = 0; i < r; ++i) l[i] = rand_rat();
      nu.set_lambda(n, l);
    }

    SpectralPoint base = support_of_module(space, ConnectionJet::zero(r), dq, v);
    SpectralPoint twisted = support_of_module(space, nu, dq, v);
    if (!(twisted == spectral_sum(base, nu))) {
      ++cov_fail;
      if (witness.empty()) witness = "covariance case " + std::to_string(c);
    }

    // gauge by t^{gamma_check} u
    LatticeVector gc(r);
    for (int i = 0; i < r; ++i) gc[i] = rand_int(-3, 3);
    LaurentSeries u = LaurentSeries::constant(rational_ring(), 1, cfg.trunc);
    for (int t = 0; t < 2; ++t)
      u.add_coeff(rand_int(1, 3), Scalar::constant(rational_ring(), rand_rat()));
    ConnectionJet gauged = apply_gauge(gc, u, nu);
    bool g_ok = true;
    Covector want_res = nu.lambda(0);
    for (int i = 0; i < r; ++i) want_res[i] += to_rational(gc[i]);
    if (gauged.lambda(0) != want_res) g_ok = false;
    for (long n = 1; n <= 4; ++n)
      if (gauged.lambda(n) != nu.lambda(n)) g_ok = false;
    SpectralPoint sp_nu = spectral_class(nu), sp_gauged = spectral_class(gauged);
    if (sp_nu.residue_class != sp_gauged.residue_class ||
        sp_nu.irregular != sp_gauged.irregular)
      g_ok = false;
    if (!g_ok) {
      ++gauge_fail;
      if (witness.empty()) witness = "gauge case " + std::to_string(c);
    }

    // twist additivity and commutator invariance on a denser vector
    FockVector w = v;
    LatticeVector b0(r, 0);
    b0[0] = 1;
    w.add(space.apply_h(b0, -1, v), Rational(1, 2));
    ConnectionJet nu2 = ConnectionJet::zero(r);
    {
      Covector l(r);
      for (int i = 0; i < r; ++i) l[i] = rand_rat();
      nu2.set_lambda(rand_int(0, 3), l);
    }
    for (int n = 0; n <= 3; ++n) {
      LatticeVector a(r, 0);
      a[static_cast<size_t>(rand_int(0, r - 1))] = 1;
      FockVector lhs = apply_h_twisted(space, nu + nu2, a, n, w);
      FockVector rhs = apply_h_twisted(space, nu, a, n, w);
      Covector l2 = nu2.lambda(n);
      Rational shift = 0;
      for (int i = 0; i < r; ++i) shift += l2[i] * to_rational(a[i]);
      rhs.add(w, shift);
      if (!(lhs == rhs)) {
        ++add_fail;
        if (witness.empty()) witness = "twist additivity case " + std::to_string(c);
      }
    }
    for (int t = 0; t < 2; ++t) {
      int mm = static_cast<int>(rand_int(-2, 2));
      int nn = -mm;
      LatticeVector a(r, 0), b(r, 0);
      a[static_cast<size_t>(rand_int(0, r - 1))] = 1;
      b[static_cast<size_t>(rand_int(0, r - 1))] = 1;
      FockVector tw = apply_h_twisted(space, nu, a, mm, apply_h_twisted(space, nu, b, nn, w));
      tw.add(apply_h_twisted(space, nu, b, nn, apply_h_twisted(space, nu, a, mm, w)), -1);
      FockVector un = space.apply_h(a, mm, space.apply_h(b, nn, w));
      un.add(space.apply_h(b, nn, space.apply_h(a, mm, w)), -1);
      if (!(tw == un)) {
        ++comm_fail;
        if (witness.empty()) witness = "commutator invariance case " + std::to_string(c);
      }
    }

    // sections_at_point round trip
    TwistedModule tm = sections_at_point(m, nu);
    SpectralPoint via = support_of_module(space, tm.nu, dq, v);
    if (!(via == spectral_sum(base, nu))) {
      ++sect_fail;
      if (witness.empty()) witness = "sections round-trip case " + std::to_string(c);
    }
  }
  std::string counts = std::to_string(cfg.spectral_cases) + " randomized jets";
  add_case(rep, "spectral/twist-covariance", cov_fail == 0, cov_fail ? witness : counts);
  add_case(rep, "spectral/gauge", gauge_fail == 0,
           gauge_fail ? witness : "residue shifts by gamma-check, class and irregular fixed");
  add_case(rep, "spectral/twist-additivity", add_fail == 0, add_fail ? witness : counts);
  add_case(rep, "spectral/commutator-invariance", comm_fail == 0, comm_fail ? witness : counts);
  add_case(rep, "spectral/sections-roundtrip", sect_fail == 0, sect_fail ? witness : counts);
  {
    // joint-eigenvector precondition is enforced with a witness
    LatticeLevel level(1, {2});
    DualQuotient dq(level);
    InducedModule m = build_module(level, {0}, Rational(4));
    FockSpace space(level, Rational(8));
    FockVector bad = m.generator();
    bad.add(space.apply_h(LatticeVector{1}, -1, m.generator()));
    bool threw = false;
    std::string msg;
    try {
      support_of_module(space, ConnectionJet::zero(1), dq, bad);
    } catch (const std::invalid_argument& e) {
      threw = true;
      msg = e.what();
    }
    add_case(rep, "spectral/non-eigenvector-rejected", threw,
             threw ? "witness: " + msg : "non-eigenvector accepted");
  }
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"heisenberg", "virasoro", "ope",    "ode",
                                                 "locality",   "symbol",   "module", "spectral"};
  return names;
}

bool is_suite_name(const std::string& name) {
  if (name == "all") return true;
  for (const auto& n : suite_names())
    if (n == name) return true;
  return false;
}

VerifyReport run_suite(const std::string& name, const VerifyConfig& config) {
  VerifyReport rep;
  rep.suite = name;
  rep.seed = config.seed;
  auto dispatch = [&](const std::string& n) {
    if (n == "heisenberg") suite_heisenberg(config, rep);
    else if (n == "virasoro") suite_virasoro(config, rep);
    else if (n == "ope") suite_ope(config, rep);
    else if (n == "ode") suite_ode(config, rep);
    else if (n == "locality") suite_locality(config, rep);
    else if (n == "symbol") suite_symbol(config, rep);
    else if (n == "module") suite_module(config, rep);
    else if (n == "spectral") suite_spectral(config, rep);
    else throw std::invalid_argument("unknown verify suite: " + n);
  };
  if (name == "all") {
    for (const auto& n : suite_names()) dispatch(n);
  } else {
    dispatch(name);
  }
  return rep;
}

Json report_to_json(const VerifyReport& report) {
  Json out = Json::object();
  out["suite"] = report.suite;
  out["seed"] = report.seed;
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json jc = Json::object();
    jc["id"] = c.id;
    jc["pass"] = c.pass;
    jc["detail"] = c.detail;
    cases.push_back(jc);
  }
  out["cases"] = cases;
  out["passed"] = report.passed;
  out["failed"] = report.failed;
  return out;
}

} // namespace latva
