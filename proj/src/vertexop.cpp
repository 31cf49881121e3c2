#include "latva/vertexop.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latva {

namespace {

const Rational kFarBelow = Rational(-(1L << 40));

Rational pair_vectors(const LatticeVector& g, const Covector& mom) {
  Rational e = 0;
  for (size_t i = 0; i < g.size(); ++i) e += to_rational(g[i]) * mom[i];
  e.canonicalize();
  return e;
}

} // namespace

FockVector VertexExpansion::coeff(const Rational& q) const {
  if (q < zero_below) return FockVector();
  if (q < window_lo || q > window_hi)
    throw TruncationError("vertex expansion coefficient at z^" + rational_to_string(q) +
                          " outside certified window");
  auto it = terms.find(q);
  return it == terms.end() ? FockVector() : it->second;
}

bool VertexExpansion::is_zero_on_window() const {
  for (const auto& [q, v] : terms)
    if (!v.is_zero()) return false;
  return true;
}

std::vector<Rational> VertexExpansion::support() const {
  std::vector<Rational> out;
  for (const auto& [q, v] : terms)
    if (!v.is_zero()) out.push_back(q);
  return out;
}

std::optional<Rational> VertexExpansion::leading() const {
  for (const auto& [q, v] : terms)
    if (!v.is_zero()) return q;
  return std::nullopt;
}

VertexExpansion vertex_apply(const FockSpace& space, const LatticeVector& gamma,
                             const FockVector& v, const Rational& window_lo,
                             const Rational& window_hi, const SignCocycle& eps,
                             const VertexOptions& opts) {
  const LatticeLevel& lat = space.level();
  if (gamma.size() != static_cast<size_t>(lat.rank()))
    throw std::invalid_argument("vertex_apply: gamma dimension mismatch");
  VertexExpansion out;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  out.zero_below = window_lo; // tightened below

  bool first_ket = true;
  for (const auto& [ket, coeff] : v.terms()) {
    Covector mom = space.momentum(ket);
    Rational e0 = pair_vectors(gamma, mom);
    if (!latva::is_integer(e0))
      throw std::invalid_argument(
          "vertex_apply: momentum pairing " + rational_to_string(e0) +
          " is not integral; module offsets must lie in the dual lattice");
    // kappa realizing (-z)^{h_0^gamma} on the source
    bool kappa_neg = (e0.get_num() % 2) != 0;
    Rational base = coeff * (kappa_neg ? -1 : 1);

    // annihilation exponential exp(-sum_{n>0} h_n z^{-n}/n): depth -> vector
    std::map<long, FockVector> ann;
    ann[0] = FockVector::single(ket, base);
    {
      std::map<long, FockVector> layer = ann;
      for (long j = 1; !layer.empty(); ++j) {
        std::map<long, FockVector> next;
        for (const auto& [d, vec] : layer) {
          int mm = 0;
          for (const auto& [kk, cc] : vec.terms()) mm = std::max(mm, kk.max_mode());
          for (int n = 1; n <= mm; ++n) {
            FockVector w = space.apply_h(gamma, n, vec);
            if (w.is_zero()) continue;
            next[d + n].add(w, Rational(-1, n) / j);
          }
        }
        for (const auto& [d, vec] : next) ann[d].add(vec);
        layer = std::move(next);
      }
    }
    long max_d = 0;
    for (const auto& [d, vec] : ann)
      if (!vec.is_zero()) max_d = std::max(max_d, d);
    Rational ket_zb = e0 - Rational(max_d);
    out.zero_below = first_ket ? ket_zb : std::min(out.zero_below, ket_zb);
    first_ket = false;

    for (const auto& [d, avec] : ann) {
      if (avec.is_zero()) continue;
      FockVector shifted = space.apply_shift(gamma, avec, eps);
      Rational qbase = e0 - Rational(d);
      if (opts.modified) {
        // V-bar: the creation exponential cancels; single degree 0
        if (qbase >= window_lo && qbase <= window_hi) out.terms[qbase].add(shifted);
        continue;
      }
      // creation exponential exp(sum_{n>0} h_{-n} z^n / n) up to degree pmax
      Rational pmax_q = window_hi - qbase;
      if (pmax_q < 0) {
        if (qbase >= window_lo && qbase <= window_hi) out.terms[qbase].add(shifted);
        continue;
      }
      long pmax = static_cast<long>(rational_floor(pmax_q).get_si());
      std::map<long, FockVector> cre;
      cre[0] = shifted;
      std::map<long, FockVector> layer = cre;
      for (long j = 1; !layer.empty(); ++j) {
        std::map<long, FockVector> next;
        for (const auto& [p, vec] : layer) {
          for (int n = 1; p + n <= pmax; ++n) {
            if (opts.drop_creation_n1 && n == 1) continue;
            FockVector w = space.apply_h(gamma, -n, vec);
            if (w.is_zero()) continue;
            next[p + n].add(w, Rational(1, n) / j);
          }
        }
        for (const auto& [p, vec] : next) cre[p].add(vec);
        layer = std::move(next);
      }
      for (const auto& [p, vec] : cre) {
        Rational q = qbase + Rational(p);
        if (q >= window_lo && q <= window_hi) out.terms[q].add(vec);
      }
    }
  }
  if (v.is_zero()) out.zero_below = window_hi + 1;
  // drop stored zeros
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second.is_zero())
      it = out.terms.erase(it);
    else
      ++it;
  }
  return out;
}

VertexExpansion vertex_apply_full(const FockSpace& space, const LatticeVector& gamma,
                                  const FockVector& v, const Rational& window_hi,
                                  const SignCocycle& eps, const VertexOptions& opts) {
  VertexExpansion e = vertex_apply(space, gamma, v, kFarBelow, window_hi, eps, opts);
  e.window_lo = e.zero_below;
  return e;
}

VertexExpansion modified_vertex_apply(const FockSpace& space, const LatticeVector& gamma,
                                      const FockVector& v, const Rational& window_lo,
                                      const Rational& window_hi, const SignCocycle& eps) {
  VertexOptions opts;
  opts.modified = true;
  return vertex_apply(space, gamma, v, window_lo, window_hi, eps, opts);
}

std::pair<long long, FockVector> ope_leading(const LatticeLevel& level, const LatticeVector& g1,
                                             const LatticeVector& g2, const SignCocycle& eps) {
  long long pole = level.pairing(g1, g2);
  // cutoff: the single shifted ket e^{g1+g2}
  LatticeVector sum(g1.size());
  for (size_t i = 0; i < g1.size(); ++i) sum[i] = g1[i] + g2[i];
  Rational cutoff = 0;
  if (level.nondegenerate()) {
    FockSpace probe(level, Rational(0));
    cutoff = std::max(probe.weight(make_vacuum(sum)), probe.weight(make_vacuum(g2)));
  }
  FockSpace space(level, cutoff);
  VertexExpansion e = vertex_apply(space, g1, FockVector::single(make_vacuum(g2)),
                                   to_rational(pole), to_rational(pole), eps);
  return {pole, e.coeff(to_rational(pole))};
}

VertexExpansion ode_residual(const FockSpace& space, const LatticeVector& gamma,
                             const Rational& window_lo, const Rational& window_hi,
                             const SignCocycle& eps, const FockVector& test,
                             const VertexOptions& opts) {
  VertexExpansion E = vertex_apply_full(space, gamma, test, window_hi, eps, opts);
  int maxmode = 0;
  for (const auto& [k, c] : test.terms()) maxmode = std::max(maxmode, k.max_mode());
  std::vector<VertexExpansion> En; // V(h_n test) for n = 0..maxmode
  for (int n = 0; n <= maxmode; ++n) {
    FockVector hv = space.apply_h(gamma, n, test);
    En.push_back(vertex_apply_full(space, gamma, hv, window_hi + Rational(n), eps, opts));
  }
  VertexExpansion R;
  R.window_lo = window_lo;
  R.window_hi = window_hi;
  R.zero_below = window_lo;
  for (Rational q = window_lo; q <= window_hi; q += 1) {
    FockVector acc = E.coeff(q).scaled(q);
    // sum_{n>0} h_{-n} [V]_{q-n}
    for (long n = 1; Rational(q - Rational(n)) >= E.zero_below; ++n) {
      FockVector c = E.coeff(q - Rational(n));
      if (c.is_zero()) continue;
      acc.add(space.apply_h(gamma, static_cast<int>(-n), c), -1);
    }
    // sum_{n>=0} [V(h_n v)]_{q+n}
    for (int n = 0; n <= maxmode; ++n) acc.add(En[n].coeff(q + Rational(n)), -1);
    if (!acc.is_zero()) R.terms[q] = acc;
  }
  return R;
}

namespace {

// Two-variable expansion with certified rectangle: w-exponents in
// [wlo, whi] (zero below w_zb), z-exponents per w-coefficient certified in
// [z_zb(q), zhi].
struct TwoVar {
  std::map<std::pair<Rational, Rational>, FockVector> terms; // (z, w)
  Rational w_zb, w_hi;
  Rational z_zb, z_hi; // global bounds: zero below z_zb for every q

  bool known(const Rational& p, const Rational& q) const {
    if (q < w_zb) return true; // whole w-coefficient certified zero
    if (q > w_hi) return false;
    if (p < z_zb) return true;
    return p <= z_hi;
  }
  FockVector coeff(const Rational& p, const Rational& q) const {
    auto it = terms.find({p, q});
    return it == terms.end() ? FockVector() : it->second;
  }
};

TwoVar compose(const FockSpace& space, const LatticeVector& outer, const LatticeVector& inner,
               const FockVector& v, const Rational& inner_hi, const Rational& outer_hi,
               const SignCocycle& eps, bool inner_is_w) {
  // expansion of V^{outer}(z) V^{inner}(w) v when inner_is_w, with inner
  // exponent recorded second; otherwise roles of the letters swap.
  TwoVar out;
  VertexExpansion B = vertex_apply_full(space, inner, v, inner_hi, eps);
  out.w_zb = B.zero_below;
  out.w_hi = inner_hi;
  bool first = true;
  for (const auto& [q, Bq] : B.terms) {
    if (Bq.is_zero()) continue;
    VertexExpansion A = vertex_apply_full(space, outer, Bq, outer_hi, eps);
    out.z_hi = outer_hi;
    if (first)
      out.z_zb = A.zero_below;
    else
      out.z_zb = std::min(out.z_zb, A.zero_below);
    first = false;
    for (const auto& [p, Ap] : A.terms) {
      if (Ap.is_zero()) continue;
      if (inner_is_w)
        out.terms[{p, q}].add(Ap);
      else
        out.terms[{q, p}].add(Ap);
    }
  }
  if (first) {
    out.z_zb = 0;
    out.z_hi = outer_hi;
  }
  if (!inner_is_w) {
    std::swap(out.w_zb, out.z_zb);
    std::swap(out.w_hi, out.z_hi);
  }
  return out;
}

} // namespace

LocalityReport locality_residual(const FockSpace& space, const LatticeVector& g1,
                                 const LatticeVector& g2, int N, int orders,
                                 const SignCocycle& eps, const FockVector& v) {
  const LatticeLevel& lat = space.level();
  if (N < 0) throw std::invalid_argument("locality_residual: N must be >= 0");
  // N below max(0, -c(g1,g2)) is allowed: the report then carries the
  // offending nonzero coefficients.
  long long c12 = lat.pairing(g1, g2);
  long long k = lat.pairing(g1, g1) * lat.pairing(g2, g2);
  Rational kswap = (k % 2) ? -1 : 1;

  // Size the windows so that the residual box has `orders` certified
  // diagonals: leading w-exponents of both compositions, plus N inflation.
  Rational margin = Rational(orders + N);
  // leading exponents on the source states
  Rational e2min, e1min;
  bool first = true;
  for (const auto& [ket, c] : v.terms()) {
    Covector mom = space.momentum(ket);
    Rational a2 = pair_vectors(g2, mom) - Rational(ket.mode_weight());
    Rational a1 = pair_vectors(g1, mom) - Rational(ket.mode_weight());
    if (first || a2 < e2min) e2min = a2;
    if (first || a1 < e1min) e1min = a1;
    first = false;
  }
  if (first) return LocalityReport{}; // zero vector: nothing to check
  Rational w_hi_AB = e2min + margin;
  Rational z_hi_AB = e1min + to_rational(c12) + margin + margin; // annihilation can lower further
  Rational z_hi_BA = e1min + margin;
  Rational w_hi_BA = e2min + to_rational(c12) + margin + margin;

  TwoVar AB = compose(space, g1, g2, v, w_hi_AB, z_hi_AB, eps, /*inner_is_w=*/true);
  TwoVar BA = compose(space, g2, g1, v, z_hi_BA, w_hi_BA, eps, /*inner_is_w=*/false);

  LocalityReport rep;
  // target box
  Rational p_lo = std::min(AB.z_zb, BA.z_zb);
  Rational q_lo = std::min(AB.w_zb, BA.w_zb);
  Rational p_hi = std::min(AB.z_hi, BA.z_hi) + Rational(N);
  Rational q_hi = std::min(AB.w_hi, BA.w_hi) + Rational(N);
  for (Rational p = p_lo; p <= p_hi; p += 1) {
    for (Rational q = q_lo; q <= q_hi; q += 1) {
      // residual coefficient at z^p w^q
      bool certified = true;
      FockVector acc;
      for (int j = 0; j <= N && certified; ++j) {
        Rational pp = p - Rational(j);
        Rational qq = q - Rational(N - j);
        if (!AB.known(pp, qq) || !BA.known(pp, qq)) {
          certified = false;
          break;
        }
        FockVector d = AB.coeff(pp, qq);
        d.add(BA.coeff(pp, qq), -kswap);
        // C(N, j) (-1)^{N-j}
        Rational binom = 1;
        for (int t = 0; t < j; ++t) binom = binom * Rational(N - t) / Rational(t + 1);
        if ((N - j) % 2) binom = -binom;
        acc.add(d, binom);
      }
      if (!certified) continue;
      ++rep.checked;
      if (!acc.is_zero()) rep.nonzero.emplace_back(p, q, acc);
    }
  }
  return rep;
}

SignCocycle cocycle_roundtrip(const LatticeLevel& level, const SignCocycle& eps) {
  level.require_nondegenerate("cocycle_roundtrip");
  int r = level.rank();
  std::vector<int> table(r * r, 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      LatticeVector bi(r, 0), bj(r, 0);
      bi[i] = 1;
      bj[j] = 1;
      auto [pole, top] = ope_leading(level, bi, bj, eps);
      // strip the kappa sign (-1)^{c(g1,g2)} to recover eps(g1,g2)
      LatticeVector sum(r, 0);
      sum[i] = 1;
      sum[j] += 1;
      auto it = top.terms().find(make_vacuum(sum));
      if (it == top.terms().end())
        throw std::logic_error("cocycle_roundtrip: top coefficient off the expected line");
      Rational s = it->second;
      if (pole % 2) s = -s;
      if (s == 1)
        table[i * r + j] = 1;
      else if (s == -1)
        table[i * r + j] = -1;
      else
        throw std::logic_error("cocycle_roundtrip: top coefficient is not a sign");
    }
  return SignCocycle(r, std::move(table));
}

std::string roundtrip_check(const LatticeLevel& level, const SignCocycle& eps, int box) {
  int r = level.rank();
  SignCocycle rec = cocycle_roundtrip(level, eps);
  std::vector<LatticeVector> pts;
  LatticeVector cur(r, -box);
  while (true) {
    pts.push_back(cur);
    int i = r - 1;
    for (; i >= 0; --i) {
      if (++cur[i] <= box) break;
      cur[i] = -box;
    }
    if (i < 0) break;
  }
  auto fmt = [](const LatticeVector& g) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << ")";
    return os.str();
  };
  for (const auto& a : pts)
    for (const auto& b : pts) {
      if (rec.eval(a, b) != eps.eval(a, b))
        return "reconstructed table differs from eps at " + fmt(a) + ", " + fmt(b);
      long long target = level.pairing(a, b) + level.pairing(a, a) * level.pairing(b, b);
      int want = (target % 2) ? -1 : 1;
      if (rec.commutator(a, b) != want)
        return "reconstructed commutator differs from the symmetric pairing at " + fmt(a) +
               ", " + fmt(b);
    }
  // direct top-coefficient commutator on basis pairs
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      LatticeVector bi(r, 0), bj(r, 0);
      bi[i] = 1;
      bj[j] = 1;
      auto [p1, t1] = ope_leading(level, bi, bj, eps);
      auto [p2, t2] = ope_leading(level, bj, bi, eps);
      LatticeVector sum(r, 0);
      sum[i] += 1;
      sum[j] += 1;
      Rational s1 = 0, s2 = 0;
      if (auto it = t1.terms().find(make_vacuum(sum)); it != t1.terms().end()) s1 = it->second;
      if (auto it = t2.terms().find(make_vacuum(sum)); it != t2.terms().end()) s2 = it->second;
      long long target =
          level.pairing(bi, bj) + level.pairing(bi, bi) * level.pairing(bj, bj);
      Rational want = (target % 2) ? -1 : 1;
      if (latva::is_zero(s2) || s1 != want * s2)
        return "top-coefficient commutator fails on basis pair " + fmt(bi) + ", " + fmt(bj);
    }
  return "";
}

} // namespace latva
