#include "latva/repmod.hpp"

#include <numeric>
#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace latva {

Covector InducedModule::offset() const {
  Covector out(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) out[i] = to_rational(mu[i]);
  return out;
}

FockVector InducedModule::generator() const {
  return FockVector::single(make_vacuum(LatticeVector(level.rank(), 0), offset()));
}

bool is_positive_definite(const LatticeLevel& level) {
  // leading principal minors, fraction-free
  int n = level.rank();
  for (int k = 1; k <= n; ++k) {
    std::vector<long long> sub(k * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i * k + j] = level.gram(i, j);
    LatticeLevel trimmed(k, sub);
    if (trimmed.det() <= 0) return false;
  }
  return true;
}

namespace {

// all multisets of (n >= 1, direction) with total sum = budget
void enumerate_partitions(int rank, long budget, int max_part, int min_dir,
                          std::vector<std::pair<int, int>>& stack,
                          const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  if (budget == 0) {
    emit(stack);
    return;
  }
  for (int n = 1; n <= std::min<long>(max_part, budget); ++n) {
    int dir0 = (n == max_part) ? min_dir : 0;
    for (int i = dir0; i < rank; ++i) {
      stack.push_back({n, i});
      enumerate_partitions(rank, budget - n, n, i, stack, emit);
      stack.pop_back();
    }
  }
}

} // namespace

namespace {

InducedModule build_module_impl(const LatticeLevel& level, const std::vector<Integer>& chi,
                                std::vector<long long> mu, const Rational& cutoff) {
  level.require_nondegenerate("build_module");
  if (!is_positive_definite(level))
    throw std::invalid_argument(
        "build_module: basis enumeration requires a positive-definite level "
        "(indefinite levels have infinite graded components)");
  InducedModule m{level, chi, std::move(mu), cutoff, {}, {}};
  FockSpace space(level, cutoff);
  Covector offs = m.offset();

  // enumerate charges with quadratic weight <= cutoff
  int r = level.rank();
  long long box = 1;
  {
    // crude positive-definite bound: c(g,g) >= lambda_min |g|^2 with
    // lambda_min >= 1/trace-scale; scan an expanding box instead
    while (true) {
      bool any_inside = false;
      LatticeVector g(r, 0);
      // check the box shell for any admissible charge
      std::function<bool(int)> shell = [&](int pos) -> bool {
        if (pos == r) {
          bool on_shell = false;
          for (int i = 0; i < r; ++i)
            if (g[i] == box || g[i] == -box) on_shell = true;
          if (!on_shell) return false;
          Ket k = make_vacuum(g, offs);
          return space.weight(k) <= cutoff;
        }
        for (long long v = -box; v <= box; ++v) {
          g[pos] = v;
          if (shell(pos + 1)) return true;
        }
        return false;
      };
      any_inside = shell(0);
      if (!any_inside) break;
      ++box;
      if (box > 1024) throw std::logic_error("build_module: charge box runaway");
    }
  }
  LatticeVector g(r, -box);
  while (true) {
    Ket vac = make_vacuum(g, offs);
    Rational quad = space.weight(vac);
    if (quad <= cutoff) {
      long budget = static_cast<long>(rational_floor(cutoff - quad).get_si());
      std::vector<std::pair<int, int>> stack;
      for (long b = 0; b <= budget; ++b)
        enumerate_partitions(r, b, b ? static_cast<int>(b) : 1, 0, stack,
                             [&](const std::vector<std::pair<int, int>>& modes) {
                               Ket k = vac;
                               k.modes = modes;
                               std::sort(k.modes.begin(), k.modes.end());
                               m.basis.push_back(k);
                             });
    }
    int i = r - 1;
    for (; i >= 0; --i) {
      if (++g[i] <= box) break;
      g[i] = -box;
    }
    if (i < 0) break;
  }
  std::sort(m.basis.begin(), m.basis.end());
  for (const auto& k : m.basis) m.graded_dims[space.weight(k)] += 1;
  return m;
}

} // namespace

InducedModule build_module_from_class(const LatticeLevel& level, const std::vector<Integer>& chi,
                                      const Rational& cutoff) {
  DualQuotient dq(level);
  return build_module_impl(level, chi, dq.section(chi), cutoff);
}

InducedModule build_module_with_offset(const LatticeLevel& level, const std::vector<long long>& mu,
                                       const Rational& cutoff) {
  DualQuotient dq(level);
  return build_module_impl(level, dq.class_of(mu), mu, cutoff);
}

InducedModule build_module(const LatticeLevel& level, const std::vector<long long>& chi_rep,
                           const Rational& cutoff) {
  DualQuotient dq(level);
  return build_module_from_class(level, dq.class_of(chi_rep), cutoff);
}

NilpotencyReport nilpotency_certificate(const InducedModule& m, const LatticeVector& gamma,
                                        int max_n) {
  FockSpace space(m.level, m.cutoff);
  NilpotencyReport rep;
  for (const auto& ket : m.basis) {
    long mw = ket.mode_weight();
    for (int n = 1; n <= max_n; ++n) {
      FockVector v = FockVector::single(ket);
      long k = 0;
      while (!v.is_zero()) {
        v = space.apply_h(gamma, n, v);
        ++k;
        if (k > mw + 1) break; // cannot happen; weight bookkeeping guard
      }
      long bound = mw / n + 1;
      rep.entries.push_back({ket, n, k});
      rep.max_index = std::max(rep.max_index, k);
      if (k > bound) rep.all_within_bound = false;
    }
  }
  return rep;
}

SpectrumReport h0_spectrum(const InducedModule& m, const LatticeVector& alpha) {
  FockSpace space(m.level, m.cutoff);
  SpectrumReport rep;
  // admissible coset: <alpha, mu> + <alpha, c(Gamma)> = <alpha, mu> + gZ
  Rational base = 0;
  for (size_t i = 0; i < alpha.size(); ++i) base += to_rational(alpha[i] * m.mu[i]);
  long long g = 0;
  for (int j = 0; j < m.level.rank(); ++j) {
    LatticeVector bj(m.level.rank(), 0);
    bj[j] = 1;
    long long step = 0;
    for (int i = 0; i < m.level.rank(); ++i) step += alpha[i] * m.level.gram_times(bj)[i];
    g = std::gcd(g, step);
  }
  for (const auto& ket : m.basis) {
    Covector mom = space.momentum(ket);
    Rational e = 0;
    for (size_t i = 0; i < alpha.size(); ++i) e += to_rational(alpha[i]) * mom[i];
    e.canonicalize();
    rep.eigenvalues[e] += 1;
    Rational diff = e - base;
    if (g == 0) {
      if (!latva::is_zero(diff)) rep.in_lattice_coset = false;
    } else {
      diff /= to_rational(g);
      diff.canonicalize();
      if (!latva::is_integer(diff)) rep.in_lattice_coset = false;
    }
  }
  return rep;
}

namespace {

std::string expansions_equal(const VertexExpansion& a, const VertexExpansion& b,
                             const Rational& lo, const Rational& hi, const std::string& what) {
  for (Rational q = lo; q <= hi; q += 1) {
    if (!(a.coeff(q) == b.coeff(q)))
      return what + ": mismatch at z^" + rational_to_string(q);
  }
  return "";
}

} // namespace

std::string check_modified_vertex(const InducedModule& m, const LatticeVector& gamma,
                                  const SignCocycle& eps, const Rational& wmax,
                                  const Rational& window_hi) {
  // headroom for one extra mode on top of the expansions
  FockSpace space(m.level, m.cutoff + Rational(8));
  long long cgg = m.level.pairing(gamma, gamma);
  int r = m.level.rank();
  for (const auto& ket : m.basis) {
    if (space.weight(ket) > wmax) continue;
    FockVector v = FockVector::single(ket);
    Covector mom = space.momentum(ket);
    Rational e0 = 0;
    for (int i = 0; i < r; ++i) e0 += to_rational(gamma[i]) * mom[i];
    int mm = ket.max_mode();
    long mw = ket.mode_weight();
    Rational lo = e0 - Rational(mw) - 2;
    // certified headroom: brackets query up to window_hi + |n|, (iii) up to
    // window_hi + mm
    Rational hi = window_hi + Rational(mm + 4);
    VertexExpansion V = modified_vertex_apply(space, gamma, v, lo, hi, eps);

    for (int dir = 0; dir < r; ++dir) {
      LatticeVector gp(r, 0);
      gp[dir] = 1;
      long long cgg_p = m.level.pairing(gamma, gp);
      for (int n = -2; n <= 2; ++n) {
        // [h_n, Vbar] coefficientwise: h_n Vbar v - Vbar (h_n v)
        FockVector hv = space.apply_h(gp, n, v);
        VertexExpansion Vh = modified_vertex_apply(space, gamma, hv, lo - 2, hi, eps);
        for (Rational q = lo; q <= window_hi; q += 1) {
          FockVector lhs = space.apply_h(gp, n, V.coeff(q));
          lhs.add(Vh.coeff(q), -1);
          // expected: 0 for n > 0, c(g,g') [Vbar]_{q-n} for n <= 0
          if (n <= 0) lhs.add(V.coeff(q - Rational(n)), -to_rational(cgg_p));
          if (!lhs.is_zero()) {
            std::ostringstream os;
            os << "3.9(b) bracket fails: ket " << ket.to_string() << ", n=" << n
               << ", dir=" << dir + 1 << ", z^" << rational_to_string(q);
            return os.str();
          }
        }
      }
    }
    // (iii): z d/dz Vbar = Vbar (sum_{n>=0} h_n z^{-n})
    //      = (sum_{n>=0} h_n z^{-n} - c(g,g)) Vbar
    for (Rational q = lo; q <= window_hi; q += 1) {
      FockVector lhs = V.coeff(q).scaled(q);
      FockVector rhs1;
      for (int n = 0; n <= mm; ++n) {
        FockVector hv = space.apply_h(gamma, n, v);
        VertexExpansion Vh = modified_vertex_apply(space, gamma, hv, q + Rational(n),
                                                   q + Rational(n), eps);
        rhs1.add(Vh.coeff(q + Rational(n)));
      }
      if (!(lhs == rhs1)) {
        return "3.9(b)(iii) first form fails: ket " + ket.to_string() + " at z^" +
               rational_to_string(q);
      }
      FockVector rhs2;
      // annihilation modes of Vbar-coefficients are bounded by the source
      for (int n = 0; n <= mm; ++n) rhs2.add(space.apply_h(gamma, n, V.coeff(q + Rational(n))));
      rhs2.add(V.coeff(q), -to_rational(cgg));
      if (!(lhs == rhs2)) {
        return "3.9(b)(iii) second form fails: ket " + ket.to_string() + " at z^" +
               rational_to_string(q);
      }
    }
  }
  return "";
}

std::string check_shift_reconstruction(const InducedModule& m, const LatticeVector& gamma,
                                       const SignCocycle& eps) {
  FockSpace space(m.level, m.cutoff + Rational(4));
  for (const auto& ket : m.basis) {
    if (!ket.modes.empty()) continue; // pure kets carry the whole shift table
    FockVector v = FockVector::single(ket);
    Covector mom = space.momentum(ket);
    Rational e0 = 0;
    for (int i = 0; i < m.level.rank(); ++i) e0 += to_rational(gamma[i]) * mom[i];
    VertexExpansion V = modified_vertex_apply(space, gamma, v, e0, e0, eps);
    // single certified term: kappa * tshift^gamma
    FockVector got = V.coeff(e0);
    bool kappa_neg = e0.get_num() % 2 != 0;
    FockVector want = space.apply_shift(gamma, v, eps).scaled(kappa_neg ? -1 : 1);
    if (!(got == want))
      return "shift reconstruction fails on " + ket.to_string();
  }
  return "";
}

std::map<Rational, long> graded_character(const InducedModule& m) { return m.graded_dims; }

} // namespace latva
