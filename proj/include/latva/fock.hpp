#ifndef LATVA_FOCK_HPP
#define LATVA_FOCK_HPP

#include <compare>
#include <optional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latva/errors.hpp"
#include "latva/lattice.hpp"

namespace latva {

// Basis vector of a Fock module: a product of creation operators h^{b_i}_{-n}
// applied to the charge-gamma vacuum of the module with momentum offset mu.
// modes is a sorted multiset of (n >= 1, basis index); offset is empty for
// the algebra itself.
struct Ket {
  std::vector<std::pair<int, int>> modes;
  LatticeVector charge;
  Covector offset;

  bool operator==(const Ket& o) const {
    return modes == o.modes && charge == o.charge && offset_cmp(o) == 0;
  }
  bool operator<(const Ket& o) const {
    if (charge != o.charge) return charge < o.charge;
    if (modes != o.modes) return modes < o.modes;
    return offset_cmp(o) < 0;
  }
  int offset_cmp(const Ket& o) const;
  int max_mode() const { return modes.empty() ? 0 : modes.back().first; }
  long mode_weight() const;
  std::string to_string() const;
};

Ket make_vacuum(const LatticeVector& charge, Covector offset = {});

class FockVector {
 public:
  FockVector() = default;

  static FockVector single(Ket k, Rational coeff = 1);

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<Ket, Rational>& terms() const { return terms_; }

  void add(const Ket& k, const Rational& coeff);
  void add(const FockVector& v, const Rational& scale = 1);

  FockVector operator-() const;
  friend FockVector operator+(FockVector a, const FockVector& b) { a.add(b); return a; }
  friend FockVector operator-(FockVector a, const FockVector& b) { a.add(b, -1); return a; }
  FockVector scaled(const Rational& q) const;
  bool operator==(const FockVector& o) const { return terms_ == o.terms_; }
  bool operator!=(const FockVector& o) const { return !(*this == o); }

  // If *this == q * o for a single rational q, returns it.
  std::optional<Rational> ratio_to(const FockVector& o) const;

  std::string to_string() const;

 private:
  std::map<Ket, Rational> terms_;
};

// Graded Fock representation of the Heisenberg algebra of level c, truncated
// at a global weight cutoff: operators refuse to produce kets above the
// cutoff rather than dropping terms.
class FockSpace {
 public:
  FockSpace(LatticeLevel level, Rational weight_cutoff);

  const LatticeLevel& level() const { return level_; }
  const Rational& cutoff() const { return cutoff_; }

  // c(gamma) + mu in Gamma^vee (x) Q.
  Covector momentum(const Ket& k) const;
  // (1/2)(momentum, c^{-1} momentum) + sum of modes; needs nondegenerate c
  // unless the momentum vanishes.
  Rational weight(const Ket& k) const;
  Rational max_weight(const FockVector& v) const;

  // h^alpha_n.  n < 0 creates, n > 0 contracts by the bracket
  // [h^a_m, h^b_n] = m c(a,b) delta_{m+n,0}, n = 0 reads the momentum pairing.
  FockVector apply_h(const Covector& alpha, int n, const FockVector& v) const;
  FockVector apply_h(const LatticeVector& alpha, int n, const FockVector& v) const;

  // Charge translation t~^gamma with the cocycle sign:
  // (modes, g2) -> eps(gamma, g2) (modes, gamma + g2).
  FockVector apply_shift(const LatticeVector& gamma, const FockVector& v,
                         const SignCocycle& eps) const;

  // Sugawara Virasoro mode: L_n = (1/2) sum_i sum_k :h^{b_i}_k h^{b_i*}_{n-k}:
  // normal-ordered with annihilation (k > 0, and k = 0) to the right.
  // Normalized so that L_0 e^gamma = +(1/2) c(gamma,gamma) e^gamma.
  FockVector sugawara_L(int n, const FockVector& v) const;

  const Covector& dual_basis(int i) const; // c^{-1} b_i^vee

 private:
  void check_rank(size_t n, const char* who) const;

  LatticeLevel level_;
  Rational cutoff_;
  std::vector<Covector> dual_basis_; // empty if degenerate
};

} // namespace latva

#endif
