#include "latva/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latva {

LatticeLevel::LatticeLevel(int rank, std::vector<long long> gram_row_major,
                           std::vector<std::string> labels)
    : rank_(rank), gram_(std::move(gram_row_major)), labels_(std::move(labels)) {
  if (rank_ <= 0) throw std::invalid_argument("LatticeLevel: rank must be positive");
  if (gram_.size() != static_cast<size_t>(rank_) * rank_)
    throw std::invalid_argument("LatticeLevel: gram matrix size mismatch");
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < i; ++j)
      if (gram(i, j) != gram(j, i))
        throw std::invalid_argument("LatticeLevel: gram matrix must be symmetric");
  if (labels_.empty()) {
    for (int i = 0; i < rank_; ++i) labels_.push_back("b" + std::to_string(i + 1));
  } else if (labels_.size() != static_cast<size_t>(rank_)) {
    throw std::invalid_argument("LatticeLevel: label count mismatch");
  }
}

long long LatticeLevel::pairing(const LatticeVector& g1, const LatticeVector& g2) const {
  if (g1.size() != static_cast<size_t>(rank_) || g2.size() != static_cast<size_t>(rank_))
    throw std::invalid_argument("pairing: vector dimension mismatch");
  long long acc = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) acc += g1[i] * gram(i, j) * g2[j];
  return acc;
}

int LatticeLevel::parity(const LatticeVector& g) const {
  long long p = pairing(g, g) % 2;
  return p < 0 ? -p : p;
}

Integer LatticeLevel::det() const {
  // Fraction-free Gaussian elimination (Bareiss).
  std::vector<Integer> a;
  a.reserve(gram_.size());
  for (long long v : gram_) a.push_back(to_integer(v));
  int n = rank_;
  Integer prev = 1, sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i * n + k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

void LatticeLevel::require_nondegenerate(const char* who) const {
  if (!nondegenerate())
    throw std::invalid_argument(std::string(who) + ": level form is degenerate");
}

std::vector<long long> LatticeLevel::gram_times(const LatticeVector& g) const {
  if (g.size() != static_cast<size_t>(rank_))
    throw std::invalid_argument("gram_times: dimension mismatch");
  std::vector<long long> out(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i] += gram(i, j) * g[j];
  return out;
}

Covector LatticeLevel::gram_times(const Covector& g) const {
  if (g.size() != static_cast<size_t>(rank_))
    throw std::invalid_argument("gram_times: dimension mismatch");
  Covector out(rank_, Rational(0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i] += to_rational(gram(i, j)) * g[j];
  return out;
}

Covector LatticeLevel::gram_inverse_times(const Covector& mu) const {
  require_nondegenerate("gram_inverse_times");
  if (mu.size() != static_cast<size_t>(rank_))
    throw std::invalid_argument("gram_inverse_times: dimension mismatch");
  // Gaussian elimination over Q.
  int n = rank_;
  std::vector<Rational> a(n * (n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i * (n + 1) + j] = to_rational(gram(i, j));
    a[i * (n + 1) + n] = mu[i];
  }
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!latva::is_zero(a[i * (n + 1) + k])) { piv = i; break; }
    if (piv < 0) throw std::invalid_argument("gram_inverse_times: singular matrix");
    if (piv != k)
      for (int j = 0; j <= n; ++j) std::swap(a[k * (n + 1) + j], a[piv * (n + 1) + j]);
    Rational d = a[k * (n + 1) + k];
    for (int j = k; j <= n; ++j) a[k * (n + 1) + j] /= d;
    for (int i = 0; i < n; ++i) {
      if (i == k || latva::is_zero(a[i * (n + 1) + k])) continue;
      Rational m = a[i * (n + 1) + k];
      for (int j = k; j <= n; ++j) a[i * (n + 1) + j] -= m * a[k * (n + 1) + j];
    }
  }
  Covector out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = a[i * (n + 1) + n];
    out[i].canonicalize();
  }
  return out;
}

namespace {

void mat_identity(int n, std::vector<Integer>& m) {
  m.assign(n * n, 0);
  for (int i = 0; i < n; ++i) m[i * n + i] = 1;
}

// row i += q * row j (for U-type left factors)
void row_op(int n, std::vector<Integer>& m, int i, int j, const Integer& q) {
  for (int k = 0; k < n; ++k) m[i * n + k] += q * m[j * n + k];
}

// col i += q * col j
void col_op(int n, std::vector<Integer>& m, int i, int j, const Integer& q) {
  for (int k = 0; k < n; ++k) m[k * n + i] += q * m[k * n + j];
}

} // namespace

SmithNormalForm smith_normal_form(int n, const std::vector<Integer>& mat) {
  SmithNormalForm out;
  out.rank = n;
  out.D = mat;
  mat_identity(n, out.U);
  mat_identity(n, out.V);
  auto& D = out.D;
  auto& U = out.U;
  auto& V = out.V;

  for (int t = 0; t < n; ++t) {
    // Move a nonzero pivot into (t,t).
    int pi = -1, pj = -1;
    for (int i = t; i < n && pi < 0; ++i)
      for (int j = t; j < n; ++j)
        if (D[i * n + j] != 0) { pi = i; pj = j; break; }
    if (pi < 0) break; // rest is zero
    if (pi != t) {
      for (int k = 0; k < n; ++k) std::swap(D[t * n + k], D[pi * n + k]);
      for (int k = 0; k < n; ++k) std::swap(U[t * n + k], U[pi * n + k]);
    }
    if (pj != t) {
      for (int k = 0; k < n; ++k) std::swap(D[k * n + t], D[k * n + pj]);
      for (int k = 0; k < n; ++k) std::swap(V[k * n + t], V[k * n + pj]);
    }
    // Clear row and column t.
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < n; ++i) {
        if (D[i * n + t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D[i * n + t].get_mpz_t(), D[t * n + t].get_mpz_t());
        row_op(n, D, i, t, -q);
        row_op(n, U, i, t, -q);
        if (D[i * n + t] != 0) {
          // remainder smaller than pivot: swap up and restart
          for (int k = 0; k < n; ++k) std::swap(D[t * n + k], D[i * n + k]);
          for (int k = 0; k < n; ++k) std::swap(U[t * n + k], U[i * n + k]);
          again = true;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (D[t * n + j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D[t * n + j].get_mpz_t(), D[t * n + t].get_mpz_t());
        col_op(n, D, j, t, -q);
        col_op(n, V, j, t, -q);
        if (D[t * n + j] != 0) {
          for (int k = 0; k < n; ++k) std::swap(D[k * n + t], D[k * n + j]);
          for (int k = 0; k < n; ++k) std::swap(V[k * n + t], V[k * n + j]);
          again = true;
        }
      }
    }
    if (D[t * n + t] < 0) {
      for (int k = 0; k < n; ++k) D[t * n + k] = -D[t * n + k];
      for (int k = 0; k < n; ++k) U[t * n + k] = -U[t * n + k];
    }
  }
  // Enforce the divisibility chain d_i | d_{i+1}.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i + 1 < n; ++i) {
      Integer a = D[i * n + i], b = D[(i + 1) * n + (i + 1)];
      if (a == 0 && b != 0) {
        // push zeros to the end
        std::swap(D[i * n + i], D[(i + 1) * n + (i + 1)]);
        for (int k = 0; k < n; ++k) std::swap(U[i * n + k], U[(i + 1) * n + k]);
        for (int k = 0; k < n; ++k) std::swap(V[k * n + i], V[k * n + (i + 1)]);
        changed = true;
        continue;
      }
      if (a == 0 || b % a == 0) continue;
      // Standard 2x2 fixup: replace (a, b) by (gcd, lcm).
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer l = a / g * b;
      // [a 0; 0 b] -> [g 0; 0 l] via U' = [x y; -b/g a/g] ... realized by row/col ops:
      // row_i += row_{i+1}; then column reduction with the Bezout combination.
      row_op(n, D, i, i + 1, 1);
      row_op(n, U, i, i + 1, 1);
      // D rows i, i+1 now: [a b-part...] -- redo local Smith on the 2x2 block
      // by clearing with the generic loop below.
      // Clear entry D[i][i+1] and D[i+1][i] again:
      for (bool sub = true; sub;) {
        sub = false;
        if (D[(i + 1) * n + i] != 0) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), D[(i + 1) * n + i].get_mpz_t(), D[i * n + i].get_mpz_t());
          row_op(n, D, i + 1, i, -q);
          row_op(n, U, i + 1, i, -q);
          if (D[(i + 1) * n + i] != 0) {
            for (int k = 0; k < n; ++k) std::swap(D[i * n + k], D[(i + 1) * n + k]);
            for (int k = 0; k < n; ++k) std::swap(U[i * n + k], U[(i + 1) * n + k]);
          }
          sub = true;
        } else if (D[i * n + (i + 1)] != 0) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), D[i * n + (i + 1)].get_mpz_t(), D[i * n + i].get_mpz_t());
          col_op(n, D, i + 1, i, -q);
          col_op(n, V, i + 1, i, -q);
          if (D[i * n + (i + 1)] != 0) {
            for (int k = 0; k < n; ++k) std::swap(D[k * n + i], D[k * n + (i + 1)]);
            for (int k = 0; k < n; ++k) std::swap(V[k * n + i], V[k * n + (i + 1)]);
          }
          sub = true;
        }
      }
      if (D[i * n + i] < 0) {
        for (int k = 0; k < n; ++k) D[i * n + k] = -D[i * n + k];
        for (int k = 0; k < n; ++k) U[i * n + k] = -U[i * n + k];
      }
      if (D[(i + 1) * n + (i + 1)] < 0) {
        for (int k = 0; k < n; ++k) D[(i + 1) * n + k] = -D[(i + 1) * n + k];
        for (int k = 0; k < n; ++k) U[(i + 1) * n + k] = -U[(i + 1) * n + k];
      }
      changed = true;
    }
  }
  return out;
}

DualQuotient::DualQuotient(const LatticeLevel& level) : rank_(level.rank()) {
  std::vector<Integer> g;
  g.reserve(level.gram_flat().size());
  for (long long v : level.gram_flat()) g.push_back(to_integer(v));
  smith_ = smith_normal_form(rank_, g);
  nondegenerate_ = true;
  for (int i = 0; i < rank_; ++i) {
    Integer d = smith_.d(i);
    if (d == 0) nondegenerate_ = false;
    if (d > 1) coker_factors_.push_back(d);
  }
  // U^{-1} by solving U X = I over Z (U unimodular; use adjugate via Bareiss
  // on small ranks -- here Gaussian elimination over Q then round).
  int n = rank_;
  std::vector<Rational> a(n * 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i * 2 * n + j] = Rational(smith_.U[i * n + j]);
    a[i * 2 * n + n + i] = 1;
  }
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!latva::is_zero(a[i * 2 * n + k])) { piv = i; break; }
    if (piv < 0) throw std::logic_error("DualQuotient: U not invertible");
    if (piv != k)
      for (int j = 0; j < 2 * n; ++j) std::swap(a[k * 2 * n + j], a[piv * 2 * n + j]);
    Rational d = a[k * 2 * n + k];
    for (int j = 0; j < 2 * n; ++j) a[k * 2 * n + j] /= d;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      Rational m = a[i * 2 * n + k];
      if (latva::is_zero(m)) continue;
      for (int j = 0; j < 2 * n; ++j) a[i * 2 * n + j] -= m * a[k * 2 * n + j];
    }
  }
  uinv_.assign(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational q = a[i * 2 * n + n + j];
      q.canonicalize();
      if (q.get_den() != 1) throw std::logic_error("DualQuotient: U^{-1} not integral");
      uinv_[i * n + j] = q.get_num();
    }
}

Integer DualQuotient::num_classes() const {
  if (!nondegenerate_)
    throw std::invalid_argument("num_classes: degenerate level has infinite cokernel");
  Integer n = 1;
  for (const auto& d : coker_factors_) n *= d;
  return n;
}

std::vector<Integer> DualQuotient::class_of(const std::vector<long long>& mu) const {
  if (mu.size() != static_cast<size_t>(rank_))
    throw std::invalid_argument("class_of: dimension mismatch");
  std::vector<Integer> cls(rank_);
  for (int i = 0; i < rank_; ++i) {
    Integer acc = 0;
    for (int j = 0; j < rank_; ++j) acc += smith_.U[i * rank_ + j] * to_integer(mu[j]);
    Integer d = smith_.d(i);
    if (d != 0) {
      mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
    }
    cls[i] = acc;
  }
  return cls;
}

std::vector<long long> DualQuotient::section(const std::vector<Integer>& cls) const {
  if (cls.size() != static_cast<size_t>(rank_))
    throw std::invalid_argument("section: dimension mismatch");
  std::vector<Integer> canon(rank_);
  for (int i = 0; i < rank_; ++i) {
    canon[i] = cls[i];
    Integer d = smith_.d(i);
    if (d != 0) mpz_fdiv_r(canon[i].get_mpz_t(), canon[i].get_mpz_t(), d.get_mpz_t());
  }
  std::vector<long long> out(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    Integer acc = 0;
    for (int j = 0; j < rank_; ++j) acc += uinv_[i * rank_ + j] * canon[j];
    if (!acc.fits_slong_p()) throw std::overflow_error("section: representative overflow");
    out[i] = acc.get_si();
  }
  return out;
}

std::vector<std::vector<Integer>> DualQuotient::enumerate_classes() const {
  if (!nondegenerate_)
    throw std::invalid_argument("enumerate_classes: degenerate level");
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> cur(rank_, 0);
  while (true) {
    out.push_back(cur);
    int i = rank_ - 1;
    for (; i >= 0; --i) {
      cur[i] += 1;
      if (cur[i] < smith_.d(i)) break;
      cur[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

bool DualQuotient::in_image(const std::vector<long long>& mu) const {
  auto cls = class_of(mu);
  for (int i = 0; i < rank_; ++i) {
    if (smith_.d(i) == 0) {
      // zero invariant factor: the Smith coordinate must vanish exactly
      Integer acc = 0;
      for (int j = 0; j < rank_; ++j) acc += smith_.U[i * rank_ + j] * to_integer(mu[j]);
      if (acc != 0) return false;
    } else if (cls[i] != 0) {
      return false;
    }
  }
  return true;
}

DualQuotient dual_quotient(const LatticeLevel& level) { return DualQuotient(level); }

SignCocycle::SignCocycle(int rank, std::vector<int> eps_basis)
    : rank_(rank), eps_(std::move(eps_basis)) {
  if (eps_.size() != static_cast<size_t>(rank_) * rank_)
    throw std::invalid_argument("SignCocycle: table size mismatch");
  for (int v : eps_)
    if (v != 1 && v != -1) throw std::invalid_argument("SignCocycle: entries must be +-1");
}

int SignCocycle::eval(const LatticeVector& g1, const LatticeVector& g2) const {
  if (g1.size() != static_cast<size_t>(rank_) || g2.size() != static_cast<size_t>(rank_))
    throw std::invalid_argument("SignCocycle::eval: dimension mismatch");
  long long e = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (eps_[i * rank_ + j] == -1) e += g1[i] * g2[j];
  return (e % 2) ? -1 : 1;
}

int SignCocycle::commutator(const LatticeVector& g1, const LatticeVector& g2) const {
  return eval(g1, g2) * eval(g2, g1);
}

SignCocycle build_cocycle(const LatticeLevel& level) {
  int r = level.rank();
  std::vector<int> eps(r * r, 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < i; ++j) {
      long long e = level.gram(i, j) + level.gram(i, i) * level.gram(j, j);
      eps[i * r + j] = (e % 2) ? -1 : 1;
    }
  return SignCocycle(r, std::move(eps));
}

SignCocycle baer_sum(const LatticeLevel& l1, const SignCocycle& e1, const LatticeLevel& l2,
                     const SignCocycle& e2) {
  if (l1.rank() != l2.rank() || e1.rank() != l1.rank() || e2.rank() != l2.rank())
    throw std::invalid_argument("baer_sum: rank mismatch");
  int r = l1.rank();
  std::vector<int> eps(r * r, 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int v = e1.basis_sign(i, j) * e2.basis_sign(i, j);
      if (i > j) {
        // Correction making the commutator identity hold for c + c':
        // (-1)^{c(ii) c'(jj) + c'(ii) c(jj)}.
        long long corr = l1.gram(i, i) * l2.gram(j, j) + l2.gram(i, i) * l1.gram(j, j);
        if (corr % 2) v = -v;
      }
      eps[i * r + j] = v;
    }
  return SignCocycle(r, std::move(eps));
}

std::string check_cocycle(const LatticeLevel& level, const SignCocycle& eps, int box) {
  int r = level.rank();
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
      long long target = level.pairing(a, b) + level.pairing(a, a) * level.pairing(b, b);
      int want = (target % 2) ? -1 : 1;
      if (eps.commutator(a, b) != want)
        return "commutator identity fails at " + fmt(a) + ", " + fmt(b);
      LatticeVector na(a), nb(b);
      for (auto& x : na) x = -x;
      for (auto& x : nb) x = -x;
      if (eps.eval(na, nb) != eps.eval(a, b))
        return "symmetry fails at " + fmt(a) + ", " + fmt(b);
      for (const auto& c : pts) {
        LatticeVector ab(r), bc(r);
        for (int i = 0; i < r; ++i) ab[i] = a[i] + b[i];
        for (int i = 0; i < r; ++i) bc[i] = b[i] + c[i];
        if (eps.eval(a, b) * eps.eval(ab, c) != eps.eval(b, c) * eps.eval(a, bc))
          return "2-cocycle identity fails at " + fmt(a) + ", " + fmt(b) + ", " + fmt(c);
      }
    }
  return "";
}

} // namespace latva
