#include "latva/ccsymbol.hpp"

#include <stdexcept>

#include "latva/lattice.hpp"

namespace latva {

UnitDecomposition decompose_unit(const LaurentSeries& f) {
  auto v = f.val();
  if (!v) throw std::invalid_argument("decompose_unit: series is not invertible");
  Scalar c0 = f.coeff(*v);
  LaurentSeries w = f.shifted(-*v).scaled(c0.inverse());
  // w has constant coefficient 1; negative-exponent coefficients must be
  // nilpotent for the decomposition to exist over a local ring.
  for (const auto& [e, c] : w.coeffs())
    if (e < 0 && !c.is_nilpotent())
      throw std::invalid_argument(
          "decompose_unit: non-nilpotent coefficient at negative exponent t^" +
          std::to_string(e + *v));
  LaurentSeries lg = log1(w);
  LaurentSeries lminus(f.ring(), lg.trunc());
  LaurentSeries lplus(f.ring(), lg.trunc());
  Scalar l0(f.ring());
  for (const auto& [e, c] : lg.coeffs()) {
    if (e < 0)
      lminus.set_coeff(e, c);
    else if (e > 0)
      lplus.set_coeff(e, c);
    else
      l0 = c;
  }
  return UnitDecomposition{*v, c0 * l0.exp_nilpotent(), exp0(lplus), exp0(lminus)};
}

Scalar cc_symbol(const LaurentSeries& f, const LaurentSeries& g) {
  UnitDecomposition df = decompose_unit(f);
  UnitDecomposition dg = decompose_unit(g);
  // Bimultiplicative extension of the generating values:
  //   <t,t> = -1, <t,a> = a, <a,t> = a^{-1}, <a,b> = 1,
  //   <f+,g> = exp Res(log f+ dlog g), <f-,g+> = <g+,f->^{-1},
  //   <f-,t> = <f-,a> = <f-,g-> = 1.
  Scalar out = Scalar::constant(f.ring(), (df.v * dg.v) % 2 ? -1 : 1);
  out = out * dg.f0.pow(df.v);
  out = out * df.f0.pow(-dg.v);
  // Res(log f+ . dlog g-) = Res(log f+ . d(log g-)), and likewise swapped.
  Scalar r1 = residue_pairing(log1(df.fplus), log1(dg.fminus));
  Scalar r2 = residue_pairing(log1(dg.fplus), log1(df.fminus));
  out = out * r1.exp_nilpotent();
  out = out * (-r2).exp_nilpotent();
  return out;
}

Rational tame_symbol(const LaurentSeries& f, const LaurentSeries& g) {
  auto vf = f.val(), vg = g.val();
  if (!vf || !vg) throw std::invalid_argument("tame_symbol: series is not invertible");
  Rational lf = f.coeff(*vf).augment();
  Rational lg = g.coeff(*vg).augment();
  Rational out = (*vf * *vg) % 2 ? -1 : 1;
  auto ipow = [](Rational b, long e) {
    Rational acc = 1;
    bool inv = e < 0;
    unsigned long k = inv ? -e : e;
    while (k) {
      if (k & 1) acc *= b;
      b *= b;
      k >>= 1;
    }
    return inv ? Rational(1) / acc : acc;
  };
  out *= ipow(lg, *vf);
  out *= ipow(lf, -*vg);
  out.canonicalize();
  return out;
}

Scalar commutator_pairing(const std::vector<long long>& gamma1, const LaurentSeries& f1,
                          const std::vector<long long>& gamma2, const LaurentSeries& f2,
                          const LatticeLevel& level) {
  long long e = level.pairing(gamma1, gamma2);
  return cc_symbol(f1, f2).pow(-e);
}

} // namespace latva
