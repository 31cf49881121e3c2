#ifndef LATVA_SERIALIZE_HPP
#define LATVA_SERIALIZE_HPP

#include <json.hpp>

#include "latva/fock.hpp"
#include "latva/series.hpp"
#include "latva/spectral.hpp"

namespace latva {

// Key order is part of the output contract (byte-identical reruns).
using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& q); // int64 when it fits, else decimal string
Rational rational_from_json(const Json& j);

// [[exponent, [[monomial, num, den], ...]], ...]
Json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const RingHandle& ring, const Json& j, long trunc);
Json scalar_to_json(const Scalar& s);

// [{"modes": [[n,i],...], "charge": [...], "coeff": [num, den](, "offset": [...])}, ...]
Json fock_to_json(const FockVector& v);
FockVector fock_from_json(const Json& j, int rank);

// [[n, [covector]], ...]
Json jet_to_json(const ConnectionJet& nu);
ConnectionJet jet_from_json(const Json& j, int rank);

Json spectral_point_to_json(const SpectralPoint& p);

} // namespace latva

#endif
