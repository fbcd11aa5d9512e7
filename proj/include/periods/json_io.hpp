#ifndef PERIODS_JSON_IO_HPP
#define PERIODS_JSON_IO_HPP

#include <json.hpp>

#include "periods/fourier.hpp"
#include "periods/sampling.hpp"

namespace periods {

using json = nlohmann::json;

// Canonical text encodings. PadicElement: {"p","m","N","coeffs"} with
// coefficients the decimal residues mod p^N by ascending zeta-power; elements
// of negative valuation carry one extra key "shift" (coeffs are then the
// residues of p^shift * x mod p^{N+shift}).
json to_json(const PadicElement& x);
PadicElement element_from_json(const json& j);

json to_json(const WeightPoint& psi);
WeightPoint weight_point_from_json(const json& j);

json to_json(const QuotientPoint& phi);
QuotientPoint quotient_point_from_json(const json& j);

json to_json(const TateSeries& f);
TateSeries tate_series_from_json(const json& j);

json to_json(const BoundedDistribution& mu);
BoundedDistribution distribution_from_json(const json& j);

json to_json(const GaloisElement& g);
GaloisElement galois_from_json(const json& j);

json to_json(const BSenElement& P);
BSenElement bsen_from_json(const json& j);

json magnitude_to_json(const Magnitude& m);  // rational exponent string, null when zero
Magnitude magnitude_from_json(const json& j);

// Tiny expression grammar for CLI inputs: sums/differences of products of
// unsigned integers, p (optionally p^k) and zeta (optionally zeta^k).
// Examples: "p", "1+p", "15", "zeta-1", "2*p^3".
PadicElement parse_element_text(const FieldDesc& f, const std::string& text);
// Accepts either a JSON object encoding or an expression string.
PadicElement element_from_any(const FieldDesc& f, const json& j);

std::string gamma_to_text(long p, const mpz_class& gamma);
mpz_class gamma_from_text(long p, const std::string& text);

}  // namespace periods

#endif
