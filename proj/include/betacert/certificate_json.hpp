#pragma once

// JSON forms of polynomials, field elements and certification results.
// Integers that fit in 64 bits are JSON numbers, larger ones decimal
// strings; rationals are {"num": "...", "den": "..."} with string parts.

#include <json.hpp>

#include "betacert/certifier.hpp"
#include "betacert/int_polynomial.hpp"
#include "betacert/number_field.hpp"

namespace betacert {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json integer_json(const mpz_class& value);
mpz_class integer_from_json(const Json& value);
Json rational_json(const mpq_class& value);
mpq_class rational_from_json(const Json& value);

/// Coefficient array, constant term first.
Json polynomial_json(const IntPolynomial& p);
IntPolynomial polynomial_from_json(const Json& value);

Json field_element_json(const FieldElement& x);
FieldElement field_element_from_json(const Json& value, const NumberField& field);

/// {"re", "im", "radius"} as decimal strings.
Json ball_json(const ComplexBall& z, int digits = 25);

Json certificate_json(const NonParryCertificate& cert);
/// Rebuilds the field from the stored polynomial and checks that the stored
/// conjugate matches the root at the stored index.
NonParryCertificate certificate_from_json(const Json& value);

Json parry_json(const ParryEvidence& evidence);
Json inconclusive_json(const Inconclusive& result);
Json result_json(const CertifyResult& result);

} // namespace betacert
