#include "betacert/certificate_json.hpp"

#include <cmath>
#include <limits>

#include "betacert/beta_expansion.hpp"
#include "betacert/errors.hpp"
#include "betacert/root_engine.hpp"

namespace betacert {

namespace {

std::string radius_string(const Mag& rad)
{
    char* text = nullptr;
    mpfr_asprintf(&text, "%.3RUe", rad.get());
    std::string out(text);
    mpfr_free_str(text);
    return out;
}

} // namespace

Json integer_json(const mpz_class& value)
{
    if (mpz_fits_slong_p(value.get_mpz_t()))
        return static_cast<std::int64_t>(value.get_si());
    return value.get_str();
}

mpz_class integer_from_json(const Json& value)
{
    if (value.is_number_integer())
        return mpz_class(static_cast<long>(value.get<std::int64_t>()));
    if (value.is_string()) {
        mpz_class out;
        if (out.set_str(value.get<std::string>(), 10) == 0)
            return out;
    }
    throw DomainError("expected an integer, got " + value.dump());
}

Json rational_json(const mpq_class& value)
{
    return Json{{"num", value.get_num().get_str()}, {"den", value.get_den().get_str()}};
}

mpq_class rational_from_json(const Json& value)
{
    mpq_class out(integer_from_json(value.at("num")), integer_from_json(value.at("den")));
    if (out.get_den() == 0)
        throw DomainError("zero denominator in " + value.dump());
    out.canonicalize();
    return out;
}

Json polynomial_json(const IntPolynomial& p)
{
    Json out = Json::array();
    for (const auto& c : p.coeffs())
        out.push_back(integer_json(c));
    return out;
}

IntPolynomial polynomial_from_json(const Json& value)
{
    std::vector<mpz_class> coeffs;
    for (const auto& c : value)
        coeffs.push_back(integer_from_json(c));
    return IntPolynomial(std::move(coeffs));
}

Json field_element_json(const FieldElement& x)
{
    Json out = Json::array();
    for (const auto& c : x.coeffs())
        out.push_back(integer_json(c));
    return out;
}

FieldElement field_element_from_json(const Json& value, const NumberField& field)
{
    std::vector<mpz_class> coeffs;
    for (const auto& c : value)
        coeffs.push_back(integer_from_json(c));
    if (coeffs.size() > field.degree())
        throw DomainError("field element has too many coefficients for degree " + std::to_string(field.degree()));
    return field.element(std::move(coeffs));
}

Json ball_json(const ComplexBall& z, int digits)
{
    return Json{{"re", z.re().to_string(digits)},
                {"im", z.im().to_string(digits)},
                {"radius", radius_string(z.rad())}};
}

Json certificate_json(const NonParryCertificate& cert)
{
    Json out;
    out["schema"] = kSchemaVersion;
    out["result"] = "certificate";
    out["polynomial"] = polynomial_json(cert.field.min_poly());
    out["polynomial_text"] = cert.field.min_poly().to_string();
    out["root_precision_bits"] = static_cast<std::int64_t>(cert.field.roots().front().precision());
    out["floor_beta"] = integer_json(cert.field.floor_beta());
    out["beta"] = ball_json(cert.field.real_root());
    out["conjugate_index"] = cert.conjugate_index;
    out["conjugate"] = ball_json(cert.conjugate());
    out["k"] = cert.k;
    out["lower_bound_on_orbit"] = rational_json(cert.lower_bound_on_orbit);
    out["upper_bound_on_threshold"] = rational_json(cert.upper_bound_on_threshold);
    out["lower_bound_float"] = cert.lower_bound_on_orbit.get_d();
    out["upper_bound_float"] = cert.upper_bound_on_threshold.get_d();
    out["precision_bits"] = static_cast<std::int64_t>(cert.precision_used);
    out["digits"] = group_digits(cert.digits, 0);
    out["assumptions"] = cert.assumptions;
    return out;
}

NonParryCertificate certificate_from_json(const Json& value)
{
    if (value.value("schema", "") != std::string(kSchemaVersion) || value.value("result", "") != "certificate")
        throw DomainError("not a schema-1 certificate");
    IntPolynomial poly = polynomial_from_json(value.at("polynomial"));
    Precision root_precision = value.value("root_precision_bits", std::int64_t{128});
    NumberField field = make_number_field(poly, Irreducibility::asserted, root_precision);
    std::size_t index = value.at("conjugate_index").get<std::size_t>();
    if (index >= field.degree())
        throw DomainError("conjugate index out of range");
    const Json& stored = value.at("conjugate");
    std::complex<double> expected(std::stod(stored.at("re").get<std::string>()),
                                  std::stod(stored.at("im").get<std::string>()));
    if (std::abs(field.roots()[index].to_complex() - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw DomainError("stored conjugate does not match root " + std::to_string(index));
    std::vector<std::string> assumptions = value.value("assumptions", std::vector<std::string>{});
    return NonParryCertificate{std::move(field),
                               index,
                               value.at("k").get<std::size_t>(),
                               rational_from_json(value.at("lower_bound_on_orbit")),
                               rational_from_json(value.at("upper_bound_on_threshold")),
                               static_cast<Precision>(value.at("precision_bits").get<std::int64_t>()),
                               parse_digits(value.value("digits", "")),
                               std::move(assumptions)};
}

Json parry_json(const ParryEvidence& evidence)
{
    Json out;
    out["schema"] = kSchemaVersion;
    out["result"] = "parry";
    out["preperiod"] = evidence.periodicity.preperiod;
    out["period"] = evidence.periodicity.period;
    out["preperiod_word"] = group_digits(evidence.preperiod_word, 0);
    out["period_word"] = group_digits(evidence.period_word, 0);
    return out;
}

Json inconclusive_json(const Inconclusive& result)
{
    Json out;
    out["schema"] = kSchemaVersion;
    out["result"] = "inconclusive";
    out["reason"] = result.reason;
    out["steps"] = result.steps;
    return out;
}

Json result_json(const CertifyResult& result)
{
    if (const auto* cert = std::get_if<NonParryCertificate>(&result))
        return certificate_json(*cert);
    if (const auto* parry = std::get_if<ParryEvidence>(&result))
        return parry_json(*parry);
    return inconclusive_json(std::get<Inconclusive>(result));
}

} // namespace betacert
