#include <doctest.h>

#include <cmath>

#include "betacert/certifier.hpp"
#include "betacert/errors.hpp"
#include "betacert/root_engine.hpp"

using namespace betacert;

namespace {

NumberField trinomial(unsigned n)
{
    return make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted);
}

const NonParryCertificate& as_cert(const CertifyResult& r)
{
    REQUIRE(std::holds_alternative<NonParryCertificate>(r));
    return std::get<NonParryCertificate>(r);
}

} // namespace

TEST_CASE("minimal certificate steps")
{
    const std::pair<unsigned, std::size_t> table[] = {{4, 35}, {5, 26}, {6, 24}, {7, 27}, {8, 35}, {60, 571}};
    for (auto [n, k] : table) {
        NumberField f = trinomial(n);
        const NonParryCertificate cert = as_cert(certify_non_parry(f));
        CHECK(cert.k == k);
        CHECK(cert.lower_bound_on_orbit > cert.upper_bound_on_threshold);
        CHECK(cert.digits.size() == k);
        CHECK(inequality_holds_at(f, cert.conjugate_index, k) == true);
        CHECK(inequality_holds_at(f, cert.conjugate_index, k - 1) == false);
        CHECK(verify_certificate(cert));
    }
}

TEST_CASE("n = 4 bounds")
{
    const NonParryCertificate cert = as_cert(certify_non_parry(trinomial(4)));
    CHECK(cert.lower_bound_on_orbit.get_d() == doctest::Approx(16.0062).epsilon(1e-4));
    CHECK(cert.upper_bound_on_threshold.get_d() == doctest::Approx(15.7886).epsilon(1e-4));
    std::complex<double> g = cert.conjugate().to_complex();
    CHECK(g.real() == doctest::Approx(-0.2481260628));
    CHECK(std::abs(g.imag()) == doctest::Approx(1.0339820610));
}

TEST_CASE("Parry evidence for n = 2 and n = 3")
{
    for (auto [n, period] : {std::pair{2U, std::size_t{2}}, std::pair{3U, std::size_t{5}}}) {
        CertifyResult r = certify_non_parry(trinomial(n));
        REQUIRE(std::holds_alternative<ParryEvidence>(r));
        const auto& p = std::get<ParryEvidence>(r);
        CHECK(p.periodicity.preperiod == 0);
        CHECK(p.periodicity.period == period);
        CHECK(p.period_word.size() == period);
        CHECK(p.period_word.front() == 1);
    }
}

TEST_CASE("Pisot inputs never get a certificate")
{
    NumberField tribonacci = make_number_field(IntPolynomial({-1, -1, -1, 1}), Irreducibility::asserted);
    CertifyResult r = certify_non_parry(tribonacci);
    REQUIRE(std::holds_alternative<ParryEvidence>(r));
    CHECK(std::get<ParryEvidence>(r).period_word == std::vector<long>{1, 1, 0});
}

TEST_CASE("threshold uses the integer part of b")
{
    NumberField f = make_number_field(IntPolynomial::parse("-1,-3,0,-2,1"), Irreducibility::asserted);
    REQUIRE(f.floor_beta() == 2);
    std::size_t idx = max_modulus_conjugate_index(f);
    double g = std::abs(f.roots()[idx].to_complex());
    CHECK(threshold(f, f.roots()[idx]).to_double() == doctest::Approx(2 / (g - 1)));
}

TEST_CASE("small budget gives Inconclusive")
{
    CertifyOptions options;
    options.max_steps = 10;
    CertifyResult r = certify_non_parry(trinomial(4), options);
    REQUIRE(std::holds_alternative<Inconclusive>(r));
    CHECK(std::get<Inconclusive>(r).steps == 10);
}

TEST_CASE("conjugate orbit keeps growing after the certificate")
{
    for (unsigned n : {4U, 9U, 15U}) {
        NumberField f = trinomial(n);
        const NonParryCertificate cert = as_cert(certify_non_parry(f));
        for (std::size_t k = cert.k; k < cert.k + 20; ++k)
            CHECK(inequality_holds_at(f, cert.conjugate_index, k) == true);
    }
}

TEST_CASE("outcome does not depend on the starting precision")
{
    for (unsigned n : {4U, 10U, 25U}) {
        NumberField f = trinomial(n);
        CertifyOptions lo;
        lo.start_precision = 64;
        CertifyOptions hi;
        hi.start_precision = 256;
        const NonParryCertificate a = as_cert(certify_non_parry(f, lo));
        const NonParryCertificate b = as_cert(certify_non_parry(f, hi));
        CHECK(a.k == b.k);
        CHECK(a.conjugate_index == b.conjugate_index);
        CHECK(a.digits == b.digits);
    }
}

TEST_CASE("largest-modulus conjugate also certifies")
{
    NumberField f = trinomial(12);
    CertifyOptions options;
    options.conjugate = ConjugateChoice::max_modulus;
    const NonParryCertificate cert = as_cert(certify_non_parry(f, options));
    CHECK(cert.conjugate_index == max_modulus_conjugate_index(f));
    CHECK(verify_certificate(cert));
}

TEST_CASE("conjugates inside the unit disk cannot certify")
{
    NumberField f = trinomial(4);
    CertifyOptions options;
    options.conjugate_index = 0;
    CertifyResult r = certify_non_parry(f, options);
    REQUIRE(std::holds_alternative<Inconclusive>(r));
    CHECK(std::get<Inconclusive>(r).reason.find("unit disk") != std::string::npos);
    CHECK_THROWS_AS(threshold(f, f.roots()[0]), DomainError);
}

TEST_CASE("tampered certificates fail verification")
{
    NonParryCertificate cert = as_cert(certify_non_parry(trinomial(5)));
    NonParryCertificate wrong_k = cert;
    wrong_k.k -= 1;
    wrong_k.digits.pop_back();
    CHECK_FALSE(verify_certificate(wrong_k));
    NonParryCertificate wrong_bound = cert;
    wrong_bound.lower_bound_on_orbit *= 2;
    CHECK_FALSE(verify_certificate(wrong_bound));
    NonParryCertificate wrong_digit = cert;
    wrong_digit.digits[3] = 1;
    CHECK_FALSE(verify_certificate(wrong_digit));
}

TEST_CASE("divergence at index 2 m0 - 2")
{
    CHECK_FALSE(goal_inequality(4));
    CHECK_FALSE(goal_inequality(5));
    for (unsigned n = 6; n <= 40; ++n) {
        GoalCheck g = check_goal(n);
        CHECK(g.closed_form_matches);
        CHECK(g.holds);
        CHECK(g.index == 2 * g.m0 - 2);
    }
    CHECK(check_goal(6).m0 == 17);
    CHECK(check_goal(20).m0 == 95);
}
