#include <doctest.h>

#include <cmath>
#include <random>

#include "betacert/perron_gen.hpp"
#include "betacert/beta_expansion.hpp"
#include "betacert/certifier.hpp"
#include "betacert/root_engine.hpp"

using namespace betacert;

namespace {

GDefect defect_of(const char* g)
{
    try {
        validate_G(IntPolynomial::parse(g));
    } catch (const InvalidG& e) {
        return e.defect();
    }
    FAIL("expected InvalidG for " << g);
    return GDefect::constant;
}

} // namespace

TEST_CASE("hypotheses on G")
{
    CHECK(defect_of("5") == GDefect::constant);
    CHECK(defect_of("-3,1") == GDefect::value_at_one_too_small);
    CHECK(defect_of("0,1,1") == GDefect::vanishes_at_zero);
    CHECK(defect_of("1,2,1") == GDefect::perfect_power);
    CHECK(defect_of("1,3,3,1") == GDefect::perfect_power);
    GSpec spec = validate_G(IntPolynomial::parse("2,2,-1,1"));
    CHECK(spec.G1 == 4);
    CHECK(spec.relaxed);
    CHECK(spec.m == 1);
    CHECK(validate_G(IntPolynomial::parse("1,1")).m == 1);
    // exp(2 pi / sqrt 3) = 37.62...
    CHECK(validate_G(IntPolynomial::parse("36,1")).m == 1);
    CHECK(validate_G(IntPolynomial::parse("37,1")).m == 2);
}

TEST_CASE("power tests over Q")
{
    IntPolynomial h({1, -2, 3});
    CHECK(is_rational_power(h * h, 2));
    CHECK(is_rational_power(h * h * h, 3));
    CHECK_FALSE(is_rational_power(h * h + IntPolynomial({1}), 2));
    CHECK(is_rational_power(IntPolynomial({4, 8, 4}), 2));
    IntPolynomial h4 = h * h * h * h;
    CHECK(is_minus_four_fourth_power(h4 * mpz_class(-4)));
    CHECK_FALSE(is_minus_four_fourth_power(h4 * mpz_class(4)));
    CHECK_FALSE(is_minus_four_fourth_power(h4 * mpz_class(-2)));
}

TEST_CASE("geometric condition on the three cubics")
{
    GeometricResult a = geometric_condition(IntPolynomial::parse("2,2,-1,1"));
    CHECK(a.outcome == GeometricResult::Outcome::pass);
    GeometricResult b = geometric_condition(IntPolynomial::parse("1,-1,3,1"));
    CHECK(b.outcome == GeometricResult::Outcome::pass);
    GeometricResult c = geometric_condition(IntPolynomial::parse("2,1,3,-1"));
    CHECK(c.outcome != GeometricResult::Outcome::pass);
    REQUIRE(c.witness_t);
    CHECK(*c.witness_t == doctest::Approx(M_PI).epsilon(0.02));
}

TEST_CASE("nonnegative coefficients")
{
    CHECK(geometric_condition(IntPolynomial::parse("1,1")).outcome == GeometricResult::Outcome::pass);
    GeometricResult even = geometric_condition(IntPolynomial::parse("1,0,1"));
    CHECK(even.outcome == GeometricResult::Outcome::fail);
    CHECK(*even.witness_t == doctest::Approx(M_PI));
}

TEST_CASE("sign shortcut agrees with sampling")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coeff(0, 4);
    std::uniform_int_distribution<int> degree(1, 6);
    GeometricGrid sampled = GeometricGrid::standard();
    sampled.use_sign_shortcut = false;
    int checked = 0;
    while (checked < 20) {
        std::vector<mpz_class> c(degree(rng) + 1);
        for (auto& x : c)
            x = coeff(rng);
        c[0] = c[0] == 0 ? 1 : c[0];
        c.back() = c.back() == 0 ? 1 : c.back();
        IntPolynomial G(c);
        GeometricResult fast = geometric_condition(G);
        GeometricResult slow = geometric_condition(G, sampled);
        if (fast.outcome == GeometricResult::Outcome::pass)
            CHECK(slow.outcome == GeometricResult::Outcome::pass);
        else
            CHECK(slow.outcome != GeometricResult::Outcome::pass);
        ++checked;
    }
}

TEST_CASE("x^n - G(x)")
{
    IntPolynomial G = IntPolynomial::parse("2,2,-1,1");
    CHECK(perron_polynomial(G, 5) == IntPolynomial({-2, -2, 1, -1, 0, 1}));
    CHECK_THROWS_AS(perron_polynomial(G, 3), DomainError);
}

TEST_CASE("generalized certificates")
{
    GeneralizedResult a = generalized_certify(validate_G(IntPolynomial::parse("1,1")), 40);
    REQUIRE(std::holds_alternative<NonParryCertificate>(a.result));
    CHECK(std::get<NonParryCertificate>(a.result).k == 343);
    CHECK(a.seed_converged);
    CHECK(verify_certificate(std::get<NonParryCertificate>(a.result)));
    GeneralizedResult b = generalized_certify(validate_G(IntPolynomial::parse("2,2,-1,1")), 60);
    REQUIRE(std::holds_alternative<NonParryCertificate>(b.result));
    CHECK(std::get<NonParryCertificate>(b.result).k == 266);
    const auto& cert = std::get<NonParryCertificate>(b.result);
    CHECK(cert.conjugate().imag_part().is_positive());
}

TEST_CASE("curve export")
{
    std::vector<CurvePoint> pts = curve_export(IntPolynomial::parse("2,2,-1,1"), 1024);
    REQUIRE(pts.size() == 1024);
    CHECK(pts[0].t == 0);
    CHECK(pts[0].re == doctest::Approx(4));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        CHECK(pts[i].modulus < pts[i].g1);
        CHECK(pts[i].g1 == 4);
    }
    std::vector<CurvePoint> c = curve_export(IntPolynomial::parse("2,1,3,-1"), 1024);
    CHECK(c[512].t == doctest::Approx(M_PI));
    CHECK(c[512].modulus >= c[512].g1 - 1e-9);
}

TEST_CASE("constant G gives a single point")
{
    for (const CurvePoint& p : curve_export(IntPolynomial({2}), 64)) {
        CHECK(p.re == 2);
        CHECK(p.im == 0);
    }
}

TEST_CASE("G = x + 1 agrees with the trinomial pipeline")
{
    GSpec spec = validate_G(IntPolynomial::parse("1,1"));
    for (unsigned n = 4; n <= 30; ++n) {
        CAPTURE(n);
        GeneralizedResult gen = generalized_certify(spec, n);
        NumberField f = make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted);
        CertifyResult direct = certify_non_parry(f);
        REQUIRE(std::holds_alternative<NonParryCertificate>(gen.result));
        REQUIRE(std::holds_alternative<NonParryCertificate>(direct));
        CHECK(std::get<NonParryCertificate>(gen.result).k == std::get<NonParryCertificate>(direct).k);
    }
}

TEST_CASE("m0 follows n log n / log G(1) - n log log G(1) / log G(1)")
{
    for (const char* g : {"1,1", "2,2,-1,1"}) {
        CAPTURE(g);
        IntPolynomial G = IntPolynomial::parse(g);
        double L = std::log(G(1).get_d());
        auto scaled_residual = [&](unsigned n) {
            NumberField f = make_number_field(perron_polynomial(G, n), Irreducibility::asserted);
            ExpansionOrbit orbit = expansion_of_one(f);
            REQUIRE(orbit.m0);
            double predicted = n * std::log(n) / L - n * std::log(L) / L;
            return std::abs(static_cast<double>(*orbit.m0) - predicted) / std::log(n);
        };
        double C = 0;
        for (unsigned n = 20; n <= 200; n += 20)
            C = std::max(C, scaled_residual(n));
        CHECK(C < 2);
        for (unsigned n : {400U, 800U})
            CHECK(scaled_residual(n) <= C);
    }
}
