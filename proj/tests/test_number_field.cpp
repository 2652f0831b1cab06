#include <doctest.h>

#include <random>

#include "betacert/errors.hpp"
#include "betacert/number_field.hpp"
#include "betacert/root_engine.hpp"
#include "oracle.hpp"

using namespace betacert;

namespace {

FieldElement random_element(const NumberField& field, std::mt19937& rng)
{
    std::uniform_int_distribution<long> coeff(-50, 50);
    std::vector<mpz_class> c(field.degree());
    for (auto& x : c)
        x = coeff(rng);
    return field.element(std::move(c));
}

} // namespace

TEST_CASE("generator satisfies its minimal polynomial")
{
    NumberField f = make_number_field(IntPolynomial::selmer(4), Irreducibility::asserted);
    FieldElement b = f.generator();
    FieldElement b4 = field_mul(field_mul(b, b, f), field_mul(b, b, f), f);
    CHECK(b4 == b + f.one());
    CHECK(f.floor_beta() == 1);
    CHECK(f.degree() == 4);
}

TEST_CASE("reduction is idempotent and canonical")
{
    NumberField f = make_number_field(IntPolynomial::selmer(5), Irreducibility::asserted);
    IntPolynomial p = IntPolynomial::monomial(1, 17) + IntPolynomial({3, -2, 7});
    FieldElement once = poly_reduce(p, f);
    FieldElement twice = poly_reduce(once.as_polynomial(), f);
    CHECK(once == twice);
    CHECK(once.coeffs().size() <= 5);
    CHECK(is_equal(poly_reduce(IntPolynomial::selmer(5), f), f.integer(0)));
}

TEST_CASE("embedding is a ring homomorphism at every root")
{
    NumberField f = make_number_field(IntPolynomial::selmer(6), Irreducibility::asserted);
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 25; ++trial) {
        FieldElement a = random_element(f, rng);
        FieldElement b = random_element(f, rng);
        for (const ComplexBall& root : f.roots()) {
            ComplexBall ea = embed(a, root, 192);
            ComplexBall eb = embed(b, root, 192);
            CHECK(embed(a + b, root, 192).overlaps(ea + eb));
            CHECK(embed(field_mul(a, b, f), root, 192).overlaps(ea * eb));
        }
    }
}

TEST_CASE("equality examples")
{
    NumberField f = make_number_field(IntPolynomial::selmer(4), Irreducibility::asserted);
    FieldElement b = f.generator();
    CHECK(is_equal(poly_reduce(IntPolynomial::monomial(1, 4), f), b + f.one()));
    CHECK_FALSE(is_equal(b, b + f.one()));
}

TEST_CASE("real embedding agrees with an independent 1200-bit evaluation")
{
    const unsigned n = 7;
    NumberField f = make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted);
    oracle::Real beta = oracle::trinomial_root(n);
    RealBall root = f.real_root().real_part();
    std::mt19937 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        FieldElement x = random_element(f, rng);
        // Horner in plain MPFR
        oracle::Real acc;
        const auto& c = x.coeffs();
        for (std::size_t i = c.size(); i-- > 0;) {
            mpfr_mul(acc.get(), acc.get(), beta.get(), MPFR_RNDN);
            mpfr_add_z(acc.get(), acc.get(), c[i].get_mpz_t(), MPFR_RNDN);
        }
        mpq_class exact;
        mpfr_get_q(exact.get_mpq_t(), acc.get());
        CHECK(embed_real(x, root, 128).contains(exact));
    }
}

TEST_CASE("distinct elements separate at some precision")
{
    NumberField f = make_number_field(IntPolynomial::selmer(5), Irreducibility::asserted);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        FieldElement a = random_element(f, rng);
        FieldElement b = random_element(f, rng);
        if (a == b)
            continue;
        bool separated = false;
        for (Precision p = 64; p <= 4096 && !separated; p *= 2)
            for (const ComplexBall& root : f.roots())
                separated = separated || !embed(a, refine_root(f.min_poly(), root, p), p).overlaps(
                                             embed(b, refine_root(f.min_poly(), root, p), p));
        CHECK(separated);
    }
}

TEST_CASE("orbit step is b x - d")
{
    NumberField f = make_number_field(IntPolynomial::selmer(4), Irreducibility::asserted);
    FieldElement x = f.one();
    FieldElement y = orbit_step(x, 1, f);
    CHECK(y == f.generator() - f.one());
    FieldElement z = x;
    z.shift_subtract(1);
    CHECK(z == y);
}

TEST_CASE("elements of different rings do not mix")
{
    NumberField f4 = make_number_field(IntPolynomial::selmer(4), Irreducibility::asserted);
    NumberField f5 = make_number_field(IntPolynomial::selmer(5), Irreducibility::asserted);
    CHECK_THROWS_AS(f4.one() + f5.one(), FieldMismatch);
    CHECK_FALSE(f4.one() == f5.one());
}

TEST_CASE("integers are recognised")
{
    NumberField f = make_number_field(IntPolynomial::selmer(4), Irreducibility::asserted);
    REQUIRE(f.integer(7).as_integer());
    CHECK(*f.integer(7).as_integer() == 7);
    CHECK_FALSE(f.generator().as_integer().has_value());
}

TEST_CASE("embedding the generator at the complex conjugate")
{
    NumberField f = make_number_field(IntPolynomial::selmer(4), Irreducibility::asserted);
    std::size_t idx = companion_conjugate_index(f);
    std::complex<double> z = embed(f.generator(), f.roots()[idx], 128).to_complex();
    CHECK(z.real() == doctest::Approx(-0.2481260628).epsilon(1e-9));
    CHECK(z.imag() == doctest::Approx(1.0339820610).epsilon(1e-9));
}

TEST_CASE("rejects polynomials without a suitable real root")
{
    CHECK_THROWS_AS(make_number_field(IntPolynomial({1, 0, 1}), Irreducibility::asserted), DomainError);
    CHECK_THROWS_AS(make_number_field(IntPolynomial({-1, 0, 2}), Irreducibility::asserted), DomainError);
    CHECK_THROWS_AS(make_number_field(IntPolynomial({1, 2, 1}), Irreducibility::asserted), DomainError);
}
