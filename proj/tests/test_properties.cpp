#include <doctest.h>

#include <cmath>
#include <random>

#include "betacert/beta_expansion.hpp"
#include "betacert/certificate_json.hpp"
#include "betacert/certifier.hpp"
#include "betacert/root_engine.hpp"

using namespace betacert;

TEST_CASE("pipeline consistency for n = 4..30")
{
    for (unsigned n = 4; n <= 30; ++n) {
        CAPTURE(n);
        NumberField f = make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted);
        ExpansionOrbit orbit = expansion_of_one(f);
        REQUIRE(orbit.m0);
        CertifyResult r = certify_non_parry(f);
        REQUIRE(std::holds_alternative<NonParryCertificate>(r));
        const auto& cert = std::get<NonParryCertificate>(r);
        CHECK(cert.k <= 4 * *orbit.m0);
        CHECK(cert.conjugate_index == companion_conjugate_index(f));
        std::vector<long> head(orbit.digits.begin(), orbit.digits.begin() + std::min(orbit.size(), cert.k));
        CHECK(std::equal(head.begin(), head.end(), cert.digits.begin()));
        CHECK(verify_certificate(certificate_from_json(certificate_json(cert))));
    }
}

TEST_CASE("orbit identity and range on random polynomials")
{
    // x^d - a x^{d-1} - ... - a_0 with a >= 2 + sum of the other |a_i| and
    // a_0 != 0 is irreducible over Q and has a real root in (a, a + 1).
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> coeff(0, 3);
    std::uniform_int_distribution<int> degree(2, 7);
    for (int trial = 0; trial < 12; ++trial) {
        int d = degree(rng);
        std::vector<mpz_class> c(d + 1);
        long rest = 0;
        for (int i = 0; i + 1 < d; ++i) {
            long a = coeff(rng);
            c[i] = -a;
            rest += a;
        }
        if (c[0] == 0) {
            c[0] = -1;
            ++rest;
        }
        c[d - 1] -= 2 + rest + coeff(rng);
        c[d] = 1;
        IntPolynomial p(c);
        CAPTURE(p.to_string());
        NumberField f = make_number_field(p, Irreducibility::asserted);
        ExpansionOrbit orbit = expansion_of_one(f, 120);
        RealBall beta = f.real_root().real_part();
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            CHECK(orbit_step(orbit.states[k], orbit.digits[k], f) == orbit.states[k + 1]);
            CHECK(orbit.digits[k] >= 0);
            CHECK(mpz_class(orbit.digits[k]) <= f.floor_beta());
            RealBall v = embed_real(orbit.states[k + 1], beta, 256);
            CHECK(v.is_positive());
            CHECK(certainly_less_equal(v, RealBall(1L, 256)));
        }
    }
}

TEST_CASE("root enclosures are sound for random polynomials")
{
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> coeff(-20, 20);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<mpz_class> c(10);
        for (auto& x : c)
            x = coeff(rng);
        c.back() = 1;
        IntPolynomial p(c);
        if (!is_squarefree(p))
            continue;
        for (const ComplexBall& r : all_roots(p, 128)) {
            CHECK(evaluate(p, r, 256).contains_zero());
            ComplexBall fine = refine_root(p, r, 400);
            CHECK(r.contains(fine));
        }
    }
}

TEST_CASE("results do not change when precision doubles")
{
    for (unsigned n : {6U, 13U, 21U, 34U}) {
        NumberField f128 = make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted, 128);
        NumberField f256 = make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted, 256);
        CertifyOptions lo;
        CertifyOptions hi;
        hi.start_precision = 128;
        const auto a = std::get<NonParryCertificate>(certify_non_parry(f128, lo));
        const auto b = std::get<NonParryCertificate>(certify_non_parry(f256, hi));
        CHECK(a.k == b.k);
        CHECK(a.digits == b.digits);
        CHECK(expansion_of_one(f128).digits == expansion_of_one(f256).digits);
    }
}
