#include <doctest.h>

#include "betacert/beta_expansion.hpp"
#include "betacert/errors.hpp"
#include "betacert/root_engine.hpp"
#include "oracle.hpp"

using namespace betacert;

namespace {

NumberField trinomial(unsigned n)
{
    return make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted);
}

std::vector<long> prefix(const ExpansionOrbit& orbit, std::size_t count)
{
    std::vector<long> out;
    for (std::size_t i = 1; i <= count; ++i)
        out.push_back(orbit.digit(i));
    return out;
}

// Index of the second nonzero digit for x^n - x - 1, n = 2..60, read off the
// greedy digits of 1 - 10^-150 at 1200 bits.
const std::size_t kM0[61] = {0,   0,   3,   6,   9,   13,  17,  22,  27,  32,  37,  42,  48,  53,  59,  65,
                             70,  76,  82,  89,  95,  101, 108, 114, 120, 127, 134, 140, 147, 154, 161, 167,
                             174, 181, 188, 195, 203, 210, 217, 224, 231, 239, 246, 253, 261, 268, 276, 283,
                             291, 298, 306, 313, 321, 329, 336, 344, 352, 360, 368, 375, 383};

} // namespace

TEST_CASE("expansion of one for n = 4 and n = 5")
{
    ExpansionOrbit four = expansion_of_one(trinomial(4), 36);
    CHECK(group_digits(prefix(four, 36)) == "10000 00010 00000 00000 01000 00000 10000 0");
    ExpansionOrbit five = expansion_of_one(trinomial(5), 27);
    CHECK(group_digits(prefix(five, 27)) == "10000 00000 00100 00000 00000 00");
}

TEST_CASE("digits agree with the greedy oracle")
{
    for (unsigned n = 2; n <= 12; ++n) {
        ExpansionOrbit orbit = expansion_of_one(trinomial(n), 200);
        CHECK(prefix(orbit, 200) == oracle::trinomial_digits(n, 200));
    }
}

TEST_CASE("second nonzero digit index")
{
    for (unsigned n = 2; n <= 60; ++n) {
        ExpansionOrbit orbit = expansion_of_one(trinomial(n));
        REQUIRE(orbit.m0);
        CHECK(*orbit.m0 == kM0[n]);
        CHECK(first_return_index(orbit) == kM0[n]);
    }
}

TEST_CASE("purely periodic for n = 2 and n = 3")
{
    ExpansionOrbit two = expansion_of_one(trinomial(2));
    REQUIRE(two.periodicity);
    CHECK(*two.periodicity == Periodicity{0, 2});
    ExpansionOrbit three = expansion_of_one(trinomial(3));
    REQUIRE(three.periodicity);
    CHECK(*three.periodicity == Periodicity{0, 5});
    CHECK(detect_period(three) == three.periodicity);
    CHECK(oracle::pure_period(oracle::trinomial_digits(2, 200)) == 2);
    CHECK(oracle::pure_period(oracle::trinomial_digits(3, 200)) == 5);
    CHECK(three.digit(1000) == oracle::trinomial_digits(3, 1000).back());
}

TEST_CASE("telescoping: b^k = sum c_i b^(k-i) + x_k exactly")
{
    for (unsigned n : {4U, 7U, 11U}) {
        NumberField f = trinomial(n);
        ExpansionOrbit orbit = expansion_of_one(f, 150);
        FieldElement acc = f.integer(0);
        FieldElement power = f.one();
        for (std::size_t k = 1; k <= orbit.size(); ++k) {
            acc = field_mul(acc, f.generator(), f) + f.integer(orbit.digits[k - 1]);
            power = field_mul(power, f.generator(), f);
            CHECK(power == acc + orbit.states[k]);
            CHECK(orbit_step(orbit.states[k - 1], orbit.digits[k - 1], f) == orbit.states[k]);
        }
    }
}

TEST_CASE("states stay in (0, 1]")
{
    for (unsigned n : {3U, 4U, 9U, 20U}) {
        NumberField f = trinomial(n);
        ExpansionOrbit orbit = expansion_of_one(f, 300);
        for (const auto& x : orbit.states) {
            RealBall v = embed_real(x, f.real_root().real_part(), 256);
            CHECK(v.is_positive());
            CHECK(certainly_less_equal(v, RealBall(1L, 256)));
        }
    }
}

TEST_CASE("gaps between nonzero digits")
{
    // Digits are 0 or 1 and two ones are never closer than n - 1 positions
    // apart in the prefix before the first return.
    for (unsigned n = 4; n <= 20; ++n) {
        ExpansionOrbit orbit = expansion_of_one(trinomial(n), 6 * n);
        std::size_t last = 0;
        for (std::size_t i = 1; i <= orbit.size(); ++i) {
            long d = orbit.digit(i);
            CHECK((d == 0 || d == 1));
            if (d == 1) {
                if (last != 0)
                    CHECK(i - last >= n - 1);
                last = i;
            }
        }
    }
}

TEST_CASE("zeros after the first return")
{
    for (unsigned n = 4; n <= 60; ++n) {
        ExpansionOrbit orbit = expansion_of_one(trinomial(n));
        REQUIRE(orbit.m0);
        std::size_t m0 = *orbit.m0;
        for (std::size_t i = m0 + 1; i <= 2 * m0 - 2; ++i)
            CHECK(orbit.digit(i) == 0);
    }
}

TEST_CASE("admissibility examples")
{
    ExpansionOrbit golden = expansion_of_one(trinomial(2), 20);
    CHECK_FALSE(check_admissible({1, 1}, golden));
    CHECK(check_admissible({0, 0, 0, 0}, golden));
    ExpansionOrbit four = expansion_of_one(trinomial(4), 60);
    CHECK_FALSE(check_admissible({1, 0, 1}, four));
    // 1 0^t 1 needs t >= m0 - 2 = 7
    for (std::size_t t = 0; t < 12; ++t) {
        std::vector<long> w(t + 2, 0);
        w.front() = 1;
        w.back() = 1;
        CHECK(check_admissible(w, four) == (t >= 7));
    }
}

TEST_CASE("every shift of the expansion is admissible")
{
    NumberField f = trinomial(4);
    ExpansionOrbit ref = expansion_of_one(f, 400);
    std::vector<long> word = prefix(ref, 100);
    for (std::size_t s = 1; s < 60; ++s)
        CHECK(check_admissible(std::vector<long>(word.begin() + s, word.end()), ref));
    std::vector<long> bad = {1, 1};
    CHECK_FALSE(check_admissible(bad, ref));
    CHECK_THROWS_AS(check_admissible(std::vector<long>(500, 0), ref), DomainError);
}

TEST_CASE("digit decisions do not depend on the starting precision")
{
    NumberField f = trinomial(9);
    ExpansionOrbit a = expansion_of_one(f, 400, 64);
    ExpansionOrbit b = expansion_of_one(f, 400, 128);
    ExpansionOrbit c = expansion_of_one(f, 400, 512);
    CHECK(a.digits == b.digits);
    CHECK(a.digits == c.digits);
    CHECK(a.states == c.states);
}

TEST_CASE("exact integer products take the lower digit")
{
    // golden ratio: b (b - 1) = 1 exactly, so the digit is 0 rather than 1
    NumberField f = trinomial(2);
    FieldElement x = f.generator() - f.one();
    CHECK(quasi_greedy_digit(x, f) == 0);
    CHECK(quasi_greedy_digit(f.one(), f) == 1);
}

TEST_CASE("digit grouping round trip")
{
    std::vector<long> d = {1, 0, 12, 0, 3, 0, 0, 9};
    CHECK(group_digits(d) == "10[12]03 009");
    CHECK(parse_digits(group_digits(d)) == d);
    CHECK_THROWS_AS(parse_digits("1[2"), DomainError);
}
