#include "betacert/beta_expansion.hpp"

#include <cctype>
#include <cmath>
#include <unordered_map>

#include "betacert/errors.hpp"
#include "betacert/root_engine.hpp"

namespace betacert {

namespace {

// Digit for b x given an enclosure of b x, or nothing if the enclosure is
// too wide to tell.
std::optional<long> decide_digit(const FieldElement& x, const RealBall& bx)
{
    mpz_class lo_ceil, hi_floor;
    mpfr_get_z(lo_ceil.get_mpz_t(), bx.lower().get(), MPFR_RNDU);
    mpfr_get_z(hi_floor.get_mpz_t(), bx.upper().get(), MPFR_RNDD);
    if (lo_ceil > hi_floor)
        return lo_ceil.get_si() - 1;
    if (lo_ceil != hi_floor)
        return std::nullopt;
    // Exactly one integer j is in range; b x == j is decided in the ring.
    FieldElement y = x;
    y.shift_subtract(0);
    std::optional<mpz_class> exact = y.as_integer();
    if (exact && *exact == lo_ceil)
        return lo_ceil.get_si() - 1;
    return std::nullopt;
}

RealBall real_root_at(const IntPolynomial& f, const ComplexBall& root, Precision prec)
{
    if (root.precision() >= prec)
        return root.real_part();
    return refine_root(f, root, prec).real_part();
}

RealBall real_root_at(const NumberField& field, Precision prec)
{
    return real_root_at(field.min_poly(), field.real_root(), prec);
}

std::optional<std::size_t> scan_first_return(const ExpansionOrbit& orbit)
{
    std::size_t limit = orbit.size();
    if (orbit.periodicity)
        limit += orbit.periodicity->period;
    for (std::size_t i = 2; i <= limit; ++i)
        if (orbit.digit(i) != 0)
            return i;
    return std::nullopt;
}

} // namespace

long ExpansionOrbit::digit(std::size_t i) const
{
    if (i == 0)
        throw DomainError("digits are indexed from 1");
    if (i <= digits.size())
        return digits[i - 1];
    if (!periodicity)
        throw DomainError("digit " + std::to_string(i) + " is past the computed prefix of " +
                          std::to_string(digits.size()) + " digits");
    std::size_t p = periodicity->preperiod;
    std::size_t q = periodicity->period;
    return digits[p + (i - p - 1) % q];
}

OrbitWalker::OrbitWalker(const NumberField& field, Precision start_precision)
    : OrbitWalker(field.modulus_ptr(), field.real_root(), field.floor_beta(), start_precision)
{
}

OrbitWalker::OrbitWalker(std::shared_ptr<const IntPolynomial> modulus, const ComplexBall& real_root,
                         mpz_class floor_beta, Precision start_precision)
    : modulus_(std::move(modulus)),
      root_(real_root),
      floor_beta_(std::move(floor_beta)),
      state_(modulus_, {1}),
      beta_(real_root_at(*modulus_, root_, start_precision)),
      value_(1L, start_precision),
      precision_(start_precision)
{
    if (!root_.im().is_zero())
        throw DomainError("the expansion base must be enclosed by a ball centred on the real axis");
}

void OrbitWalker::refine()
{
    if (fresh_) {
        precision_ *= 2;
        if (precision_ > precision_cap())
            throw PrecisionExhausted("digit " + std::to_string(index_ + 1) + " of the expansion of one",
                                     precision_cap());
        if (beta_.precision() < precision_)
            beta_ = real_root_at(*modulus_, root_, precision_);
    }
    value_ = embed_real(state_, beta_, precision_);
    fresh_ = true;
}

long OrbitWalker::advance()
{
    for (;;) {
        RealBall bx = beta_ * value_;
        if (std::optional<long> d = decide_digit(state_, bx)) {
            if (*d < 0 || floor_beta_ < *d)
                throw DomainError("orbit state left (0, 1] at index " + std::to_string(index_));
            state_.shift_subtract(*d);
            if (std::optional<mpz_class> exact = state_.as_integer())
                value_ = RealBall(*exact, precision_);
            else
                value_ = bx - *d;
            ++index_;
            fresh_ = false;
            return *d;
        }
        refine();
    }
}

long quasi_greedy_digit(const FieldElement& x, const NumberField& field)
{
    if (*x.modulus_ptr() != field.min_poly())
        throw FieldMismatch();
    std::optional<mpz_class> exact = x.as_integer();
    bool unit = exact && *exact == 1;
    for (Precision p = kStartPrecision; p <= precision_cap(); p *= 2) {
        RealBall beta = real_root_at(field, p);
        RealBall value = embed_real(x, beta, p);
        if (!unit) {
            if (exact || value.is_negative() || certainly_less(RealBall(1L, p), value))
                throw DomainError("quasi-greedy digits need a state in (0, 1]");
            if (!value.is_positive() || !certainly_less(value, RealBall(1L, p)))
                continue;
        }
        if (std::optional<long> d = decide_digit(x, beta * value))
            return *d;
    }
    throw PrecisionExhausted("quasi-greedy digit", precision_cap());
}

std::size_t default_expansion_steps(const NumberField& field)
{
    double n = static_cast<double>(field.degree());
    return static_cast<std::size_t>(std::ceil(10 * n * std::log2(n)));
}

ExpansionOrbit expansion_of_one(const NumberField& field, std::optional<std::size_t> max_steps,
                                Precision start_precision)
{
    if (max_steps && *max_steps < 1)
        throw DomainError("expansion needs at least one step");
    ExpansionOrbit orbit;
    OrbitWalker walker(field, start_precision);
    std::unordered_map<FieldElement, std::size_t> seen;
    seen.emplace(walker.state(), 0);
    orbit.states.push_back(walker.state());
    std::size_t cap = max_steps ? *max_steps : default_expansion_steps(field);
    while (orbit.digits.size() < cap) {
        long d = walker.advance();
        std::size_t k = walker.index();
        orbit.digits.push_back(d);
        orbit.states.push_back(walker.state());
        if (!orbit.m0 && k >= 2 && d != 0) {
            orbit.m0 = k;
            if (!max_steps)
                cap = 4 * k;
        }
        auto [it, inserted] = seen.emplace(walker.state(), k);
        if (!inserted) {
            orbit.periodicity = Periodicity{it->second, k - it->second};
            break;
        }
    }
    orbit.precision_used = walker.precision();
    if (!orbit.m0)
        orbit.m0 = scan_first_return(orbit);
    return orbit;
}

std::size_t first_return_index(const ExpansionOrbit& orbit)
{
    if (orbit.m0)
        return *orbit.m0;
    if (std::optional<std::size_t> m0 = scan_first_return(orbit))
        return *m0;
    throw DomainError("no nonzero digit after the first within the computed prefix of " +
                      std::to_string(orbit.size()) + " digits");
}

std::optional<Periodicity> detect_period(const ExpansionOrbit& orbit) { return orbit.periodicity; }

bool check_admissible(const std::vector<long>& word, const ExpansionOrbit& reference)
{
    if (reference.size() <= word.size() && !reference.periodicity)
        throw DomainError("reference prefix must be longer than the word");
    std::size_t known = reference.size() + (reference.periodicity ? reference.periodicity->period : 0);
    for (std::size_t start = 0; start < word.size(); ++start) {
        bool below = false;
        for (std::size_t j = 0;; ++j) {
            std::size_t pos = start + j;
            long s = pos < word.size() ? word[pos] : 0;
            if (pos >= word.size() && j >= known) {
                // word is exhausted and the reference repeats from here on
                // (or is unknown): the comparison cannot change any more.
                if (!reference.periodicity)
                    throw DomainError("reference prefix too short to compare suffix " + std::to_string(start));
                break;
            }
            if (!reference.periodicity && j >= reference.size())
                throw DomainError("reference prefix too short to compare suffix " + std::to_string(start));
            long r = reference.digit(j + 1);
            if (s < r) {
                below = true;
                break;
            }
            if (s > r)
                return false;
        }
        if (!below)
            return false;
    }
    return true;
}

std::string group_digits(const std::vector<long>& digits, std::size_t group)
{
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && group > 0 && i % group == 0)
            out += ' ';
        if (digits[i] >= 0 && digits[i] <= 9)
            out += static_cast<char>('0' + digits[i]);
        else
            out += "[" + std::to_string(digits[i]) + "]";
    }
    return out;
}

std::vector<long> parse_digits(std::string_view text)
{
    std::vector<long> digits;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        if (c >= '0' && c <= '9') {
            digits.push_back(c - '0');
        } else if (c == '[') {
            std::size_t close = text.find(']', i);
            if (close == std::string_view::npos)
                throw DomainError("unterminated digit group in \"" + std::string(text) + "\"");
            digits.push_back(std::stol(std::string(text.substr(i + 1, close - i - 1))));
            i = close;
        } else {
            throw DomainError("bad digit '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
        }
    }
    return digits;
}

} // namespace betacert
