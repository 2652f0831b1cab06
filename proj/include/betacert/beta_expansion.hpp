#pragma once

// The quasi-greedy expansion d_b(1-0) of one in base b, computed exactly.
//
// States live in Z[b]: x_0 = 1 and x_{k+1} = b x_k - c_{k+1}, where the digit
// is c = ceil(b x) - 1, so every state stays in (0, 1]. Digits are decided
// with certified real enclosures; when b x may be an integer the question is
// settled by exact arithmetic in the ring.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "betacert/ball.hpp"
#include "betacert/number_field.hpp"

namespace betacert {

struct Periodicity {
    std::size_t preperiod = 0;
    std::size_t period = 0;
    friend bool operator==(const Periodicity&, const Periodicity&) = default;
};

struct ExpansionOrbit {
    /// digits[i] is c_{i+1}.
    std::vector<long> digits;
    /// states[k] is x_k, from x_0 = 1 through x_K.
    std::vector<FieldElement> states;
    /// Smallest index m >= 2 with c_m != 0, if one was computed.
    std::optional<std::size_t> m0;
    /// Minimal (p, q) with x_p = x_{p+q}, if a repeat occurred.
    std::optional<Periodicity> periodicity;
    /// Largest working precision any digit decision needed.
    Precision precision_used = 0;

    std::size_t size() const { return digits.size(); }
    /// c_i for i >= 1, continuing past the computed prefix when periodic.
    long digit(std::size_t i) const;
};

/// Walks the orbit of 1 one digit at a time without storing it.
class OrbitWalker {
public:
    explicit OrbitWalker(const NumberField& field, Precision start_precision = kStartPrecision);
    /// Only the real root is needed to walk the orbit; `real_root` must be a
    /// certified enclosure of the root of `modulus` with integer part
    /// `floor_beta`, centred on the real axis.
    OrbitWalker(std::shared_ptr<const IntPolynomial> modulus, const ComplexBall& real_root, mpz_class floor_beta,
                Precision start_precision = kStartPrecision);

    /// Decides c_{k+1}, moves to x_{k+1} and returns the digit.
    long advance();

    const FieldElement& state() const { return state_; }
    /// k, the index of the current state x_k.
    std::size_t index() const { return index_; }
    Precision precision() const { return precision_; }
    /// Certified enclosure of the current state under the real embedding.
    const RealBall& real_value() const { return value_; }

private:
    void refine();

    std::shared_ptr<const IntPolynomial> modulus_;
    ComplexBall root_;
    mpz_class floor_beta_;
    FieldElement state_;
    RealBall beta_;
    RealBall value_;
    std::size_t index_ = 0;
    Precision precision_;
    bool fresh_ = true;
};

/// Digit ceil(b x) - 1 for x in (0, 1], or b x - 1 when b x is an integer.
long quasi_greedy_digit(const FieldElement& x, const NumberField& field);

/// Smallest step count the expansion defaults to before m0 is known:
/// ceil(10 n log n / log 2).
std::size_t default_expansion_steps(const NumberField& field);

/// Runs the orbit of 1 for max_steps digits or until a state repeats. With no
/// step count, runs to 4 m0 once m0 is found (at most the default above
/// before that).
ExpansionOrbit expansion_of_one(const NumberField& field, std::optional<std::size_t> max_steps = std::nullopt,
                                Precision start_precision = kStartPrecision);

std::size_t first_return_index(const ExpansionOrbit& orbit);
std::optional<Periodicity> detect_period(const ExpansionOrbit& orbit);

/// Whether every suffix of word 0^infinity is lexicographically below the
/// reference expansion. The reference must be longer than the word.
bool check_admissible(const std::vector<long>& word, const ExpansionOrbit& reference);

/// "10000 00010 ..." with a space after every `group` digits. Digits above
/// nine are written in brackets.
std::string group_digits(const std::vector<long>& digits, std::size_t group = 5);
/// Inverse of group_digits; whitespace is ignored.
std::vector<long> parse_digits(std::string_view text);

} // namespace betacert
