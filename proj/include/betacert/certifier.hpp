#pragma once

// Non-Parry certificates.
//
// Let g be a conjugate of b with |g| > 1 and x_k the orbit states of the
// expansion of one. If |x_k'| > floor(b)/(|g| - 1) at some k, then
// |x_{m+1}'| = |g x_m' - c_{m+1}| > |x_m'| from then on, the conjugate orbit
// diverges, the states never repeat, and d_b(1-0) is not eventually
// periodic. A certificate records such a k with rational bounds on both
// sides of the inequality.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "betacert/ball.hpp"
#include "betacert/beta_expansion.hpp"
#include "betacert/number_field.hpp"

namespace betacert {

enum class ConjugateChoice { closest, max_modulus };

struct NonParryCertificate {
    NumberField field;
    std::size_t conjugate_index = 0;
    std::size_t k = 0;
    /// Rational q with q <= |x_k'|.
    mpq_class lower_bound_on_orbit;
    /// Rational q with floor(b)/(|g| - 1) <= q.
    mpq_class upper_bound_on_threshold;
    Precision precision_used = 0;
    /// c_1 ... c_k.
    std::vector<long> digits;
    /// Hypotheses the certificate relies on but does not prove.
    std::vector<std::string> assumptions;

    const ComplexBall& conjugate() const { return field.roots()[conjugate_index]; }
};

struct ParryEvidence {
    Periodicity periodicity;
    std::vector<long> preperiod_word;
    std::vector<long> period_word;
};

struct Inconclusive {
    std::string reason;
    std::size_t steps = 0;
};

using CertifyResult = std::variant<NonParryCertificate, ParryEvidence, Inconclusive>;

struct CertifyOptions {
    /// Orbit budget; by default max(4 m0, 200), fixed once m0 is seen.
    std::optional<std::size_t> max_steps;
    ConjugateChoice conjugate = ConjugateChoice::closest;
    /// Overrides `conjugate` with an explicit root index.
    std::optional<std::size_t> conjugate_index;
    Precision start_precision = kStartPrecision;
    std::vector<std::string> assumptions = {"minimal polynomial irreducible over Q (asserted by caller)"};
};

/// Enclosure of floor(b)/(|g| - 1). Throws DomainError when |g| > 1 cannot
/// be certified.
RealBall threshold(const NumberField& field, const ComplexBall& conjugate);

std::size_t choose_conjugate(const NumberField& field, ConjugateChoice choice);

/// Walks the orbit of one, returning a certificate at the first step where
/// the divergence inequality is certified, periodicity evidence if a state
/// repeats first, or Inconclusive when the budget runs out.
CertifyResult certify_non_parry(const NumberField& field, const CertifyOptions& options = {});

/// Recomputes the orbit and both sides of the inequality from scratch at
/// twice the recorded precision. False on any failure.
bool verify_certificate(const NonParryCertificate& cert);

/// Whether the divergence inequality holds at step k for the given
/// conjugate; empty if it cannot be decided at the precision cap.
std::optional<bool> inequality_holds_at(const NumberField& field, std::size_t conjugate_index, std::size_t k);

struct GoalCheck {
    unsigned n = 0;
    std::size_t m0 = 0;
    /// 2 m0 - 2.
    std::size_t index = 0;
    /// b^{2m0-2} - b^{2m0-3} - b^{m0-2} equals the orbit state at that index.
    bool closed_form_matches = false;
    bool holds = false;
    mpq_class lower_bound_on_orbit;
    mpq_class upper_bound_on_threshold;
};

/// For x^n - x - 1 with n >= 4: |x_{2m0-2}'| > 1/(|g_n| - 1) at the root g_n
/// closest to b_n in the upper half plane.
GoalCheck check_goal(unsigned n);
bool goal_inequality(unsigned n);

} // namespace betacert
