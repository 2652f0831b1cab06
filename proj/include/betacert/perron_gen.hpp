#pragma once

// The family x^n - G(x) for an integer polynomial G with G(1) > 1.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "betacert/certifier.hpp"
#include "betacert/errors.hpp"
#include "betacert/int_polynomial.hpp"

namespace betacert {

enum class GDefect { constant, value_at_one_too_small, vanishes_at_zero, perfect_power, minus_four_fourth_power };

class InvalidG : public DomainError {
public:
    InvalidG(GDefect defect, const std::string& what) : DomainError(what), defect_(defect) {}
    GDefect defect() const { return defect_; }

private:
    GDefect defect_;
};

struct GSpec {
    IntPolynomial G;
    /// G(1).
    mpz_class G1;
    /// True when some coefficient is negative, so the geometric condition
    /// has to be checked by sampling rather than read off the signs.
    bool relaxed = false;
    /// Smallest m >= 1 with exp(2 pi m / sqrt 3) > G(1).
    unsigned m = 1;
};

/// Checks G(1) > 1, G(0) != 0, G != h^k (k >= 2) and G != -4 h^4 over Q.
/// Throws InvalidG naming the first hypothesis that fails.
GSpec validate_G(const IntPolynomial& G);

/// Whether p = h^k for some h in Q[x].
bool is_rational_power(const IntPolynomial& p, unsigned k);
/// Whether p = -4 h^4 for some h in Q[x].
bool is_minus_four_fourth_power(const IntPolynomial& p);

struct GeometricResult {
    enum class Outcome { pass, fail, borderline };
    Outcome outcome = Outcome::borderline;
    /// Sample (t, r) that decided a Fail or could not be decided.
    std::optional<double> witness_t;
    std::optional<double> witness_r;
    std::string method;
};

std::string_view outcome_name(GeometricResult::Outcome outcome);

struct GeometricGrid {
    /// Radii r > 1 at which |G(r e^{it})| < G(r) is sampled.
    std::vector<double> r_grid;
    /// Angles in (0, 2 pi).
    std::vector<double> t_grid;
    /// Decide by coefficient signs when they are all nonnegative.
    bool use_sign_shortcut = true;

    /// r = 1 + 2^-j for j = 4, 6, 8, 10 and t = 2 pi j / 720.
    static GeometricGrid standard();
};

/// Whether |G(r z)| < G(r) for |z| = 1, z != 1 and r slightly above 1.
/// Pass means: implied by nonnegative coefficients, or certified at every
/// grid point together with a strict curvature test at t = 0.
GeometricResult geometric_condition(const IntPolynomial& G, const GeometricGrid& grid = GeometricGrid::standard());

/// x^n - G(x); requires deg G < n.
IntPolynomial perron_polynomial(const IntPolynomial& G, unsigned n);

struct GeneralizedOptions {
    std::optional<std::size_t> max_steps;
    Precision start_precision = kStartPrecision;
};

struct GeneralizedResult {
    CertifyResult result;
    /// Index of eta_n among the field's roots.
    std::size_t conjugate_index = 0;
    /// False when Newton from the eta_n seed did not land on a usable root
    /// and the nearest usable root was taken instead.
    bool seed_converged = true;
};

/// Non-Parry certification for x^n - G(x) with the conjugate
/// eta_n ~ 1 + (log G(1) + 2 pi m i)/n.
GeneralizedResult generalized_certify(const GSpec& spec, unsigned n, const GeneralizedOptions& options = {});

struct CurvePoint {
    double t;
    double re;
    double im;
    double modulus;
    double g1;
};

/// G(e^{it}) at t = 2 pi j / samples for j = 0, ..., samples - 1.
std::vector<CurvePoint> curve_export(const IntPolynomial& G, unsigned samples);

} // namespace betacert
