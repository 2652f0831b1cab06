#include "betacert/perron_gen.hpp"

#include <cmath>
#include <numbers>

#include "betacert/root_engine.hpp"

namespace betacert {

namespace {

using RationalPoly = std::vector<mpq_class>;

std::optional<mpz_class> integer_root(const mpz_class& a, unsigned k)
{
    if (a < 0) {
        if (k % 2 == 0)
            return std::nullopt;
        std::optional<mpz_class> r = integer_root(-a, k);
        if (r)
            *r = -*r;
        return r;
    }
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), k) == 0)
        return std::nullopt;
    return r;
}

bool has_rational_root(const mpq_class& q, unsigned k)
{
    return integer_root(q.get_num(), k) && integer_root(q.get_den(), k);
}

RationalPoly multiply(const RationalPoly& a, const RationalPoly& b, std::size_t keep)
{
    RationalPoly out(std::min(keep, a.size() + b.size() - 1));
    for (std::size_t i = 0; i < a.size() && i < out.size(); ++i)
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// p (ascending, nonzero leading coefficient) equals h^k for some h in Q[x].
bool rational_power(const RationalPoly& p, unsigned k)
{
    std::size_t d = p.size() - 1;
    if (d % k != 0 || !has_rational_root(p.back(), k))
        return false;
    // Reversed monic form R(y) = y^d p(1/y) / lc has R(0) = 1; its k-th root
    // as a power series S(y) = R(y)^{1/k} is determined term by term, and p
    // is a k-th power iff S truncated at degree d/k satisfies S^k = R.
    RationalPoly r(d + 1);
    for (std::size_t i = 0; i <= d; ++i)
        r[i] = p[d - i] / p.back();
    std::size_t e = d / k;
    RationalPoly s(e + 1);
    s[0] = 1;
    mpq_class alpha(1, k);
    for (std::size_t j = 1; j <= e; ++j) {
        mpq_class acc = 0;
        for (std::size_t i = 1; i <= j; ++i)
            acc += (alpha * static_cast<unsigned long>(i) - mpq_class(static_cast<unsigned long>(j - i))) * r[i] *
                   s[j - i];
        s[j] = acc / static_cast<unsigned long>(j);
    }
    RationalPoly power = {mpq_class(1)};
    for (unsigned i = 0; i < k; ++i)
        power = multiply(power, s, d + 1);
    power.resize(d + 1);
    return power == r;
}

RationalPoly to_rational(const IntPolynomial& p, const mpq_class& scale)
{
    RationalPoly out;
    for (const auto& c : p.coeffs())
        out.push_back(mpq_class(c) * scale);
    return out;
}

mpz_class support_gcd(const std::vector<std::size_t>& support)
{
    mpz_class g = 0;
    for (std::size_t s : support)
        mpz_gcd_ui(g.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(s - support.front()));
    return g;
}

GeometricResult fail_at(double t, std::optional<double> r, std::string method)
{
    GeometricResult out;
    out.outcome = GeometricResult::Outcome::fail;
    out.witness_t = t;
    out.witness_r = r;
    out.method = std::move(method);
    return out;
}

constexpr double kTieTolerance = 1e-9;

enum class Sample { below, above, undecided };

Sample compare_sample(const IntPolynomial& G, double r, double t, Precision prec, double& excess)
{
    RealBall rb(mpq_class(r), prec);
    ComplexBall z = exp_i(RealBall(mpq_class(t), prec)) * ComplexBall(rb);
    RealBall modulus = abs(evaluate(G, z, prec));
    RealBall target = evaluate(G, rb, prec);
    excess = (modulus - target).to_double();
    // A strict gap this thin usually means the curve touches the circle
    // between grid points, so it is not counted as evidence for Pass.
    if (certainly_less(modulus, target))
        return -excess > kTieTolerance * target.to_double() ? Sample::below : Sample::undecided;
    if (certainly_less_equal(target, modulus))
        return Sample::above;
    return Sample::undecided;
}

} // namespace

bool is_rational_power(const IntPolynomial& p, unsigned k)
{
    if (p.is_zero() || k < 2)
        return !p.is_zero() && k == 1;
    return rational_power(to_rational(p, 1), k);
}

bool is_minus_four_fourth_power(const IntPolynomial& p)
{
    if (p.is_zero())
        return false;
    return rational_power(to_rational(p, mpq_class(-1, 4)), 4);
}

GSpec validate_G(const IntPolynomial& G)
{
    if (G.is_zero() || G.deg() < 1)
        throw InvalidG(GDefect::constant, "G must have degree >= 1");
    GSpec spec;
    spec.G = G;
    spec.G1 = G(1);
    if (spec.G1 <= 1)
        throw InvalidG(GDefect::value_at_one_too_small, "G(1) = " + spec.G1.get_str() + " is not > 1");
    if (G.coeff(0) == 0)
        throw InvalidG(GDefect::vanishes_at_zero, "G(0) = 0");
    std::size_t d = G.deg();
    for (unsigned k = 2; k <= d; ++k)
        if (d % k == 0 && is_rational_power(G, k))
            throw InvalidG(GDefect::perfect_power, G.to_string() + " is a " + std::to_string(k) + "-th power");
    if (is_minus_four_fourth_power(G))
        throw InvalidG(GDefect::minus_four_fourth_power, G.to_string() + " has the form -4 h^4");
    for (const auto& c : G.coeffs())
        if (c < 0)
            spec.relaxed = true;
    // exp(2 pi m / sqrt 3) is transcendental, so it never equals G(1).
    for (unsigned m = 1;; ++m) {
        std::optional<bool> above;
        for (Precision p = kStartPrecision; !above && p <= precision_cap(); p *= 2) {
            RealBall e = exp(const_pi(p) * static_cast<long>(2 * m) / sqrt(RealBall(3L, p)));
            RealBall g1(spec.G1, p);
            if (certainly_less(g1, e))
                above = true;
            else if (certainly_less(e, g1))
                above = false;
        }
        if (!above)
            throw PrecisionExhausted("exp(2 pi m / sqrt 3) against G(1)", precision_cap());
        if (*above) {
            spec.m = m;
            return spec;
        }
    }
}

std::string_view outcome_name(GeometricResult::Outcome outcome)
{
    switch (outcome) {
    case GeometricResult::Outcome::pass:
        return "pass";
    case GeometricResult::Outcome::fail:
        return "fail";
    case GeometricResult::Outcome::borderline:
        return "borderline";
    }
    return "?";
}

GeometricGrid GeometricGrid::standard()
{
    GeometricGrid grid;
    for (int j : {4, 6, 8, 10})
        grid.r_grid.push_back(1 + std::ldexp(1.0, -j));
    constexpr int steps = 720;
    for (int j = 1; j < steps; ++j)
        grid.t_grid.push_back(2 * std::numbers::pi * j / steps);
    return grid;
}

GeometricResult geometric_condition(const IntPolynomial& G, const GeometricGrid& grid)
{
    if (G.is_zero())
        throw DomainError("G must be nonzero");
    std::vector<std::size_t> support = G.support();
    double r0 = grid.r_grid.empty() ? 1.0 : grid.r_grid.front();
    if (support.size() == 1)
        return fail_at(std::numbers::pi, r0, "monomial: |G(r z)| = G(r) on the whole circle");

    bool nonnegative = true;
    for (const auto& c : G.coeffs())
        if (c < 0)
            nonnegative = false;
    if (nonnegative && grid.use_sign_shortcut) {
        // With nonnegative coefficients |G(r z)| <= G(r), with equality iff
        // z^(s - s0) = 1 for every exponent s in the support.
        mpz_class g = support_gcd(support);
        if (g == 1) {
            GeometricResult out;
            out.outcome = GeometricResult::Outcome::pass;
            out.method = "nonnegative coefficients";
            return out;
        }
        return fail_at(2 * std::numbers::pi / g.get_d(), r0,
                       "nonnegative coefficients with exponents in a progression of step " + g.get_str());
    }

    if (grid.r_grid.empty() || grid.t_grid.empty())
        throw DomainError("sampling grids must be nonempty");
    std::optional<std::pair<double, double>> undecided;
    bool tie = false;
    for (double r : grid.r_grid) {
        std::optional<double> worst_t;
        double worst = 0;
        for (double t : grid.t_grid) {
            double excess = 0;
            Sample s = compare_sample(G, r, t, 128, excess);
            if (s == Sample::undecided)
                s = compare_sample(G, r, t, 512, excess);
            if (s == Sample::undecided && excess < 0)
                tie = true;
            if (s == Sample::above && (!worst_t || excess > worst)) {
                worst_t = t;
                worst = excess;
            } else if (s == Sample::undecided && !undecided) {
                undecided = {t, r};
            }
        }
        if (worst_t)
            return fail_at(*worst_t, r, "sampled |G(r e^{it})| >= G(r)");
    }

    // Near t = 0: |G(e^{it})|^2 = G(1)^2 - (S0 S2 - S1^2) t^2 + O(t^4) with
    // S0 = G(1), S1 = G'(1), S2 = G''(1) + G'(1).
    IntPolynomial d1 = G.derivative();
    mpz_class s0 = G(1);
    mpz_class s1 = d1(1);
    mpz_class s2 = d1.derivative()(1) + s1;
    mpz_class curvature = s0 * s2 - s1 * s1;
    GeometricResult out;
    if (s1 == 0 || curvature == 0) {
        out.outcome = GeometricResult::Outcome::borderline;
        out.witness_t = 0.0;
        out.witness_r = 1.0;
        out.method = s1 == 0 ? "curve singular at t = 0" : "curvature at t = 0 equals the circle's";
        return out;
    }
    if (curvature < 0)
        return fail_at(0.0, 1.0, "curve leaves the circle of radius G(1) at t = 0");
    if (undecided) {
        out.outcome = GeometricResult::Outcome::borderline;
        out.witness_t = undecided->first;
        out.witness_r = undecided->second;
        out.method = tie ? "sampled |G(r e^{it})| within a relative 1e-9 of G(r)" : "sample undecided at 512 bits";
        return out;
    }
    out.outcome = GeometricResult::Outcome::pass;
    out.method = "certified on the grid with strict curvature at t = 0";
    return out;
}

IntPolynomial perron_polynomial(const IntPolynomial& G, unsigned n)
{
    if (!G.is_zero() && G.deg() >= n)
        throw DomainError("x^n - G(x) needs deg G < n");
    return IntPolynomial::monomial(1, n) - G;
}

GeneralizedResult generalized_certify(const GSpec& spec, unsigned n, const GeneralizedOptions& options)
{
    IntPolynomial f = perron_polynomial(spec.G, n);
    NumberField field = make_number_field(f, Irreducibility::asserted);
    const double pi = std::numbers::pi;
    std::complex<double> seed(1 + std::log(spec.G1.get_d()) / n, 2 * pi * spec.m / n);

    auto usable = [&](std::size_t i) {
        const ComplexBall& root = field.roots()[i];
        if (i == field.real_root_index() || !root.imag_part().is_positive())
            return false;
        return certainly_less(RealBall(1L, root.precision()), abs(root));
    };

    bool seed_converged = true;
    std::optional<std::size_t> index;
    try {
        ComplexBall eta = newton_refine(f, seed, field.roots().front().precision());
        for (std::size_t i = 0; i < field.degree(); ++i)
            if (field.roots()[i].overlaps(eta) && usable(i))
                index = i;
    } catch (const Error&) {
    }
    if (!index) {
        seed_converged = false;
        double best = 0;
        for (std::size_t i = 0; i < field.degree(); ++i) {
            if (!usable(i))
                continue;
            double d = std::abs(field.roots()[i].to_complex() - seed);
            if (!index || d < best) {
                index = i;
                best = d;
            }
        }
    }
    if (!index)
        throw NonConvergence("no root of " + f.to_string() + " outside the unit disk in the upper half plane");

    CertifyOptions certify;
    certify.max_steps = options.max_steps;
    certify.start_precision = options.start_precision;
    certify.conjugate_index = *index;
    certify.assumptions = {"non-cyclotomic part of x^n - G(x) irreducible over Q (asserted by caller)",
                           "roots on the unit circle excluded from the conjugate search"};
    return GeneralizedResult{certify_non_parry(field, certify), *index, seed_converged};
}

std::vector<CurvePoint> curve_export(const IntPolynomial& G, unsigned samples)
{
    if (samples < 16)
        throw DomainError("curve export needs at least 16 samples");
    std::vector<CurvePoint> rows;
    rows.reserve(samples);
    double g1 = G(1).get_d();
    for (unsigned j = 0; j < samples; ++j) {
        double t = 2 * std::numbers::pi * j / samples;
        ComplexBall value = evaluate(G, exp_i(RealBall(mpq_class(t), kStartPrecision)), kStartPrecision);
        rows.push_back({t, value.re().to_double(), value.im().to_double(), abs(value).to_double(), g1});
    }
    return rows;
}

} // namespace betacert
