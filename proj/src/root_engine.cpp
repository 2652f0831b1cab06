#include "betacert/root_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "betacert/errors.hpp"

namespace betacert {

namespace {

constexpr int kNewtonCap = 200;
constexpr int kKrawczykAttempts = 8;
constexpr int kAberthCap = 2000;

mpfr_exp_t exponent_of(mpfr_srcptr x)
{
    return mpfr_zero_p(x) ? std::numeric_limits<mpfr_exp_t>::min() / 2 : mpfr_get_exp(x);
}

// Binary exponent of max(|re|, |im|) of the midpoint.
mpfr_exp_t magnitude_exponent(const ComplexBall& z)
{
    return std::max(exponent_of(z.re().get()), exponent_of(z.im().get()));
}

ComplexBall zero_ball(const Mag& r, Precision prec)
{
    return ComplexBall(BigFloat(prec), BigFloat(prec), r);
}

struct Approximation {
    ComplexBall point;
    Mag last_step;
};

// Plain floating Newton with precision doubling; the result is a point.
Approximation newton_iterate(const IntPolynomial& f, const IntPolynomial& df, const ComplexBall& seed, Precision target)
{
    Precision work = std::min(target, std::max(kStartPrecision, seed.precision()));
    ComplexBall z = round_point(seed, work);
    Mag last_step = Mag::pow2(1);
    int settled = 0;
    for (int iter = 0; iter < kNewtonCap; ++iter) {
        ComplexBall fz = evaluate(f, z, work);
        if (fz.midpoint().contains_zero()) {
            if (work == target)
                return {z, Mag()};
            work = std::min(target, 2 * work);
            z = round_point(z, work);
            continue;
        }
        ComplexBall dfz = evaluate(df, z, work);
        if (dfz.midpoint().contains_zero())
            throw NonConvergence("Newton iteration hit a critical point of " + f.to_string());
        ComplexBall step = approx_div(fz.midpoint(), dfz.midpoint());
        z = round_point(z - step, work);
        last_step = Mag::hypot_upper(step.re().get(), step.im().get());
        mpfr_exp_t gap = magnitude_exponent(z) - magnitude_exponent(step);
        if (gap > static_cast<mpfr_exp_t>(work) - 8) {
            if (work == target) {
                if (++settled >= 2)
                    return {z, last_step};
            } else {
                work = std::min(target, 2 * work);
                z = round_point(z, work);
            }
        } else {
            settled = 0;
        }
    }
    throw NonConvergence("Newton iteration did not converge within " + std::to_string(kNewtonCap) +
                         " steps for " + f.to_string());
}

// Krawczyk operator K(B) = z - C f(z) + (1 - C f'(B))(B - z). If K(B) lies in
// the interior of B then B, and hence K(B), contains exactly one root.
std::optional<ComplexBall> krawczyk(const IntPolynomial& f, const IntPolynomial& df, const ComplexBall& z,
                                    const Mag& r, Precision prec)
{
    ComplexBall box = z.with_radius(r);
    ComplexBall fz = evaluate(f, z, prec);
    ComplexBall dfz = evaluate(df, z, prec);
    if (dfz.midpoint().contains_zero())
        return std::nullopt;
    ComplexBall c = approx_div(ComplexBall(1L, prec), dfz.midpoint());
    ComplexBall dfbox = evaluate(df, box, prec);
    ComplexBall k = z - c * fz + (ComplexBall(1L, prec) - c * dfbox) * zero_ball(r, prec);
    if (box.contains_interior(k))
        return k;
    return std::nullopt;
}

ComplexBall certify_point(const IntPolynomial& f, const IntPolynomial& df, const Approximation& approx, Precision prec)
{
    const ComplexBall& z = approx.point;
    Mag r = Mag::pow2(std::max<mpfr_exp_t>(magnitude_exponent(z), 0) - static_cast<mpfr_exp_t>(prec) + 6);
    Mag step = approx.last_step;
    step.mul_2si(3);
    if (r < step)
        r = step;
    for (int attempt = 0; attempt < kKrawczykAttempts; ++attempt) {
        if (auto k = krawczyk(f, df, z, r, prec))
            return *k;
        r.mul_2si(4);
    }
    throw ContractionFailure("could not certify a root of " + f.to_string() + " near " + z.to_string(12));
}

bool is_selmer(const IntPolynomial& f)
{
    if (f.coeffs().size() < 3)
        return false;
    return f == IntPolynomial::selmer(static_cast<unsigned>(f.deg()));
}

std::vector<std::complex<double>> initial_guesses(const IntPolynomial& f)
{
    std::size_t n = f.deg();
    std::vector<std::complex<double>> seeds;
    seeds.reserve(n);
    constexpr double two_pi = 2 * std::numbers::pi;
    if (is_selmer(f) && n >= 4) {
        // One seed per branch m in (-n/2, n/2]; the asymptotic formula where it
        // is valid, points of the circle |z| = 1 elsewhere.
        long lo = -static_cast<long>((n - 1) / 2);
        long hi = static_cast<long>(n / 2);
        for (long m = lo; m <= hi; ++m) {
            if (12 * std::labs(m) <= static_cast<long>(n))
                seeds.push_back(asymptotic_root(static_cast<unsigned>(n), static_cast<int>(m)));
            else
                seeds.push_back(std::polar(1.0, two_pi * static_cast<double>(m) / static_cast<double>(n)));
        }
        return seeds;
    }
    double lead = std::fabs(f.leading().get_d());
    double tail = std::fabs(f.coeffs().front().get_d());
    double radius = tail == 0 ? 1.0 : std::pow(tail / lead, 1.0 / static_cast<double>(n));
    if (!std::isfinite(radius) || radius == 0)
        radius = 1.0;
    for (std::size_t k = 0; k < n; ++k)
        seeds.push_back(std::polar(radius, two_pi * static_cast<double>(k) / static_cast<double>(n) + 0.4));
    return seeds;
}

template <typename T>
bool aberth(const IntPolynomial& f, std::vector<std::complex<T>>& z)
{
    using C = std::complex<T>;
    std::vector<T> a;
    for (const auto& c : f.coeffs()) {
        T v = static_cast<T>(c.get_d());
        if (!std::isfinite(static_cast<double>(v)))
            return false;
        a.push_back(v);
    }
    std::size_t n = z.size();
    const T tol = std::numeric_limits<T>::epsilon() * 64;
    for (int iter = 0; iter < kAberthCap; ++iter) {
        bool done = true;
        for (std::size_t i = 0; i < n; ++i) {
            C p = a.back();
            C dp = 0;
            for (std::size_t k = a.size() - 1; k-- > 0;) {
                dp = dp * z[i] + p;
                p = p * z[i] + a[k];
            }
            if (p == C(0))
                continue;
            C ratio = p / dp;
            C sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    sum += T(1) / (z[i] - z[j]);
            C w = ratio / (T(1) - ratio * sum);
            if (!std::isfinite(static_cast<double>(std::abs(w))))
                return false;
            z[i] -= w;
            if (std::abs(w) > tol * std::max(T(1), std::abs(z[i])))
                done = false;
        }
        if (done)
            return true;
    }
    return false;
}

std::vector<std::complex<double>> approximate_roots(const IntPolynomial& f)
{
    std::vector<std::complex<double>> seeds = initial_guesses(f);
    std::vector<std::complex<double>> z = seeds;
    if (aberth(f, z))
        return z;
    std::vector<std::complex<long double>> zl(seeds.begin(), seeds.end());
    if (aberth(f, zl)) {
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] = std::complex<double>(static_cast<double>(zl[i].real()), static_cast<double>(zl[i].imag()));
        return z;
    }
    throw NonConvergence("Aberth-Ehrlich iteration did not converge for " + f.to_string());
}

// Total order on root enclosures by midpoint; coordinates that agree to well
// below the ball radii are treated as equal so conjugate pairs sort stably.
bool root_less(const ComplexBall& a, const ComplexBall& b)
{
    int c = mpfr_cmp(a.re().get(), b.re().get());
    if (c != 0) {
        BigFloat d(std::max(a.precision(), b.precision()));
        mpfr_sub(d.get(), a.re().get(), b.re().get(), MPFR_RNDN);
        mpfr_abs(d.get(), d.get(), MPFR_RNDN);
        Mag tol = a.rad() + b.rad();
        if (mpfr_cmp(d.get(), tol.get()) > 0)
            return c < 0;
    }
    return mpfr_cmp(a.im().get(), b.im().get()) < 0;
}

bool clearly_disjoint(const ComplexBall& a, const ComplexBall& b)
{
    std::complex<double> d = a.to_complex() - b.to_complex();
    return std::abs(d) > 1e-9 && a.rad().to_double() < 1e-12 && b.rad().to_double() < 1e-12;
}

} // namespace

std::complex<double> asymptotic_root(unsigned n, int m)
{
    if (n < 4 || static_cast<long>(n) < 12L * std::abs(m))
        throw DomainError("asymptotic_root(" + std::to_string(n) + ", " + std::to_string(m) +
                          ") is outside the range n >= 4, n >= 12|m|");
    constexpr double pi = std::numbers::pi;
    const double log2 = std::numbers::ln2;
    const double nd = n;
    std::complex<double> lead = std::polar(1.0, 2 * pi * m / nd);
    std::complex<double> second((1 + log2) * log2, 2 * pi * m * (1 + 2 * log2));
    return lead + log2 / nd + second / (2 * nd * nd);
}

ComplexBall newton_refine(const IntPolynomial& f, const ComplexBall& seed, Precision prec)
{
    if (f.is_zero() || f.deg() < 1)
        throw DomainError("Newton refinement needs a nonconstant polynomial");
    if (prec > precision_cap())
        throw PrecisionExhausted("root refinement", precision_cap());
    IntPolynomial df = f.derivative();
    Approximation approx = newton_iterate(f, df, seed, prec);
    return certify_point(f, df, approx, prec);
}

ComplexBall newton_refine(const IntPolynomial& f, std::complex<double> seed, Precision prec)
{
    return newton_refine(f, ComplexBall::from_complex(seed, kStartPrecision), prec);
}

ComplexBall refine_root(const IntPolynomial& f, const ComplexBall& enclosure, Precision prec)
{
    if (enclosure.precision() >= prec)
        return enclosure;
    ComplexBall refined = newton_refine(f, enclosure.midpoint(), prec);
    if (!enclosure.contains(refined))
        throw ContractionFailure("refinement of " + enclosure.to_string(12) + " left the original enclosure");
    return refined;
}

std::vector<ComplexBall> all_roots(const IntPolynomial& f, Precision prec)
{
    if (f.is_zero() || f.deg() < 1)
        throw DomainError("all_roots needs a nonconstant polynomial");
    if (!is_squarefree(f))
        throw DomainError(f.to_string() + " is not squarefree");
    std::vector<std::complex<double>> approx = approximate_roots(f);
    IntPolynomial df = f.derivative();
    std::vector<ComplexBall> roots;
    roots.reserve(approx.size());
    for (const auto& a : approx) {
        ComplexBall seed = ComplexBall::from_complex(a, kStartPrecision);
        ComplexBall root = certify_point(f, df, newton_iterate(f, df, seed, prec), prec);
        // A ball that meets the real axis may hide a real root; re-centre it
        // on the axis so the enclosure itself proves the root is real.
        if (!root.imag_part().is_positive() && !root.imag_part().is_negative()) {
            ComplexBall axis(root.re(), BigFloat(prec), Mag());
            try {
                ComplexBall real_root = certify_point(f, df, newton_iterate(f, df, axis, prec), prec);
                if (real_root.overlaps(root))
                    root = real_root;
            } catch (const Error&) {
            }
        }
        roots.push_back(std::move(root));
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!clearly_disjoint(roots[i], roots[j]) && roots[i].overlaps(roots[j]))
                throw ContractionFailure("root enclosures " + std::to_string(i) + " and " + std::to_string(j) +
                                         " of " + f.to_string() + " overlap");
    std::sort(roots.begin(), roots.end(), root_less);
    return roots;
}

RealBall dominant_real_root(const IntPolynomial& f, Precision prec)
{
    if (f.is_zero() || f.deg() < 1 || f.leading() < 0)
        throw DomainError("dominant_real_root needs a nonconstant polynomial with positive leading coefficient");
    if (f(1) >= 0)
        throw DomainError("no sign change on (1, bound): " + f.to_string() + " is nonnegative at 1");
    // f(1) < 0 and f -> +infinity give a root in (1, infinity); a Descartes
    // count of one proves it is the only one.
    if (f.sign_changes() != 1 && f.taylor_shift_one().sign_changes() != 1)
        throw DomainError("cannot prove a unique root of " + f.to_string() + " in (1, infinity)");
    mpz_class hi = 2;
    while (f(hi) <= 0)
        hi *= 2;
    RealBall lo_ball(1L, prec);
    RealBall hi_ball(hi, prec);
    for (int i = 0; i < 60; ++i) {
        RealBall mid = (lo_ball + hi_ball) * RealBall(mpq_class(1, 2), prec);
        RealBall value = evaluate(f, mid, prec);
        if (value.is_negative())
            lo_ball = mid;
        else if (value.is_positive())
            hi_ball = mid;
        else {
            lo_ball = mid;
            break;
        }
    }
    ComplexBall seed(lo_ball);
    ComplexBall root = newton_refine(f, ComplexBall(seed.re(), BigFloat(prec), Mag()), prec);
    if (!root.im().is_zero())
        throw ContractionFailure("real root enclosure drifted off the axis");
    RealBall beta = root.real_part();
    if (!certainly_less(RealBall(1L, prec), beta))
        throw ContractionFailure("could not separate the dominant root from 1");
    return beta;
}

NumberField make_number_field(const IntPolynomial& f, Irreducibility irreducible, Precision prec)
{
    if (!f.is_monic() || f.deg() < 2)
        throw DomainError("a number field needs a monic polynomial of degree >= 2, got " + f.to_string());
    std::vector<ComplexBall> roots = all_roots(f, prec);
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (!roots[i].im().is_zero() || !certainly_less(RealBall(1L, prec), roots[i].real_part()))
            continue;
        if (!best || mpfr_cmp(roots[i].re().get(), roots[*best].re().get()) > 0)
            best = i;
    }
    if (!best)
        throw DomainError(f.to_string() + " has no certified real root greater than 1");
    std::optional<mpz_class> floor_beta = roots[*best].real_part().floor();
    for (Precision p = 2 * prec; !floor_beta; p *= 2) {
        if (p > precision_cap())
            throw PrecisionExhausted("integer part of the real root", precision_cap());
        roots[*best] = refine_root(f, roots[*best], p);
        floor_beta = roots[*best].real_part().floor();
    }
    return NumberField(f, std::move(roots), *best, *floor_beta, irreducible);
}

std::size_t companion_conjugate_index(const NumberField& field)
{
    const IntPolynomial& f = field.min_poly();
    std::vector<std::size_t> upper;
    for (std::size_t i = 0; i < field.degree(); ++i)
        if (field.roots()[i].imag_part().is_positive())
            upper.push_back(i);
    if (upper.empty())
        throw DomainError("all roots of " + f.to_string() + " are real");
    std::vector<ComplexBall> roots = field.roots();
    ComplexBall beta = field.real_root();
    for (Precision p = roots.front().precision();; p *= 2) {
        if (p > precision_cap())
            throw PrecisionExhausted("closest conjugate", precision_cap());
        if (p > roots.front().precision()) {
            beta = refine_root(f, beta, p);
            for (std::size_t i : upper)
                roots[i] = refine_root(f, roots[i], p);
        }
        std::vector<RealBall> dist;
        for (std::size_t i : upper)
            dist.push_back(abs(roots[i] - beta));
        std::size_t best = 0;
        for (std::size_t k = 1; k < dist.size(); ++k)
            if (mpfr_cmp(dist[k].mid().get(), dist[best].mid().get()) < 0)
                best = k;
        bool strict = true;
        for (std::size_t k = 0; k < dist.size() && strict; ++k)
            if (k != best && !certainly_less(dist[best], dist[k]))
                strict = false;
        if (strict)
            return upper[best];
    }
}

std::size_t max_modulus_conjugate_index(const NumberField& field)
{
    const IntPolynomial& f = field.min_poly();
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < field.degree(); ++i)
        if (i != field.real_root_index() && !field.roots()[i].imag_part().is_negative())
            candidates.push_back(i);
    if (candidates.empty())
        throw DomainError(f.to_string() + " has no conjugate besides the real root");
    std::vector<ComplexBall> roots = field.roots();
    for (Precision p = roots.front().precision();; p *= 2) {
        if (p > precision_cap())
            throw PrecisionExhausted("largest conjugate", precision_cap());
        if (p > roots.front().precision())
            for (std::size_t i : candidates)
                roots[i] = refine_root(f, roots[i], p);
        std::vector<RealBall> mods;
        for (std::size_t i : candidates)
            mods.push_back(abs(roots[i]));
        std::size_t best = 0;
        for (std::size_t k = 1; k < mods.size(); ++k)
            if (mpfr_cmp(mods[k].mid().get(), mods[best].mid().get()) > 0)
                best = k;
        bool strict = true;
        for (std::size_t k = 0; k < mods.size() && strict; ++k)
            if (k != best && !certainly_less(mods[k], mods[best]))
                strict = false;
        if (strict)
            return candidates[best];
    }
}

std::optional<int> branch_of(unsigned n, const ComplexBall& root)
{
    if (n < 12)
        return std::nullopt;
    std::complex<double> z = root.to_complex();
    int limit = static_cast<int>(n / 12);
    std::optional<int> best;
    double best_distance = 0;
    for (int m = -limit; m <= limit; ++m) {
        double d = std::abs(z - asymptotic_root(n, m));
        if (!best || d < best_distance) {
            best = m;
            best_distance = d;
        }
    }
    // Only claim a branch when the root is much closer to it than the branches
    // are to each other.
    if (best_distance > std::numbers::pi / static_cast<double>(n))
        return std::nullopt;
    return best;
}

std::vector<BranchDeviation> branch_deviations(unsigned n, Precision prec)
{
    std::vector<ComplexBall> roots = all_roots(IntPolynomial::selmer(n), prec);
    std::vector<BranchDeviation> out;
    int limit = static_cast<int>(n / 12);
    for (int m = -limit; m <= limit; ++m) {
        std::complex<double> approx = asymptotic_root(n, m);
        ComplexBall a = ComplexBall::from_complex(approx, prec);
        std::size_t best = 0;
        for (std::size_t i = 1; i < roots.size(); ++i)
            if (std::abs(roots[i].to_complex() - approx) < std::abs(roots[best].to_complex() - approx))
                best = i;
        RealBall d = abs(roots[best] - a);
        out.push_back({m, approx, roots[best], mpfr_get_d(d.upper().get(), MPFR_RNDU)});
    }
    return out;
}

ComplexBall selmer_gamma(unsigned n, Precision prec)
{
    if (n < 2)
        throw DomainError("x^n - x - 1 needs n >= 2");
    std::complex<double> seed(1 + std::numbers::ln2 / n, 2 * std::numbers::pi / n);
    ComplexBall gamma = newton_refine(IntPolynomial::selmer(n), seed, prec);
    if (!gamma.imag_part().is_positive())
        throw ContractionFailure("Newton from the gamma seed left the upper half plane for n = " + std::to_string(n));
    return gamma;
}

RealBall selmer_beta(unsigned n, Precision prec) { return dominant_real_root(IntPolynomial::selmer(n), prec); }

EstResult verify_est(unsigned n)
{
    if (n < 6)
        throw DomainError("verify_est needs n >= 6");
    EstResult result;
    result.n = n;
    bool beta_pending = n >= 8;
    bool gamma_pending = true;
    for (Precision p = 128; beta_pending || gamma_pending; p *= 2) {
        if (p > precision_cap())
            break;
        result.precision = p;
        RealBall inv_n(mpq_class(1, n), p);
        RealBall log2 = const_log2(p);
        if (beta_pending) {
            RealBall approx = RealBall(1L, p) + log2 * inv_n;
            RealBall dev = abs(selmer_beta(n, p) - approx);
            RealBall bound(mpq_class(2, 3 * static_cast<unsigned long>(n) * n), p);
            if (certainly_less_equal(dev, bound))
                result.beta_ok = true;
            else if (certainly_less(bound, dev))
                result.beta_ok = false;
            if (result.beta_ok) {
                beta_pending = false;
                result.beta_margin = (bound - dev).to_double();
            }
        }
        if (gamma_pending) {
            RealBall two_pi = const_pi(p) * 2L;
            ComplexBall approx = make_complex(RealBall(1L, p) + log2 * inv_n, two_pi * inv_n);
            RealBall dev = abs(selmer_gamma(n, p) - approx);
            RealBall bound(mpq_class(24, static_cast<unsigned long>(n) * n), p);
            if (certainly_less_equal(dev, bound))
                result.gamma_ok = true;
            else if (certainly_less(bound, dev))
                result.gamma_ok = false;
            if (result.gamma_ok) {
                gamma_pending = false;
                result.gamma_margin = (bound - dev).to_double();
            }
        }
    }
    return result;
}

} // namespace betacert
