#include "betacert/bounds_verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <thread>

#include "betacert/beta_expansion.hpp"
#include "betacert/errors.hpp"
#include "betacert/root_engine.hpp"

namespace betacert {

namespace {

std::optional<unsigned> exact_log2(unsigned n)
{
    if (n == 0 || (n & (n - 1)) != 0)
        return std::nullopt;
    unsigned k = 0;
    while ((1U << k) != n)
        ++k;
    return k;
}

// n log n / log 2 as a ball.
RealBall n_log2_n(unsigned n, Precision prec)
{
    RealBall nb(static_cast<long>(n), prec);
    return nb * log(nb) / const_log2(prec);
}

double relative_slack(const RealBall& value, const RealBall& bound)
{
    return ((value - bound) / bound).to_double();
}

SweepRow make_row(unsigned n, Lemma lemma)
{
    SweepRow row;
    row.n = n;
    row.lemma = lemma;
    return row;
}

using RowCheck = std::function<SweepRow(unsigned, const SweepOptions&)>;

SweepReport sweep(Lemma lemma, unsigned n_lo, unsigned n_hi, const SweepOptions& options, const RowCheck& check)
{
    unsigned limit = lemma_lower_limit(lemma);
    if (n_lo < limit)
        throw DomainError(std::string(lemma_name(lemma)) + " is stated for n >= " + std::to_string(limit));
    if (n_hi < n_lo)
        throw DomainError("empty range " + std::to_string(n_lo) + ":" + std::to_string(n_hi));
    auto start = std::chrono::steady_clock::now();
    std::size_t count = n_hi - n_lo + 1;
    std::vector<SweepRow> rows(count);
    std::vector<std::exception_ptr> errors(count);
    // Largest n first: the expensive tail then overlaps with the cheap head.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            std::size_t slot = count - 1 - i;
            unsigned n = n_lo + static_cast<unsigned>(slot);
            auto t0 = std::chrono::steady_clock::now();
            try {
                rows[slot] = check(n, options);
            } catch (...) {
                errors[slot] = std::current_exception();
            }
            rows[slot].millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(count)));
    std::vector<std::thread> threads;
    for (unsigned j = 1; j < jobs; ++j)
        threads.emplace_back(worker);
    worker();
    for (auto& t : threads)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    SweepReport report;
    report.lemma = lemma;
    report.n_lo = n_lo;
    report.n_hi = n_hi;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        if (!row.pass)
            report.failures.push_back(row.n);
        report.min_margin = std::min(report.min_margin, row.margin);
    }
    report.rows = std::move(rows);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace

std::string_view lemma_name(Lemma lemma)
{
    switch (lemma) {
    case Lemma::est:
        return "est";
    case Lemma::nextone:
        return "nextone";
    case Lemma::ineq:
        return "ineq";
    case Lemma::abs:
        return "abs";
    }
    return "?";
}

std::optional<Lemma> parse_lemma(std::string_view name)
{
    for (Lemma l : {Lemma::est, Lemma::nextone, Lemma::ineq, Lemma::abs})
        if (lemma_name(l) == name)
            return l;
    return std::nullopt;
}

unsigned lemma_lower_limit(Lemma lemma)
{
    return lemma == Lemma::est || lemma == Lemma::ineq ? 6 : 8;
}

std::size_t first_return_formula(unsigned n, Precision prec)
{
    auto modulus = std::make_shared<const IntPolynomial>(IntPolynomial::selmer(n));
    for (Precision p = prec; p <= precision_cap(); p *= 2) {
        RealBall beta = selmer_beta(n, p);
        RealBall one(1L, p);
        RealBall l = log(one - one / beta) / (-log(beta));
        if (std::optional<mpz_class> f = l.floor())
            return f->get_ui() + 1;
        // b^j (1 - 1/b) = 1 makes the quotient the integer j exactly; that is
        // a question about Z[b], settled there.
        mpz_class j;
        mpfr_get_z(j.get_mpz_t(), l.upper().get(), MPFR_RNDD);
        if (j >= 1 && RealBall(j, p).overlaps(l)) {
            std::vector<mpz_class> c(j.get_ui() + 1);
            c[j.get_ui()] += 1;
            c[j.get_ui() - 1] -= 1;
            c[0] -= 1;
            if (FieldElement(modulus, std::move(c)).is_zero())
                return j.get_ui() + 1;
        }
    }
    throw PrecisionExhausted("integer part of log(1 - 1/b)/log(1/b) for n = " + std::to_string(n), precision_cap());
}

std::size_t first_return_orbit(unsigned n, Precision prec)
{
    auto modulus = std::make_shared<const IntPolynomial>(IntPolynomial::selmer(n));
    RealBall beta = selmer_beta(n, prec);
    std::optional<mpz_class> floor_beta = beta.floor();
    if (!floor_beta)
        throw PrecisionExhausted("integer part of the real root", prec);
    OrbitWalker walker(modulus, ComplexBall(beta), *floor_beta, kStartPrecision);
    double bound = 20 * n * std::log2(static_cast<double>(n)) + 100;
    while (walker.index() < bound) {
        long d = walker.advance();
        if (walker.index() >= 2 && d != 0)
            return walker.index();
    }
    throw DomainError("no return to a nonzero digit within " + std::to_string(walker.index()) + " steps");
}

std::size_t m1_index(unsigned n)
{
    if (std::optional<unsigned> k = exact_log2(n))
        return static_cast<std::size_t>(n) * *k;
    for (Precision p = 128; p <= precision_cap(); p *= 2)
        if (std::optional<mpz_class> f = n_log2_n(n, p).floor())
            return f->get_ui() + 1;
    throw PrecisionExhausted("ceil(n log n / log 2)", precision_cap());
}

SweepRow check_est_at(unsigned n, const SweepOptions&)
{
    SweepRow row = make_row(n, Lemma::est);
    EstResult est = verify_est(n);
    row.precision_bits = est.precision;
    bool beta_ok = n < 8 || est.beta_ok.value_or(false);
    bool gamma_ok = est.gamma_ok.value_or(false);
    row.pass = beta_ok && gamma_ok;
    double nn = static_cast<double>(n) * n;
    row.margin = est.gamma_margin / (24 / nn);
    if (n >= 8)
        row.margin = std::min(row.margin, est.beta_margin / (2 / (3 * nn)));
    if (!est.gamma_ok || (n >= 8 && !est.beta_ok))
        row.detail = "undecided at the precision cap";
    return row;
}

SweepRow check_next_one_at(unsigned n, const SweepOptions& options)
{
    SweepRow row = make_row(n, Lemma::nextone);
    std::size_t m0 = first_return_formula(n, options.precision);
    row.precision_bits = options.precision;
    if (std::optional<unsigned> k = exact_log2(n)) {
        double bound = static_cast<double>(n) * *k;
        row.pass = m0 >= static_cast<std::size_t>(n) * *k;
        row.margin = (static_cast<double>(m0) - bound) / bound;
    } else {
        for (Precision p = options.precision; p <= precision_cap(); p *= 2) {
            RealBall bound = n_log2_n(n, p);
            RealBall m(static_cast<long>(m0), p);
            row.precision_bits = p;
            if (certainly_less_equal(bound, m) || certainly_less(m, bound)) {
                row.pass = certainly_less_equal(bound, m);
                row.margin = relative_slack(m, bound);
                break;
            }
        }
    }
    row.detail = "m0=" + std::to_string(m0);
    if (options.orbit_cross_check) {
        std::size_t orbit_m0 = first_return_orbit(n, options.precision);
        if (orbit_m0 != m0) {
            row.pass = false;
            row.detail += " orbit m0=" + std::to_string(orbit_m0);
        }
    }
    return row;
}

SweepRow check_ineq_at(unsigned n, const SweepOptions& options)
{
    SweepRow row = make_row(n, Lemma::ineq);
    std::size_t m1 = m1_index(n);
    row.detail = "m1=" + std::to_string(m1) + " undecided";
    // One retry at four times the precision, then give up.
    for (Precision p : {options.precision, 4 * options.precision}) {
        row.precision_bits = p;
        ComplexBall g = selmer_gamma(n, p);
        if (!certainly_less(RealBall(1L, p), abs(g)))
            continue;
        ComplexBall power = pow(g, m1 - 2);
        RealBall first = abs(power * g * (g - 1L));
        RealBall second = abs(power);
        RealBall four(4L, p);
        RealBall half_n(mpq_class(n, 2), p);
        bool first_ok = certainly_less(four, first);
        bool second_ok = certainly_less(half_n, second);
        bool first_bad = certainly_less_equal(first, four);
        bool second_bad = certainly_less_equal(second, half_n);
        if ((first_ok || first_bad) && (second_ok || second_bad)) {
            row.pass = first_ok && second_ok;
            row.margin = std::min(relative_slack(first, four), relative_slack(second, half_n));
            row.detail = "m1=" + std::to_string(m1);
            return row;
        }
    }
    return row;
}

SweepRow check_abs_at(unsigned n, const SweepOptions& options)
{
    SweepRow row = make_row(n, Lemma::abs);
    for (Precision p = options.precision; p <= precision_cap(); p *= 2) {
        row.precision_bits = p;
        RealBall modulus = abs(selmer_gamma(n, p));
        if (!certainly_less(RealBall(1L, p), modulus))
            continue;
        RealBall value = RealBall(1L, p) / (modulus - 1L);
        RealBall bound(mpq_class(3 * n, 2), p);
        if (certainly_less_equal(value, bound) || certainly_less(bound, value)) {
            row.pass = certainly_less_equal(value, bound);
            row.margin = relative_slack(bound, value);
            return row;
        }
    }
    row.detail = "undecided at the precision cap";
    return row;
}

SweepReport check_est(unsigned n_lo, unsigned n_hi, const SweepOptions& options)
{
    return sweep(Lemma::est, n_lo, n_hi, options, check_est_at);
}

SweepReport check_next_one(unsigned n_lo, unsigned n_hi, const SweepOptions& options)
{
    return sweep(Lemma::nextone, n_lo, n_hi, options, check_next_one_at);
}

SweepReport check_ineq(unsigned n_lo, unsigned n_hi, const SweepOptions& options)
{
    return sweep(Lemma::ineq, n_lo, n_hi, options, check_ineq_at);
}

SweepReport check_abs(unsigned n_lo, unsigned n_hi, const SweepOptions& options)
{
    return sweep(Lemma::abs, n_lo, n_hi, options, check_abs_at);
}

SweepReport run_sweep(Lemma lemma, unsigned n_lo, unsigned n_hi, const SweepOptions& options)
{
    switch (lemma) {
    case Lemma::est:
        return check_est(n_lo, n_hi, options);
    case Lemma::nextone:
        return check_next_one(n_lo, n_hi, options);
    case Lemma::ineq:
        return check_ineq(n_lo, n_hi, options);
    case Lemma::abs:
        return check_abs(n_lo, n_hi, options);
    }
    throw DomainError("unknown sweep");
}

std::vector<SweepReport> sweep_all(unsigned n_lo, unsigned n_hi, const SweepOptions& options)
{
    std::vector<SweepReport> reports;
    for (Lemma lemma : {Lemma::est, Lemma::nextone, Lemma::ineq, Lemma::abs}) {
        unsigned lo = std::max(n_lo, lemma_lower_limit(lemma));
        if (lo <= n_hi)
            reports.push_back(run_sweep(lemma, lo, n_hi, options));
    }
    return reports;
}

} // namespace betacert
