#pragma once

// Finite-range sweeps over x^n - x - 1 for the numerical facts the
// non-Parry argument relies on for small n:
//
//   est      |b_n - (1 + log 2/n)| <= 2/(3n^2)                 (n >= 8)
//            |g_n - (1 + (log 2 + 2 pi i)/n)| <= 24/n^2        (n >= 6)
//   nextone  m0 >= n log n / log 2                             (n >= 8)
//   ineq     |g_n^{m1} (1 - 1/g_n)| > 4 and |g_n^{m1-2}| > n/2
//            at m1 = ceil(n log n / log 2)                     (n >= 6)
//   abs      1/(|g_n| - 1) <= 3n/2                             (n >= 8)
//
// Every comparison is made on certified enclosures.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "betacert/ball.hpp"

namespace betacert {

enum class Lemma { est, nextone, ineq, abs };

std::string_view lemma_name(Lemma lemma);
std::optional<Lemma> parse_lemma(std::string_view name);
/// Smallest n each check is stated for.
unsigned lemma_lower_limit(Lemma lemma);

struct SweepRow {
    unsigned n = 0;
    Lemma lemma = Lemma::est;
    bool pass = false;
    /// Smallest relative slack of the inequalities checked at this n.
    double margin = 0;
    Precision precision_bits = 0;
    double millis = 0;
    std::string detail;
};

struct SweepReport {
    Lemma lemma = Lemma::est;
    unsigned n_lo = 0;
    unsigned n_hi = 0;
    /// Ascending.
    std::vector<unsigned> failures;
    /// Minimum of the per-n margins.
    double min_margin = 0;
    double wall_seconds = 0;
    /// One row per n, ascending.
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    unsigned jobs = 1;
    /// Base working precision; checks refine upward from here.
    Precision precision = 128;
    /// nextone: also walk the exact orbit to its first return and require
    /// agreement with the closed-form m0.
    bool orbit_cross_check = true;
};

/// m0 = floor(log(1 - 1/b_n) / log(1/b_n)) + 1, the index of the second
/// nonzero digit of d_b(1-0) for x^n - x - 1.
std::size_t first_return_formula(unsigned n, Precision prec = 128);
/// The same index from the exact orbit.
std::size_t first_return_orbit(unsigned n, Precision prec = 128);
/// ceil(n log n / log 2), exactly.
std::size_t m1_index(unsigned n);

SweepRow check_est_at(unsigned n, const SweepOptions& options = {});
SweepRow check_next_one_at(unsigned n, const SweepOptions& options = {});
SweepRow check_ineq_at(unsigned n, const SweepOptions& options = {});
SweepRow check_abs_at(unsigned n, const SweepOptions& options = {});

SweepReport check_est(unsigned n_lo, unsigned n_hi, const SweepOptions& options = {});
SweepReport check_next_one(unsigned n_lo, unsigned n_hi, const SweepOptions& options = {});
SweepReport check_ineq(unsigned n_lo, unsigned n_hi, const SweepOptions& options = {});
SweepReport check_abs(unsigned n_lo, unsigned n_hi, const SweepOptions& options = {});
SweepReport run_sweep(Lemma lemma, unsigned n_lo, unsigned n_hi, const SweepOptions& options = {});

/// All four sweeps over [n_lo, n_hi], each clipped to where it is stated.
/// Sweeps whose clipped range is empty are omitted.
std::vector<SweepReport> sweep_all(unsigned n_lo, unsigned n_hi, const SweepOptions& options = {});

} // namespace betacert
