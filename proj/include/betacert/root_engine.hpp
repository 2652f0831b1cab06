#pragma once

// Certified complex roots of integer polynomials.
//
// Approximations come from Newton or Aberth-Ehrlich iteration in floating
// point; every returned enclosure is then proved with a Krawczyk test, which
// guarantees exactly one root of F inside the ball.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "betacert/ball.hpp"
#include "betacert/int_polynomial.hpp"
#include "betacert/number_field.hpp"

namespace betacert {

/// Leading-order approximation 1 + (log 2 + 2 pi i m)/n of the root of
/// x^n - x - 1 on branch m. Requires n >= 4 and n >= 12|m|.
std::complex<double> asymptotic_root(unsigned n, int m);

/// Newton iteration from `seed` followed by Krawczyk certification. The
/// result contains exactly one root of f.
ComplexBall newton_refine(const IntPolynomial& f, const ComplexBall& seed, Precision prec);
ComplexBall newton_refine(const IntPolynomial& f, std::complex<double> seed, Precision prec);

/// Tighter enclosure, at `prec` bits, of the unique root inside `enclosure`.
ComplexBall refine_root(const IntPolynomial& f, const ComplexBall& enclosure, Precision prec);

/// All roots of a squarefree f as pairwise disjoint certified balls, sorted
/// by (real, imaginary) midpoint.
std::vector<ComplexBall> all_roots(const IntPolynomial& f, Precision prec = 128);

/// The unique real root of f in (1, infinity). Requires f(1) < 0 and a
/// Descartes count of one on f(x) or f(x + 1).
RealBall dominant_real_root(const IntPolynomial& f, Precision prec = 128);

/// Builds the field for an irreducible monic f with a real root > 1. The
/// distinguished root is the largest real root.
NumberField make_number_field(const IntPolynomial& f, Irreducibility irreducible, Precision prec = 128);

/// Index of the root with positive imaginary part closest to the real root.
std::size_t companion_conjugate_index(const NumberField& field);
/// Index of the largest-modulus root other than the real root, in the upper
/// half plane when it is not real.
std::size_t max_modulus_conjugate_index(const NumberField& field);

/// Branch m whose asymptotic approximation a root of x^n - x - 1 lies
/// closest to, for the branches where the approximation is meaningful.
std::optional<int> branch_of(unsigned n, const ComplexBall& root);

struct BranchDeviation {
    int m = 0;
    std::complex<double> approx;
    ComplexBall root;
    /// Upper bound for |root - approx|.
    double deviation = 0;
};

/// For each branch |m| <= n/12 of x^n - x - 1, the certified root nearest
/// asymptotic_root(n, m) and its distance from it.
std::vector<BranchDeviation> branch_deviations(unsigned n, Precision prec = 128);

/// The root of x^n - x - 1 nearest 1 + (log 2 + 2 pi i)/n, found by Newton
/// iteration from that seed. For n >= 6 this is the complex root closest to
/// the real root.
ComplexBall selmer_gamma(unsigned n, Precision prec = 128);
RealBall selmer_beta(unsigned n, Precision prec = 128);

struct EstResult {
    unsigned n = 0;
    /// |beta - (1 + log 2/n)| <= 2/(3 n^2); empty for n < 8 or when the
    /// precision cap was reached without a decision.
    std::optional<bool> beta_ok;
    /// |gamma - (1 + (log 2 + 2 pi i)/n)| <= 24/n^2; empty for n < 6.
    std::optional<bool> gamma_ok;
    double beta_margin = 0;
    double gamma_margin = 0;
    /// Working precision at which the last decision was made.
    Precision precision = 0;
};

EstResult verify_est(unsigned n);

} // namespace betacert
