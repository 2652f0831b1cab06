#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "betacert/ball.hpp"

namespace betacert {

/// Dense polynomial with arbitrary-size integer coefficients; coeffs()[i] is
/// the coefficient of x^i. Storage never carries a zero leading coefficient,
/// so the zero polynomial has no coefficients at all.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial monomial(const mpz_class& c, std::size_t k);
    /// x^n - x - 1.
    static IntPolynomial selmer(unsigned n);
    /// Parses "a0,a1,...,ad" (ascending degree, signed decimal integers).
    static IntPolynomial parse(std::string_view text);

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    /// Coefficient of x^i (zero past the degree).
    mpz_class coeff(std::size_t i) const;
    std::optional<std::size_t> degree() const;
    /// Degree of a polynomial known to be nonzero.
    std::size_t deg() const;
    bool is_zero() const { return coeffs_.empty(); }
    const mpz_class& leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }
    bool is_monomial() const;
    /// Indices of nonzero coefficients, ascending.
    std::vector<std::size_t> support() const;

    IntPolynomial derivative() const;
    mpz_class operator()(const mpz_class& x) const;
    /// p(x + 1), computed exactly.
    IntPolynomial taylor_shift_one() const;
    /// Sign changes in the coefficient sequence (zeros skipped).
    std::size_t sign_changes() const;
    mpz_class content() const;
    IntPolynomial primitive_part() const;

    IntPolynomial& operator+=(const IntPolynomial& other);
    IntPolynomial& operator-=(const IntPolynomial& other);
    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator-(const IntPolynomial& a);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const mpz_class& c);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Human-readable form such as "x^4 - x - 1".
    std::string to_string() const;

private:
    void normalize();
    std::vector<mpz_class> coeffs_;
};

/// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
/// Remainder of a modulo a monic b.
IntPolynomial remainder_monic(const IntPolynomial& a, const IntPolynomial& b);
/// Primitive gcd over Z[x] (positive leading coefficient), by the primitive
/// remainder sequence.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
/// gcd(p, p') is a constant.
bool is_squarefree(const IntPolynomial& p);

/// Certified value of p at z, evaluated with sparse Horner at `prec` bits.
ComplexBall evaluate(const IntPolynomial& p, const ComplexBall& z, Precision prec);
RealBall evaluate(const IntPolynomial& p, const RealBall& x, Precision prec);

} // namespace betacert
