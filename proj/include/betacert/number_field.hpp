#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "betacert/ball.hpp"
#include "betacert/int_polynomial.hpp"

namespace betacert {

/// Callers acknowledge that the defining polynomial is irreducible over Q.
/// Nothing in this library proves it. For x^n - x - 1 it is a classical result.
enum class Irreducibility { asserted };

/// Element a_0 + a_1 b + ... + a_{n-1} b^{n-1} of Z[b] = Z[x]/(F). Always
/// stored reduced with trailing zeros dropped, so equality is structural.
class FieldElement {
public:
    FieldElement(std::shared_ptr<const IntPolynomial> modulus, std::vector<mpz_class> coeffs);

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const IntPolynomial& modulus() const { return *modulus_; }
    const std::shared_ptr<const IntPolynomial>& modulus_ptr() const { return modulus_; }
    bool same_ring(const FieldElement& other) const;

    bool is_zero() const { return coeffs_.empty(); }
    /// The value if the element is a rational integer.
    std::optional<mpz_class> as_integer() const;
    IntPolynomial as_polynomial() const { return IntPolynomial(coeffs_); }

    /// this <- b * this - digit, reduced in place.
    void shift_subtract(const mpz_class& digit);

    FieldElement& operator+=(const FieldElement& other);
    FieldElement& operator-=(const FieldElement& other);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend bool operator==(const FieldElement& a, const FieldElement& b)
    {
        return a.same_ring(b) && a.coeffs_ == b.coeffs_;
    }

    std::size_t hash() const;

private:
    void reduce();
    void trim();

    std::shared_ptr<const IntPolynomial> modulus_;
    std::vector<mpz_class> coeffs_;
};

/// Degree-n field Q(b) presented by a monic polynomial, together with
/// certified disjoint enclosures of all n complex roots, sorted by
/// (real, imaginary) midpoint.
class NumberField {
public:
    NumberField(IntPolynomial min_poly, std::vector<ComplexBall> roots, std::size_t real_root_index,
                mpz_class floor_beta, Irreducibility);

    const IntPolynomial& min_poly() const { return *min_poly_; }
    const std::shared_ptr<const IntPolynomial>& modulus_ptr() const { return min_poly_; }
    std::size_t degree() const { return min_poly_->deg(); }
    const std::vector<ComplexBall>& roots() const { return roots_; }
    std::size_t real_root_index() const { return real_root_index_; }
    /// Enclosure of the distinguished real root b > 1.
    const ComplexBall& real_root() const { return roots_[real_root_index_]; }
    const mpz_class& floor_beta() const { return floor_beta_; }

    FieldElement element(std::vector<mpz_class> coeffs) const;
    FieldElement integer(const mpz_class& value) const;
    FieldElement one() const { return integer(1); }
    FieldElement generator() const;

private:
    std::shared_ptr<const IntPolynomial> min_poly_;
    std::vector<ComplexBall> roots_;
    std::size_t real_root_index_;
    mpz_class floor_beta_;
};

/// Canonical representative of p modulo the field's minimal polynomial.
FieldElement poly_reduce(const IntPolynomial& p, const NumberField& field);
FieldElement field_mul(const FieldElement& a, const FieldElement& b, const NumberField& field);
/// b x - digit, exactly; digit must lie in {0, ..., floor(b)}.
FieldElement orbit_step(const FieldElement& x, long digit, const NumberField& field);
bool is_equal(const FieldElement& a, const FieldElement& b);

/// Certified image of x under b -> root, by Horner evaluation at `prec` bits.
ComplexBall embed(const FieldElement& x, const ComplexBall& root, Precision prec);
RealBall embed_real(const FieldElement& x, const RealBall& root, Precision prec);

} // namespace betacert

template <>
struct std::hash<betacert::FieldElement> {
    std::size_t operator()(const betacert::FieldElement& x) const noexcept { return x.hash(); }
};
