#include "betacert/number_field.hpp"

#include "betacert/errors.hpp"

namespace betacert {

FieldElement::FieldElement(std::shared_ptr<const IntPolynomial> modulus, std::vector<mpz_class> coeffs)
    : modulus_(std::move(modulus)), coeffs_(std::move(coeffs))
{
    if (!modulus_ || !modulus_->is_monic() || modulus_->deg() < 1)
        throw DomainError("field elements need a monic modulus of positive degree");
    reduce();
}

bool FieldElement::same_ring(const FieldElement& other) const
{
    return modulus_ == other.modulus_ || *modulus_ == *other.modulus_;
}

void FieldElement::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

void FieldElement::reduce()
{
    trim();
    std::size_t n = modulus_->deg();
    if (coeffs_.size() <= n)
        return;
    *this = FieldElement(modulus_, remainder_monic(IntPolynomial(std::move(coeffs_)), *modulus_).coeffs());
}

std::optional<mpz_class> FieldElement::as_integer() const
{
    if (coeffs_.empty())
        return mpz_class(0);
    if (coeffs_.size() == 1)
        return coeffs_[0];
    return std::nullopt;
}

void FieldElement::shift_subtract(const mpz_class& digit)
{
    std::size_t n = modulus_->deg();
    if (!coeffs_.empty()) {
        coeffs_.insert(coeffs_.begin(), mpz_class(0));
        if (coeffs_.size() > n) {
            // b^n = -(m_0 + m_1 b + ... + m_{n-1} b^{n-1})
            mpz_class top = std::move(coeffs_.back());
            coeffs_.pop_back();
            const auto& m = modulus_->coeffs();
            for (std::size_t j = 0; j < n; ++j)
                if (m[j] != 0)
                    mpz_submul(coeffs_[j].get_mpz_t(), top.get_mpz_t(), m[j].get_mpz_t());
        }
    }
    if (digit != 0) {
        if (coeffs_.empty())
            coeffs_.emplace_back(0);
        coeffs_[0] -= digit;
    }
    trim();
}

FieldElement& FieldElement::operator+=(const FieldElement& other)
{
    if (!same_ring(other))
        throw FieldMismatch();
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other)
{
    if (!same_ring(other))
        throw FieldMismatch();
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

std::size_t FieldElement::hash() const
{
    std::size_t h = coeffs_.size() * 0x9e3779b97f4a7c15ULL;
    for (const auto& c : coeffs_) {
        std::size_t v = mpz_get_ui(c.get_mpz_t()) ^ (static_cast<std::size_t>(mpz_size(c.get_mpz_t())) << 48);
        if (sgn(c) < 0)
            v = ~v;
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

NumberField::NumberField(IntPolynomial min_poly, std::vector<ComplexBall> roots, std::size_t real_root_index,
                         mpz_class floor_beta, Irreducibility)
    : min_poly_(std::make_shared<const IntPolynomial>(std::move(min_poly))),
      roots_(std::move(roots)),
      real_root_index_(real_root_index),
      floor_beta_(std::move(floor_beta))
{
    if (!min_poly_->is_monic() || min_poly_->deg() < 2)
        throw DomainError("a number field needs a monic polynomial of degree >= 2");
    if (roots_.size() != min_poly_->deg())
        throw DomainError("root enclosure count does not match the degree");
    if (real_root_index_ >= roots_.size() || !real_root().im().is_zero())
        throw DomainError("distinguished root enclosure is not centred on the real axis");
    if (floor_beta_ < 1)
        throw DomainError("distinguished real root must exceed 1");
}

FieldElement NumberField::element(std::vector<mpz_class> coeffs) const
{
    return FieldElement(min_poly_, std::move(coeffs));
}

FieldElement NumberField::integer(const mpz_class& value) const { return FieldElement(min_poly_, {value}); }

FieldElement NumberField::generator() const { return FieldElement(min_poly_, {0, 1}); }

FieldElement poly_reduce(const IntPolynomial& p, const NumberField& field) { return field.element(p.coeffs()); }

FieldElement field_mul(const FieldElement& a, const FieldElement& b, const NumberField& field)
{
    if (!a.same_ring(b) || *a.modulus_ptr() != field.min_poly())
        throw FieldMismatch();
    return field.element((a.as_polynomial() * b.as_polynomial()).coeffs());
}

FieldElement orbit_step(const FieldElement& x, long digit, const NumberField& field)
{
    if (*x.modulus_ptr() != field.min_poly())
        throw FieldMismatch();
    if (digit < 0 || field.floor_beta() < digit)
        throw DomainError("digit " + std::to_string(digit) + " outside the alphabet {0, ..., floor(beta)}");
    FieldElement y = x;
    y.shift_subtract(digit);
    return y;
}

bool is_equal(const FieldElement& a, const FieldElement& b) { return a == b; }

ComplexBall embed(const FieldElement& x, const ComplexBall& root, Precision prec)
{
    return evaluate(x.as_polynomial(), root, prec);
}

RealBall embed_real(const FieldElement& x, const RealBall& root, Precision prec)
{
    return evaluate(x.as_polynomial(), root, prec);
}

} // namespace betacert
