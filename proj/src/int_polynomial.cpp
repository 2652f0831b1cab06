#include "betacert/int_polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "betacert/errors.hpp"

namespace betacert {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    normalize();
}

void IntPolynomial::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

IntPolynomial IntPolynomial::monomial(const mpz_class& c, std::size_t k)
{
    std::vector<mpz_class> v(k + 1);
    v[k] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::selmer(unsigned n)
{
    if (n < 2)
        throw DomainError("x^n - x - 1 needs n >= 2");
    std::vector<mpz_class> v(n + 1);
    v[0] = -1;
    v[1] = -1;
    v[n] = 1;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::parse(std::string_view text)
{
    std::vector<mpz_class> v;
    std::string item;
    std::stringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (!item.empty() && item[0] == '+')
            item.erase(0, 1);
        mpz_class c;
        if (item.empty() || c.set_str(item, 10) != 0)
            throw DomainError("bad polynomial coefficient '" + item + "' in \"" + std::string(text) + "\"");
        v.push_back(c);
    }
    if (v.empty())
        throw DomainError("empty coefficient list");
    return IntPolynomial(std::move(v));
}

mpz_class IntPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

std::optional<std::size_t> IntPolynomial::degree() const
{
    if (coeffs_.empty())
        return std::nullopt;
    return coeffs_.size() - 1;
}

std::size_t IntPolynomial::deg() const
{
    if (coeffs_.empty())
        throw DomainError("degree of the zero polynomial");
    return coeffs_.size() - 1;
}

const mpz_class& IntPolynomial::leading() const
{
    if (coeffs_.empty())
        throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

bool IntPolynomial::is_monomial() const
{
    return std::count_if(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c != 0; }) == 1;
}

std::vector<std::size_t> IntPolynomial::support() const
{
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            s.push_back(i);
    return s;
}

IntPolynomial IntPolynomial::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<mpz_class> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d));
}

mpz_class IntPolynomial::operator()(const mpz_class& x) const
{
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::taylor_shift_one() const
{
    std::vector<mpz_class> a = coeffs_;
    std::size_t n = a.size();
    // Repeated synthetic division by (x - 1).
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j)
            a[j - 1] += a[j];
    return IntPolynomial(std::move(a));
}

std::size_t IntPolynomial::sign_changes() const
{
    std::size_t changes = 0;
    int last = 0;
    for (const auto& c : coeffs_) {
        int s = sgn(c);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

mpz_class IntPolynomial::content() const
{
    mpz_class g = 0;
    for (const auto& c : coeffs_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const
{
    if (is_zero())
        return {};
    mpz_class g = content();
    if (leading() < 0)
        g = -g;
    std::vector<mpz_class> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(v));
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    normalize();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    normalize();
    return *this;
}

IntPolynomial operator-(const IntPolynomial& a)
{
    std::vector<mpz_class> v(a.coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = -a.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const mpz_class& c)
{
    std::vector<mpz_class> v(a.coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = a.coeffs_[i] * c;
    return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const mpz_class& c = coeffs_[k];
        if (c == 0)
            continue;
        mpz_class a = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (a != 1 || k == 0)
            out += a.get_str();
        if (k >= 1)
            out += "x";
        if (k >= 2)
            out += "^" + std::to_string(k);
    }
    return out;
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero())
        throw DomainError("pseudo-remainder by the zero polynomial");
    std::vector<mpz_class> r = a.coeffs();
    const auto& bc = b.coeffs();
    std::size_t db = b.deg();
    mpz_class lb = b.leading();
    while (!r.empty() && r.size() - 1 >= db) {
        std::size_t shift = r.size() - 1 - db;
        mpz_class lr = r.back();
        for (auto& c : r)
            c *= lb;
        for (std::size_t j = 0; j <= db; ++j)
            r[j + shift] -= lr * bc[j];
        while (!r.empty() && r.back() == 0)
            r.pop_back();
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial remainder_monic(const IntPolynomial& a, const IntPolynomial& b)
{
    if (!b.is_monic())
        throw DomainError("remainder_monic needs a monic divisor");
    std::vector<mpz_class> r = a.coeffs();
    std::size_t db = b.deg();
    std::vector<std::size_t> low = b.support();
    low.pop_back();
    while (!r.empty() && r.size() - 1 >= db) {
        std::size_t shift = r.size() - 1 - db;
        mpz_class lr = r.back();
        r.pop_back();
        for (std::size_t j : low)
            r[j + shift] -= lr * b.coeffs()[j];
        while (!r.empty() && r.back() == 0)
            r.pop_back();
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b)
{
    IntPolynomial x = a.primitive_part();
    IntPolynomial y = b.primitive_part();
    if (x.is_zero())
        return y;
    if (y.is_zero())
        return x;
    if (x.deg() < y.deg())
        std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = pseudo_remainder(x, y).primitive_part();
        x = std::move(y);
        y = std::move(r);
    }
    return x.primitive_part();
}

namespace {

using Residues = std::vector<std::uint64_t>;

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p)
{
    std::uint64_t result = 1;
    std::uint64_t e = p - 2;
    while (e > 0) {
        if (e & 1U)
            result = result * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return result;
}

Residues reduce_mod(const IntPolynomial& f, std::uint64_t p)
{
    Residues r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
    while (!r.empty() && r.back() == 0)
        r.pop_back();
    return r;
}

// Degree of gcd(a, b) over F_p by the Euclidean algorithm.
std::size_t gcd_degree_mod(Residues a, Residues b, std::uint64_t p)
{
    while (!b.empty()) {
        std::uint64_t inv = inverse_mod(b.back(), p);
        while (a.size() >= b.size()) {
            std::uint64_t q = a.back() * inv % p;
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[j + shift] = (a[j + shift] + (p - q) * b[j]) % p;
            while (!a.empty() && a.back() == 0)
                a.pop_back();
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

} // namespace

bool is_squarefree(const IntPolynomial& p)
{
    if (p.is_zero())
        return false;
    if (p.deg() == 0)
        return true;
    // If the reduction mod a prime keeps its degree and is squarefree, so is p.
    for (std::uint64_t prime : {2147483647ULL, 2147483629ULL, 2147483587ULL}) {
        if (mpz_fdiv_ui(p.leading().get_mpz_t(), prime) == 0)
            continue;
        Residues f = reduce_mod(p, prime);
        Residues df = reduce_mod(p.derivative(), prime);
        if (df.size() + 1 == f.size() && gcd_degree_mod(f, df, prime) == 0)
            return true;
    }
    return gcd(p, p.derivative()).deg() == 0;
}

namespace {

template <typename Ball>
Ball power(const Ball& z, std::size_t e)
{
    if (e == 1)
        return z;
    Ball result = z;
    Ball base = z;
    bool first = true;
    while (e > 0) {
        if (e & 1U) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result;
}

RealBall scaled_add(const RealBall& acc, const mpz_class& c, Precision prec)
{
    return acc + RealBall(c, prec);
}

ComplexBall scaled_add(const ComplexBall& acc, const mpz_class& c, Precision) { return acc + c; }

template <typename Ball>
Ball sparse_horner(const IntPolynomial& p, const Ball& z, Precision prec)
{
    if (p.is_zero())
        return Ball(0L, prec);
    const auto& c = p.coeffs();
    std::vector<std::size_t> idx = p.support();
    Ball acc(c[idx.back()], prec);
    for (std::size_t k = idx.size() - 1; k-- > 0;) {
        acc = acc * power(z, idx[k + 1] - idx[k]);
        acc = scaled_add(acc, c[idx[k]], prec);
    }
    if (idx.front() > 0)
        acc = acc * power(z, idx.front());
    return acc;
}

} // namespace

ComplexBall evaluate(const IntPolynomial& p, const ComplexBall& z, Precision prec)
{
    return sparse_horner(p, z, prec);
}

RealBall evaluate(const IntPolynomial& p, const RealBall& x, Precision prec) { return sparse_horner(p, x, prec); }

} // namespace betacert
