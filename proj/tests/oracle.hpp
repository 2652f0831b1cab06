#pragma once

// Reference computations that share no code with the library: plain MPFR
// scalars at high precision, textbook Newton and Durand-Kerner, and the
// greedy expansion of 1 - 10^-150 standing in for the quasi-greedy
// expansion of one.

#include <complex>
#include <string>
#include <vector>

#include <mpfr.h>

namespace oracle {

inline constexpr mpfr_prec_t kBits = 1200;

class Real {
public:
    explicit Real(mpfr_prec_t bits = kBits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real& operator=(const Real& o)
    {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

// Largest real root of x^n - x - 1 on [1, 2]: bisection to a bracket, then
// Newton at full precision.
inline Real trinomial_root(unsigned n)
{
    auto f = [n](const Real& x) {
        Real y;
        mpfr_pow_ui(y.get(), x.get(), n, MPFR_RNDN);
        mpfr_sub(y.get(), y.get(), x.get(), MPFR_RNDN);
        mpfr_sub_ui(y.get(), y.get(), 1, MPFR_RNDN);
        return y;
    };
    Real lo, hi, mid;
    mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
    mpfr_set_ui(hi.get(), 2, MPFR_RNDN);
    for (int i = 0; i < 60; ++i) {
        mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
        if (mpfr_sgn(f(mid).get()) > 0)
            hi = mid;
        else
            lo = mid;
    }
    Real x = lo, fx, dfx, step;
    for (int i = 0; i < 20; ++i) {
        fx = f(x);
        mpfr_pow_ui(dfx.get(), x.get(), n - 1, MPFR_RNDN);
        mpfr_mul_ui(dfx.get(), dfx.get(), n, MPFR_RNDN);
        mpfr_sub_ui(dfx.get(), dfx.get(), 1, MPFR_RNDN);
        mpfr_div(step.get(), fx.get(), dfx.get(), MPFR_RNDN);
        mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    }
    return x;
}

// Greedy digits of 1 - 10^-150 in base beta. For the first few hundred
// digits these coincide with the quasi-greedy expansion of one.
inline std::vector<long> greedy_digits(const Real& beta, std::size_t count)
{
    Real x, eps;
    mpfr_set_ui(eps.get(), 10, MPFR_RNDN);
    mpfr_pow_si(eps.get(), eps.get(), -150, MPFR_RNDN);
    mpfr_ui_sub(x.get(), 1, eps.get(), MPFR_RNDN);
    std::vector<long> out;
    Real bx, fl;
    for (std::size_t i = 0; i < count; ++i) {
        mpfr_mul(bx.get(), beta.get(), x.get(), MPFR_RNDN);
        mpfr_floor(fl.get(), bx.get());
        long d = mpfr_get_si(fl.get(), MPFR_RNDN);
        out.push_back(d);
        mpfr_sub(x.get(), bx.get(), fl.get(), MPFR_RNDN);
    }
    return out;
}

inline std::vector<long> trinomial_digits(unsigned n, std::size_t count)
{
    return greedy_digits(trinomial_root(n), count);
}

// Smallest period q such that the word is q-periodic from its start.
inline std::size_t pure_period(const std::vector<long>& w)
{
    for (std::size_t q = 1; q < w.size(); ++q) {
        bool ok = true;
        for (std::size_t i = q; i < w.size() && ok; ++i)
            ok = w[i] == w[i - q];
        if (ok)
            return q;
    }
    return 0;
}

// All complex roots of a monic polynomial (ascending coefficients) by
// Durand-Kerner in long double.
inline std::vector<std::complex<long double>> durand_kerner(const std::vector<long double>& c)
{
    using C = std::complex<long double>;
    std::size_t n = c.size() - 1;
    std::vector<C> z(n);
    C seed(0.4L, 0.9L);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = std::pow(seed, static_cast<int>(i)) * 1.1L;
    auto eval = [&](C x) {
        C y = c[n];
        for (std::size_t i = n; i-- > 0;)
            y = y * x + c[i];
        return y;
    };
    for (int iter = 0; iter < 5000; ++iter) {
        long double moved = 0;
        for (std::size_t i = 0; i < n; ++i) {
            C den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            C step = eval(z[i]) / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-17L)
            break;
    }
    return z;
}

inline std::vector<std::complex<long double>> trinomial_roots(unsigned n)
{
    std::vector<long double> c(n + 1, 0.0L);
    c[0] = -1;
    c[1] = -1;
    c[n] = 1;
    return durand_kerner(c);
}

} // namespace oracle
