#pragma once

// Midpoint-radius enclosures of real and complex numbers.
//
// Midpoints are MPFR floats at a working precision; radii are kept in a
// separate low-precision MPFR value that is only ever rounded upward. Every
// operation adds a bound on its own rounding error to the radius, so the true
// value is always inside the returned ball.

#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace betacert {

using Precision = mpfr_prec_t;

inline constexpr Precision kStartPrecision = 64;

class BigFloat {
public:
    explicit BigFloat(Precision prec = kStartPrecision);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    Precision precision() const { return mpfr_get_prec(value_); }

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    /// Exact value as a rational (every finite binary float is one).
    mpq_class to_rational() const;

    /// Scientific notation with `digits` significant decimal digits.
    std::string to_string(int digits) const;

private:
    mpfr_t value_;
};

/// Nonnegative error bound. All arithmetic rounds toward +infinity.
class Mag {
public:
    static constexpr Precision kBits = 32;

    Mag();
    Mag(const Mag& other);
    Mag(Mag&& other) noexcept;
    Mag& operator=(const Mag& other);
    Mag& operator=(Mag&& other) noexcept;
    ~Mag();

    static Mag from_double(double v);
    static Mag pow2(mpfr_exp_t e);
    /// Upper bound for |x|.
    static Mag abs_upper(mpfr_srcptr x);
    /// Upper bound for sqrt(re^2 + im^2).
    static Mag hypot_upper(mpfr_srcptr re, mpfr_srcptr im);

    mpfr_srcptr get() const { return value_; }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDU); }

    Mag& operator+=(const Mag& other);
    Mag& operator*=(const Mag& other);
    void add_pow2(mpfr_exp_t e);
    void mul_2si(long e);

    friend Mag operator+(Mag a, const Mag& b) { return a += b; }
    friend Mag operator*(Mag a, const Mag& b) { return a *= b; }
    friend bool operator<(const Mag& a, const Mag& b) { return mpfr_less_p(a.value_, b.value_) != 0; }

private:
    mpfr_t value_;
};

/// Accumulate the rounding error of an MPFR operation that produced `result`
/// with ternary value `ternary`.
void add_rounding_error(Mag& rad, int ternary, mpfr_srcptr result);

class RealBall {
public:
    explicit RealBall(Precision prec = kStartPrecision);
    RealBall(long value, Precision prec);
    RealBall(const mpz_class& value, Precision prec);
    RealBall(const mpq_class& value, Precision prec);
    RealBall(BigFloat mid, Mag rad);

    /// Smallest representable ball containing [lo, hi].
    static RealBall from_endpoints(const BigFloat& lo, const BigFloat& hi, Precision prec);

    const BigFloat& mid() const { return mid_; }
    const Mag& rad() const { return rad_; }
    Precision precision() const { return mid_.precision(); }

    BigFloat lower() const;
    BigFloat upper() const;
    mpq_class lower_rational() const { return lower().to_rational(); }
    mpq_class upper_rational() const { return upper().to_rational(); }

    bool is_exact() const { return rad_.is_zero(); }
    bool is_positive() const;
    bool is_negative() const;
    bool is_nonnegative() const;
    bool contains_zero() const { return !is_positive() && !is_negative(); }
    bool contains(const mpq_class& q) const;
    bool overlaps(const RealBall& other) const;

    /// Integer part if it is the same for every point of the ball.
    std::optional<mpz_class> floor() const;

    double to_double() const { return mid_.to_double(); }
    std::string to_string(int digits = 20) const;

private:
    BigFloat mid_;
    Mag rad_;
};

RealBall operator-(const RealBall& a);
RealBall operator+(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a, const RealBall& b);
RealBall operator*(const RealBall& a, const RealBall& b);
RealBall operator/(const RealBall& a, const RealBall& b);
RealBall operator+(const RealBall& a, long b);
RealBall operator-(const RealBall& a, long b);
RealBall operator*(const RealBall& a, long b);

RealBall log(const RealBall& x);
RealBall exp(const RealBall& x);
RealBall sqrt(const RealBall& x);
RealBall abs(const RealBall& x);
RealBall const_pi(Precision prec);
RealBall const_log2(Precision prec);

/// True iff a < b holds for every pair of points in the balls.
bool certainly_less(const RealBall& a, const RealBall& b);
/// True iff a <= b holds for every pair of points in the balls.
bool certainly_less_equal(const RealBall& a, const RealBall& b);

class ComplexBall {
public:
    explicit ComplexBall(Precision prec = kStartPrecision);
    ComplexBall(long value, Precision prec);
    ComplexBall(const mpz_class& value, Precision prec);
    ComplexBall(BigFloat re, BigFloat im, Mag rad);
    explicit ComplexBall(const RealBall& real);

    /// Exact when prec >= 53.
    static ComplexBall from_complex(std::complex<double> z, Precision prec);

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    const Mag& rad() const { return rad_; }
    Precision precision() const { return re_.precision(); }

    RealBall real_part() const { return RealBall(re_, rad_); }
    RealBall imag_part() const { return RealBall(im_, rad_); }

    /// Same centre, radius dropped; the exact complex number at the midpoint.
    ComplexBall midpoint() const;
    ComplexBall with_radius(const Mag& rad) const;

    bool is_exact() const { return rad_.is_zero(); }
    bool contains_zero() const;
    bool overlaps(const ComplexBall& other) const;
    /// True iff `inner` lies in the open interior of this ball.
    bool contains_interior(const ComplexBall& inner) const;
    bool contains(const ComplexBall& inner) const;

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
    std::string to_string(int digits = 20) const;

private:
    BigFloat re_;
    BigFloat im_;
    Mag rad_;
};

ComplexBall operator-(const ComplexBall& a);
ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const mpz_class& b);
ComplexBall operator+(const ComplexBall& a, const mpz_class& b);
ComplexBall operator-(const ComplexBall& a, long b);

/// Ball containing every x + iy with x in `re` and y in `im`.
ComplexBall make_complex(const RealBall& re, const RealBall& im);
/// The midpoint rounded to `prec` bits, radius zero (a new exact point).
ComplexBall round_point(const ComplexBall& z, Precision prec);
ComplexBall conj(const ComplexBall& z);
ComplexBall pow(const ComplexBall& z, unsigned long e);
RealBall abs(const ComplexBall& z);
/// e^{it} for a real ball t.
ComplexBall exp_i(const RealBall& t);
/// Point approximation of a/b (radius zero). Only for heuristics such as
/// Newton steps and preconditioners; never a certified quotient.
ComplexBall approx_div(const ComplexBall& a, const ComplexBall& b);

} // namespace betacert
