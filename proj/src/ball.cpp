#include "betacert/ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "betacert/errors.hpp"

namespace betacert {

Precision precision_cap()
{
    static const Precision cap = [] {
        const char* env = std::getenv("BETACERT_PRECISION_CAP");
        if (env != nullptr) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v >= 64)
                return static_cast<Precision>(v);
        }
        return static_cast<Precision>(1) << 16;
    }();
    return cap;
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(Precision prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other)
{
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept
{
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

mpq_class BigFloat::to_rational() const
{
    if (!mpfr_number_p(value_))
        throw std::domain_error("non-finite float has no rational value");
    if (mpfr_zero_p(value_))
        return mpq_class(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
    mpq_class q(mant);
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    q.canonicalize();
    return q;
}

std::string BigFloat::to_string(int digits) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), value_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

// --------------------------------------------------------------------- Mag

Mag::Mag()
{
    mpfr_init2(value_, kBits);
    mpfr_set_zero(value_, 1);
}

Mag::Mag(const Mag& other)
{
    mpfr_init2(value_, kBits);
    mpfr_set(value_, other.value_, MPFR_RNDU);
}

Mag::Mag(Mag&& other) noexcept
{
    mpfr_init2(value_, kBits);
    mpfr_swap(value_, other.value_);
}

Mag& Mag::operator=(const Mag& other)
{
    mpfr_set(value_, other.value_, MPFR_RNDU);
    return *this;
}

Mag& Mag::operator=(Mag&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

Mag::~Mag() { mpfr_clear(value_); }

Mag Mag::from_double(double v)
{
    Mag m;
    mpfr_set_d(m.value_, v < 0 ? -v : v, MPFR_RNDU);
    return m;
}

Mag Mag::pow2(mpfr_exp_t e)
{
    Mag m;
    mpfr_set_ui_2exp(m.value_, 1, e, MPFR_RNDU);
    return m;
}

Mag Mag::abs_upper(mpfr_srcptr x)
{
    Mag m;
    mpfr_abs(m.value_, x, MPFR_RNDU);
    return m;
}

Mag Mag::hypot_upper(mpfr_srcptr re, mpfr_srcptr im)
{
    Mag m;
    if (mpfr_zero_p(im))
        mpfr_abs(m.value_, re, MPFR_RNDU);
    else if (mpfr_zero_p(re))
        mpfr_abs(m.value_, im, MPFR_RNDU);
    else
        mpfr_hypot(m.value_, re, im, MPFR_RNDU);
    return m;
}

Mag& Mag::operator+=(const Mag& other)
{
    mpfr_add(value_, value_, other.value_, MPFR_RNDU);
    return *this;
}

Mag& Mag::operator*=(const Mag& other)
{
    mpfr_mul(value_, value_, other.value_, MPFR_RNDU);
    return *this;
}

void Mag::add_pow2(mpfr_exp_t e)
{
    mpfr_t t;
    mpfr_init2(t, kBits);
    mpfr_set_ui_2exp(t, 1, e, MPFR_RNDU);
    mpfr_add(value_, value_, t, MPFR_RNDU);
    mpfr_clear(t);
}

void Mag::mul_2si(long e) { mpfr_mul_2si(value_, value_, e, MPFR_RNDU); }

void add_rounding_error(Mag& rad, int ternary, mpfr_srcptr result)
{
    if (ternary == 0)
        return;
    if (!mpfr_number_p(result))
        throw std::overflow_error("ball arithmetic produced a non-finite midpoint");
    if (mpfr_zero_p(result))
        rad.add_pow2(mpfr_get_emin());
    else
        rad.add_pow2(mpfr_get_exp(result) - mpfr_get_prec(result));
}

namespace {

Precision max_prec(Precision a, Precision b) { return a > b ? a : b; }

// Upper bound of a/b for nonnegative Mag-like inputs where `den` is a
// lower bound already.
Mag mag_div(const Mag& num, mpfr_srcptr den_lower)
{
    Mag out;
    mpfr_t t;
    mpfr_init2(t, Mag::kBits);
    mpfr_div(t, num.get(), den_lower, MPFR_RNDU);
    out = Mag::abs_upper(t);
    mpfr_clear(t);
    return out;
}

// Lower bound of |x| - r (may be negative).
void abs_minus_lower(mpfr_ptr out, mpfr_srcptr x, const Mag& r)
{
    mpfr_abs(out, x, MPFR_RNDD);
    mpfr_sub(out, out, r.get(), MPFR_RNDD);
}

BigFloat mag_float(const Mag& m)
{
    BigFloat r(Mag::kBits);
    mpfr_set(r.get(), m.get(), MPFR_RNDU);
    return r;
}

mpq_class mag_rational(const Mag& m) { return mag_float(m).to_rational(); }

std::string mag_string(const Mag& m) { return mag_float(m).to_string(3); }

} // namespace

// ---------------------------------------------------------------- RealBall

RealBall::RealBall(Precision prec) : mid_(prec) {}

RealBall::RealBall(long value, Precision prec) : mid_(prec)
{
    add_rounding_error(rad_, mpfr_set_si(mid_.get(), value, MPFR_RNDN), mid_.get());
}

RealBall::RealBall(const mpz_class& value, Precision prec) : mid_(prec)
{
    add_rounding_error(rad_, mpfr_set_z(mid_.get(), value.get_mpz_t(), MPFR_RNDN), mid_.get());
}

RealBall::RealBall(const mpq_class& value, Precision prec) : mid_(prec)
{
    add_rounding_error(rad_, mpfr_set_q(mid_.get(), value.get_mpq_t(), MPFR_RNDN), mid_.get());
}

RealBall::RealBall(BigFloat mid, Mag rad) : mid_(std::move(mid)), rad_(std::move(rad)) {}

RealBall RealBall::from_endpoints(const BigFloat& lo, const BigFloat& hi, Precision prec)
{
    BigFloat mid(prec);
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    mpfr_t a, b;
    mpfr_init2(a, Mag::kBits);
    mpfr_init2(b, Mag::kBits);
    mpfr_sub(a, hi.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(b, mid.get(), lo.get(), MPFR_RNDU);
    if (mpfr_less_p(a, b))
        mpfr_swap(a, b);
    if (mpfr_sgn(a) < 0)
        mpfr_set_zero(a, 1);
    Mag rad = Mag::abs_upper(a);
    mpfr_clear(a);
    mpfr_clear(b);
    return RealBall(std::move(mid), std::move(rad));
}

BigFloat RealBall::lower() const
{
    BigFloat out(precision());
    mpfr_sub(out.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return out;
}

BigFloat RealBall::upper() const
{
    BigFloat out(precision());
    mpfr_add(out.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return out;
}

bool RealBall::is_positive() const
{
    return mpfr_sgn(mid_.get()) > 0 && mpfr_cmp(mid_.get(), rad_.get()) > 0;
}

bool RealBall::is_negative() const
{
    return mpfr_sgn(mid_.get()) < 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

bool RealBall::is_nonnegative() const
{
    return mpfr_sgn(mid_.get()) >= 0 && mpfr_cmp(mid_.get(), rad_.get()) >= 0;
}

bool RealBall::contains(const mpq_class& q) const
{
    mpq_class d = q - mid_.to_rational();
    if (d < 0)
        d = -d;
    return d <= mag_rational(rad_);
}

bool RealBall::overlaps(const RealBall& other) const
{
    ComplexBall a(*this), b(other);
    return a.overlaps(b);
}

std::optional<mpz_class> RealBall::floor() const
{
    BigFloat lo = lower();
    BigFloat hi = upper();
    mpz_class f;
    mpfr_get_z(f.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpz_class next = f + 1;
    if (mpfr_cmp_z(hi.get(), next.get_mpz_t()) < 0)
        return f;
    return std::nullopt;
}

std::string RealBall::to_string(int digits) const
{
    return "[" + mid_.to_string(digits) + " +/- " + mag_string(rad_) + "]";
}

RealBall operator-(const RealBall& a)
{
    BigFloat m(a.precision());
    mpfr_neg(m.get(), a.mid().get(), MPFR_RNDN);
    return RealBall(std::move(m), a.rad());
}

RealBall operator+(const RealBall& a, const RealBall& b)
{
    Precision p = max_prec(a.precision(), b.precision());
    BigFloat m(p);
    Mag rad = a.rad() + b.rad();
    add_rounding_error(rad, mpfr_add(m.get(), a.mid().get(), b.mid().get(), MPFR_RNDN), m.get());
    return RealBall(std::move(m), std::move(rad));
}

RealBall operator-(const RealBall& a, const RealBall& b)
{
    Precision p = max_prec(a.precision(), b.precision());
    BigFloat m(p);
    Mag rad = a.rad() + b.rad();
    add_rounding_error(rad, mpfr_sub(m.get(), a.mid().get(), b.mid().get(), MPFR_RNDN), m.get());
    return RealBall(std::move(m), std::move(rad));
}

RealBall operator*(const RealBall& a, const RealBall& b)
{
    Precision p = max_prec(a.precision(), b.precision());
    BigFloat m(p);
    Mag rad = Mag::abs_upper(a.mid().get()) * b.rad();
    rad += Mag::abs_upper(b.mid().get()) * a.rad();
    rad += a.rad() * b.rad();
    add_rounding_error(rad, mpfr_mul(m.get(), a.mid().get(), b.mid().get(), MPFR_RNDN), m.get());
    return RealBall(std::move(m), std::move(rad));
}

RealBall operator/(const RealBall& a, const RealBall& b)
{
    if (b.contains_zero())
        throw std::domain_error("division by a ball containing zero");
    Precision p = max_prec(a.precision(), b.precision());
    BigFloat q(p);
    Mag err;
    add_rounding_error(err, mpfr_div(q.get(), a.mid().get(), b.mid().get(), MPFR_RNDN), q.get());
    Mag rad = err;
    if (!a.rad().is_zero() || !b.rad().is_zero()) {
        Mag num = a.rad() + (Mag::abs_upper(q.get()) + err) * b.rad();
        mpfr_t den;
        mpfr_init2(den, Mag::kBits);
        abs_minus_lower(den, b.mid().get(), b.rad());
        rad += mag_div(num, den);
        mpfr_clear(den);
    }
    return RealBall(std::move(q), std::move(rad));
}

RealBall operator+(const RealBall& a, long b) { return a + RealBall(b, a.precision()); }
RealBall operator-(const RealBall& a, long b) { return a - RealBall(b, a.precision()); }

RealBall operator*(const RealBall& a, long b)
{
    BigFloat m(a.precision());
    Mag rad = a.rad() * Mag::from_double(static_cast<double>(b));
    add_rounding_error(rad, mpfr_mul_si(m.get(), a.mid().get(), b, MPFR_RNDN), m.get());
    return RealBall(std::move(m), std::move(rad));
}

RealBall log(const RealBall& x)
{
    if (!x.is_positive())
        throw std::domain_error("log of a ball not certainly positive");
    Precision p = x.precision();
    BigFloat lo = x.lower(), hi = x.upper();
    BigFloat llo(p), lhi(p);
    mpfr_log(llo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(lhi.get(), hi.get(), MPFR_RNDU);
    return RealBall::from_endpoints(llo, lhi, p);
}

RealBall exp(const RealBall& x)
{
    Precision p = x.precision();
    BigFloat lo = x.lower(), hi = x.upper();
    BigFloat elo(p), ehi(p);
    mpfr_exp(elo.get(), lo.get(), MPFR_RNDD);
    mpfr_exp(ehi.get(), hi.get(), MPFR_RNDU);
    return RealBall::from_endpoints(elo, ehi, p);
}

RealBall sqrt(const RealBall& x)
{
    if (!x.is_nonnegative())
        throw std::domain_error("sqrt of a ball not certainly nonnegative");
    Precision p = x.precision();
    BigFloat lo = x.lower(), hi = x.upper();
    if (lo.sign() < 0)
        mpfr_set_zero(lo.get(), 1);
    BigFloat slo(p), shi(p);
    mpfr_sqrt(slo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(shi.get(), hi.get(), MPFR_RNDU);
    return RealBall::from_endpoints(slo, shi, p);
}

RealBall abs(const RealBall& x)
{
    if (x.is_nonnegative())
        return x;
    if (x.is_negative())
        return -x;
    Precision p = x.precision();
    BigFloat lo = x.lower(), hi = x.upper();
    BigFloat top(p), zero(p);
    mpfr_abs(lo.get(), lo.get(), MPFR_RNDU);
    mpfr_max(top.get(), lo.get(), hi.get(), MPFR_RNDU);
    return RealBall::from_endpoints(zero, top, p);
}

RealBall const_pi(Precision prec)
{
    BigFloat m(prec);
    Mag rad;
    add_rounding_error(rad, mpfr_const_pi(m.get(), MPFR_RNDN), m.get());
    return RealBall(std::move(m), std::move(rad));
}

RealBall const_log2(Precision prec)
{
    BigFloat m(prec);
    Mag rad;
    add_rounding_error(rad, mpfr_const_log2(m.get(), MPFR_RNDN), m.get());
    return RealBall(std::move(m), std::move(rad));
}

bool certainly_less(const RealBall& a, const RealBall& b) { return (b - a).is_positive(); }

bool certainly_less_equal(const RealBall& a, const RealBall& b) { return (b - a).is_nonnegative(); }

// ------------------------------------------------------------- ComplexBall

ComplexBall::ComplexBall(Precision prec) : re_(prec), im_(prec) {}

ComplexBall::ComplexBall(long value, Precision prec) : re_(prec), im_(prec)
{
    add_rounding_error(rad_, mpfr_set_si(re_.get(), value, MPFR_RNDN), re_.get());
}

ComplexBall::ComplexBall(const mpz_class& value, Precision prec) : re_(prec), im_(prec)
{
    add_rounding_error(rad_, mpfr_set_z(re_.get(), value.get_mpz_t(), MPFR_RNDN), re_.get());
}

ComplexBall::ComplexBall(BigFloat re, BigFloat im, Mag rad)
    : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad))
{
}

ComplexBall::ComplexBall(const RealBall& real)
    : re_(real.mid()), im_(real.precision()), rad_(real.rad())
{
}

ComplexBall ComplexBall::from_complex(std::complex<double> z, Precision prec)
{
    ComplexBall out(prec);
    add_rounding_error(out.rad_, mpfr_set_d(out.re_.get(), z.real(), MPFR_RNDN), out.re_.get());
    add_rounding_error(out.rad_, mpfr_set_d(out.im_.get(), z.imag(), MPFR_RNDN), out.im_.get());
    return out;
}

ComplexBall ComplexBall::midpoint() const { return ComplexBall(re_, im_, Mag()); }

ComplexBall ComplexBall::with_radius(const Mag& rad) const { return ComplexBall(re_, im_, rad); }

bool ComplexBall::contains_zero() const
{
    mpfr_t d;
    mpfr_init2(d, Mag::kBits);
    mpfr_hypot(d, re_.get(), im_.get(), MPFR_RNDD);
    bool inside = mpfr_lessequal_p(d, rad_.get()) != 0;
    mpfr_clear(d);
    return inside;
}

namespace {

// Lower bound of |a - b| for the midpoints.
void midpoint_distance_lower(mpfr_ptr out, const ComplexBall& a, const ComplexBall& b)
{
    Precision p = max_prec(a.precision(), b.precision()) + 8;
    mpfr_t dre, dim;
    mpfr_init2(dre, p);
    mpfr_init2(dim, p);
    mpfr_sub(dre, a.re().get(), b.re().get(), MPFR_RNDZ);
    mpfr_sub(dim, a.im().get(), b.im().get(), MPFR_RNDZ);
    mpfr_hypot(out, dre, dim, MPFR_RNDD);
    mpfr_clear(dre);
    mpfr_clear(dim);
}

void midpoint_distance_upper(mpfr_ptr out, const ComplexBall& a, const ComplexBall& b)
{
    Precision p = max_prec(a.precision(), b.precision()) + 8;
    mpfr_t dre, dim;
    mpfr_init2(dre, p);
    mpfr_init2(dim, p);
    mpfr_sub(dre, a.re().get(), b.re().get(), MPFR_RNDA);
    mpfr_sub(dim, a.im().get(), b.im().get(), MPFR_RNDA);
    mpfr_hypot(out, dre, dim, MPFR_RNDU);
    mpfr_clear(dre);
    mpfr_clear(dim);
}

} // namespace

bool ComplexBall::overlaps(const ComplexBall& other) const
{
    mpfr_t d;
    mpfr_init2(d, Mag::kBits);
    midpoint_distance_lower(d, *this, other);
    Mag r = rad_ + other.rad_;
    bool result = mpfr_lessequal_p(d, r.get()) != 0;
    mpfr_clear(d);
    return result;
}

bool ComplexBall::contains_interior(const ComplexBall& inner) const
{
    mpfr_t d;
    mpfr_init2(d, Mag::kBits);
    midpoint_distance_upper(d, *this, inner);
    mpfr_add(d, d, inner.rad_.get(), MPFR_RNDU);
    bool result = mpfr_less_p(d, rad_.get()) != 0;
    mpfr_clear(d);
    return result;
}

bool ComplexBall::contains(const ComplexBall& inner) const
{
    mpfr_t d;
    mpfr_init2(d, Mag::kBits);
    midpoint_distance_upper(d, *this, inner);
    mpfr_add(d, d, inner.rad_.get(), MPFR_RNDU);
    bool result = mpfr_lessequal_p(d, rad_.get()) != 0;
    mpfr_clear(d);
    return result;
}

std::string ComplexBall::to_string(int digits) const
{
    BigFloat a(im_.precision());
    mpfr_abs(a.get(), im_.get(), MPFR_RNDN);
    return "[" + re_.to_string(digits) + (im_.sign() < 0 ? " - " : " + ") + a.to_string(digits) + "i +/- " +
           mag_string(rad_) + "]";
}

ComplexBall operator-(const ComplexBall& a)
{
    BigFloat re(a.precision()), im(a.precision());
    mpfr_neg(re.get(), a.re().get(), MPFR_RNDN);
    mpfr_neg(im.get(), a.im().get(), MPFR_RNDN);
    return ComplexBall(std::move(re), std::move(im), a.rad());
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b)
{
    Precision p = max_prec(a.precision(), b.precision());
    BigFloat re(p), im(p);
    Mag rad = a.rad() + b.rad();
    add_rounding_error(rad, mpfr_add(re.get(), a.re().get(), b.re().get(), MPFR_RNDN), re.get());
    add_rounding_error(rad, mpfr_add(im.get(), a.im().get(), b.im().get(), MPFR_RNDN), im.get());
    return ComplexBall(std::move(re), std::move(im), std::move(rad));
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b)
{
    Precision p = max_prec(a.precision(), b.precision());
    BigFloat re(p), im(p);
    Mag rad = a.rad() + b.rad();
    add_rounding_error(rad, mpfr_sub(re.get(), a.re().get(), b.re().get(), MPFR_RNDN), re.get());
    add_rounding_error(rad, mpfr_sub(im.get(), a.im().get(), b.im().get(), MPFR_RNDN), im.get());
    return ComplexBall(std::move(re), std::move(im), std::move(rad));
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b)
{
    Precision p = max_prec(a.precision(), b.precision());
    BigFloat re(p), im(p), t(p);
    Mag err;
    int tern;

    // re = ac - bd, im = ad + bc; each intermediate rounding is accounted for.
    tern = mpfr_mul(re.get(), a.re().get(), b.re().get(), MPFR_RNDN);
    add_rounding_error(err, tern, re.get());
    tern = mpfr_mul(t.get(), a.im().get(), b.im().get(), MPFR_RNDN);
    add_rounding_error(err, tern, t.get());
    tern = mpfr_sub(re.get(), re.get(), t.get(), MPFR_RNDN);
    add_rounding_error(err, tern, re.get());

    tern = mpfr_mul(im.get(), a.re().get(), b.im().get(), MPFR_RNDN);
    add_rounding_error(err, tern, im.get());
    tern = mpfr_mul(t.get(), a.im().get(), b.re().get(), MPFR_RNDN);
    add_rounding_error(err, tern, t.get());
    tern = mpfr_add(im.get(), im.get(), t.get(), MPFR_RNDN);
    add_rounding_error(err, tern, im.get());

    Mag rad = err;
    if (!b.rad().is_zero())
        rad += Mag::hypot_upper(a.re().get(), a.im().get()) * b.rad();
    if (!a.rad().is_zero()) {
        rad += Mag::hypot_upper(b.re().get(), b.im().get()) * a.rad();
        rad += a.rad() * b.rad();
    }
    return ComplexBall(std::move(re), std::move(im), std::move(rad));
}

ComplexBall operator*(const ComplexBall& a, const mpz_class& b)
{
    Precision p = a.precision();
    BigFloat re(p), im(p);
    Mag rad;
    add_rounding_error(rad, mpfr_mul_z(re.get(), a.re().get(), b.get_mpz_t(), MPFR_RNDN), re.get());
    add_rounding_error(rad, mpfr_mul_z(im.get(), a.im().get(), b.get_mpz_t(), MPFR_RNDN), im.get());
    if (!a.rad().is_zero()) {
        mpfr_t bb;
        mpfr_init2(bb, Mag::kBits);
        mpfr_set_z(bb, b.get_mpz_t(), MPFR_RNDA);
        rad += Mag::abs_upper(bb) * a.rad();
        mpfr_clear(bb);
    }
    return ComplexBall(std::move(re), std::move(im), std::move(rad));
}

ComplexBall operator+(const ComplexBall& a, const mpz_class& b)
{
    BigFloat re(a.precision());
    Mag rad = a.rad();
    add_rounding_error(rad, mpfr_add_z(re.get(), a.re().get(), b.get_mpz_t(), MPFR_RNDN), re.get());
    BigFloat im = a.im();
    return ComplexBall(std::move(re), std::move(im), std::move(rad));
}

ComplexBall operator-(const ComplexBall& a, long b)
{
    BigFloat re(a.precision());
    Mag rad = a.rad();
    add_rounding_error(rad, mpfr_sub_si(re.get(), a.re().get(), b, MPFR_RNDN), re.get());
    BigFloat im = a.im();
    return ComplexBall(std::move(re), std::move(im), std::move(rad));
}

ComplexBall make_complex(const RealBall& re, const RealBall& im)
{
    return ComplexBall(re.mid(), im.mid(), re.rad() + im.rad());
}

ComplexBall round_point(const ComplexBall& z, Precision prec)
{
    BigFloat re(prec), im(prec);
    mpfr_set(re.get(), z.re().get(), MPFR_RNDN);
    mpfr_set(im.get(), z.im().get(), MPFR_RNDN);
    return ComplexBall(std::move(re), std::move(im), Mag());
}

ComplexBall conj(const ComplexBall& z)
{
    BigFloat im(z.precision());
    mpfr_neg(im.get(), z.im().get(), MPFR_RNDN);
    return ComplexBall(z.re(), std::move(im), z.rad());
}

ComplexBall pow(const ComplexBall& z, unsigned long e)
{
    ComplexBall result(1L, z.precision());
    if (e == 0)
        return result;
    ComplexBall base = z;
    bool first = true;
    while (e > 0) {
        if (e & 1UL) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result;
}

RealBall abs(const ComplexBall& z)
{
    BigFloat m(z.precision());
    Mag rad = z.rad();
    int tern;
    if (z.im().is_zero())
        tern = mpfr_abs(m.get(), z.re().get(), MPFR_RNDN);
    else if (z.re().is_zero())
        tern = mpfr_abs(m.get(), z.im().get(), MPFR_RNDN);
    else
        tern = mpfr_hypot(m.get(), z.re().get(), z.im().get(), MPFR_RNDN);
    add_rounding_error(rad, tern, m.get());
    return RealBall(std::move(m), std::move(rad));
}

ComplexBall exp_i(const RealBall& t)
{
    Precision p = t.precision();
    BigFloat s(p), c(p);
    Mag rad = t.rad();
    int tern = mpfr_sin_cos(s.get(), c.get(), t.mid().get(), MPFR_RNDN);
    if (tern != 0 || !t.mid().is_zero()) {
        add_rounding_error(rad, 1, s.get());
        add_rounding_error(rad, 1, c.get());
    }
    return ComplexBall(std::move(c), std::move(s), std::move(rad));
}

ComplexBall approx_div(const ComplexBall& a, const ComplexBall& b)
{
    Precision p = max_prec(a.precision(), b.precision());
    mpfr_t den, t, re, im;
    mpfr_inits2(p, den, t, re, im, static_cast<mpfr_ptr>(nullptr));
    mpfr_sqr(den, b.re().get(), MPFR_RNDN);
    mpfr_sqr(t, b.im().get(), MPFR_RNDN);
    mpfr_add(den, den, t, MPFR_RNDN);
    if (mpfr_zero_p(den)) {
        mpfr_clears(den, t, re, im, static_cast<mpfr_ptr>(nullptr));
        throw std::domain_error("approximate division by zero");
    }
    mpfr_mul(re, a.re().get(), b.re().get(), MPFR_RNDN);
    mpfr_mul(t, a.im().get(), b.im().get(), MPFR_RNDN);
    mpfr_add(re, re, t, MPFR_RNDN);
    mpfr_div(re, re, den, MPFR_RNDN);
    mpfr_mul(im, a.im().get(), b.re().get(), MPFR_RNDN);
    mpfr_mul(t, a.re().get(), b.im().get(), MPFR_RNDN);
    mpfr_sub(im, im, t, MPFR_RNDN);
    mpfr_div(im, im, den, MPFR_RNDN);
    BigFloat r(p), i(p);
    mpfr_set(r.get(), re, MPFR_RNDN);
    mpfr_set(i.get(), im, MPFR_RNDN);
    mpfr_clears(den, t, re, im, static_cast<mpfr_ptr>(nullptr));
    return ComplexBall(std::move(r), std::move(i), Mag());
}

} // namespace betacert
