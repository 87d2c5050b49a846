#include "lacstat/fixed.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace lacstat {

Fixed Fixed::from_double(double v) {
    if (!std::isfinite(v)) throw Error("Fixed::from_double: non-finite input");
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
    // 53 mantissa bits suffice for any double.
    double scaled = std::ldexp(m, 53);
    mpz_class mant(scaled);
    long fb = 53 - exp;
    if (fb < 0) {
        mant <<= static_cast<unsigned long>(-fb);
        fb = 0;
    }
    return Fixed(mant, fb);
}

Fixed Fixed::from_mpq(const mpq_class& q, long frac_bits, bool round_up) {
    mpz_class num = q.get_num();
    const mpz_class& den = q.get_den();  // canonical: den > 0
    if (frac_bits >= 0)
        num <<= static_cast<unsigned long>(frac_bits);
    mpz_class r;
    if (round_up)
        mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    else
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (frac_bits < 0) throw Error("Fixed::from_mpq: negative frac_bits");
    return Fixed(r, frac_bits);
}

Fixed Fixed::rescaled(long frac_bits, bool round_up) const {
    if (frac_bits == fb_) return *this;
    if (frac_bits > fb_) {
        mpz_class m = mant_;
        m <<= static_cast<unsigned long>(frac_bits - fb_);
        return Fixed(m, frac_bits);
    }
    long shift = fb_ - frac_bits;
    return Fixed(round_up ? shift_down_ceil(mant_, shift) : shift_down_floor(mant_, shift), frac_bits);
}

double Fixed::to_double() const {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, mant_.get_mpz_t());  // mant = d * 2^exp, 0.5 <= |d| < 1
    return std::ldexp(d, static_cast<int>(exp - fb_));
}

mpz_class Fixed::floor_int() const {
    return shift_down_floor(mant_, fb_);
}

int Fixed::cmp(const Fixed& a, const Fixed& b) {
    long fb = std::max(a.fb_, b.fb_);
    mpz_class ma = a.mant_, mb = b.mant_;
    if (a.fb_ < fb) ma <<= static_cast<unsigned long>(fb - a.fb_);
    if (b.fb_ < fb) mb <<= static_cast<unsigned long>(fb - b.fb_);
    return ::cmp(ma, mb);
}

std::string Fixed::sci_string(int sig_digits) const {
    if (mant_ == 0) return "0";
    // value = mant * 2^-fb; decimal exponent from the bit size.
    mpz_class a = mant_ < 0 ? mpz_class(-mant_) : mant_;
    double bits = static_cast<double>(mpz_sizeinbase(a.get_mpz_t(), 2));
    long dec_exp = static_cast<long>(std::floor((bits - static_cast<double>(fb_)) * 0.30102999566398120));
    // digits = round(a * 10^(sig-1-dec_exp) / 2^fb)
    mpq_class scaled(a);
    long p10 = sig_digits - 1 - dec_exp;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(p10)));
    if (p10 >= 0)
        scaled *= pow10;
    else
        scaled /= pow10;
    scaled /= mpq_class(mpz_class(1) << static_cast<unsigned long>(fb_));
    mpz_class digits;
    mpz_class num = scaled.get_num(), den = scaled.get_den();
    mpz_class twice = 2 * num + den;  // round to nearest
    mpz_fdiv_q(digits.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    std::string s = digits.get_str();
    while (static_cast<long>(s.size()) > sig_digits) {  // rounding overflow, e.g. 999.. -> 1000..
        s.pop_back();
        ++dec_exp;
    }
    std::string out;
    if (mant_ < 0) out += "-";
    out += s.substr(0, 1);
    if (s.size() > 1) out += "." + s.substr(1);
    out += "e" + std::to_string(dec_exp);
    return out;
}

FixedInterval FixedInterval::from_mpq(const mpq_class& q, long frac_bits) {
    return FixedInterval(Fixed::from_mpq(q, frac_bits, false).mant(),
                         Fixed::from_mpq(q, frac_bits, true).mant(), frac_bits);
}

FixedInterval FixedInterval::from_mpq_hull(const mpq_class& lo_q, const mpq_class& hi_q, long frac_bits) {
    return FixedInterval(Fixed::from_mpq(lo_q, frac_bits, false).mant(),
                         Fixed::from_mpq(hi_q, frac_bits, true).mant(), frac_bits);
}

FixedInterval FixedInterval::rescaled(long frac_bits) const {
    if (frac_bits == fb_) return *this;
    if (frac_bits > fb_) {
        unsigned long s = static_cast<unsigned long>(frac_bits - fb_);
        mpz_class lo = lo_, hi = hi_;
        lo <<= s;
        hi <<= s;
        return FixedInterval(std::move(lo), std::move(hi), frac_bits);
    }
    long shift = fb_ - frac_bits;
    return FixedInterval(shift_down_floor(lo_, shift), shift_down_ceil(hi_, shift), frac_bits);
}

namespace {
// Align two intervals to a common scale (exact, shifts up only).
void align(const FixedInterval& a, const FixedInterval& b, mpz_class& alo, mpz_class& ahi, mpz_class& blo,
           mpz_class& bhi, long& fb) {
    fb = std::max(a.frac_bits(), b.frac_bits());
    alo = a.lo_mant();
    ahi = a.hi_mant();
    blo = b.lo_mant();
    bhi = b.hi_mant();
    if (a.frac_bits() < fb) {
        unsigned long s = static_cast<unsigned long>(fb - a.frac_bits());
        alo <<= s;
        ahi <<= s;
    }
    if (b.frac_bits() < fb) {
        unsigned long s = static_cast<unsigned long>(fb - b.frac_bits());
        blo <<= s;
        bhi <<= s;
    }
}
}  // namespace

FixedInterval FixedInterval::operator+(const FixedInterval& o) const {
    mpz_class alo, ahi, blo, bhi;
    long fb;
    align(*this, o, alo, ahi, blo, bhi, fb);
    return FixedInterval(alo + blo, ahi + bhi, fb);
}

FixedInterval FixedInterval::operator-(const FixedInterval& o) const {
    mpz_class alo, ahi, blo, bhi;
    long fb;
    align(*this, o, alo, ahi, blo, bhi, fb);
    return FixedInterval(alo - bhi, ahi - blo, fb);
}

FixedInterval FixedInterval::mul(const FixedInterval& o, long target_fb) const {
    // Endpoint products at scale fb_ + o.fb_, then outward to target_fb.
    mpz_class p1 = lo_ * o.lo_, p2 = lo_ * o.hi_, p3 = hi_ * o.lo_, p4 = hi_ * o.hi_;
    const mpz_class* mn = &p1;
    const mpz_class* mx = &p1;
    for (const mpz_class* p : {&p2, &p3, &p4}) {
        if (*p < *mn) mn = p;
        if (*p > *mx) mx = p;
    }
    long fb = fb_ + o.fb_;
    if (target_fb >= fb) {
        unsigned long s = static_cast<unsigned long>(target_fb - fb);
        return FixedInterval(*mn << s, *mx << s, target_fb);
    }
    long shift = fb - target_fb;
    return FixedInterval(shift_down_floor(*mn, shift), shift_down_ceil(*mx, shift), target_fb);
}

FixedInterval FixedInterval::mul_int(const mpz_class& k) const {
    if (mpz_sgn(k.get_mpz_t()) >= 0) return FixedInterval(lo_ * k, hi_ * k, fb_);
    return FixedInterval(hi_ * k, lo_ * k, fb_);
}

FixedInterval FixedInterval::mul_rat(const mpz_class& p, const mpz_class& q) const {
    if (mpz_sgn(q.get_mpz_t()) <= 0) throw Error("mul_rat: q must be positive");
    mpz_class a = lo_ * p, b = hi_ * p;
    if (mpz_sgn(p.get_mpz_t()) < 0) std::swap(a, b);
    mpz_class lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), b.get_mpz_t(), q.get_mpz_t());
    return FixedInterval(std::move(lo), std::move(hi), fb_);
}

FixedInterval FixedInterval::abs() const {
    int slo = mpz_sgn(lo_.get_mpz_t()), shi = mpz_sgn(hi_.get_mpz_t());
    if (slo >= 0) return *this;
    if (shi <= 0) return FixedInterval(-hi_, -lo_, fb_);
    mpz_class nlo = -lo_;
    return FixedInterval(mpz_class(0), std::max(nlo, hi_), fb_);
}

bool FixedInterval::width_le_2exp(long e) const {
    mpz_class w = hi_ - lo_;
    // w * 2^-fb <= 2^e  <=>  w <= 2^(fb+e)
    long k = fb_ + e;
    if (k < 0) return w == 0;
    mpz_class bound = mpz_class(1) << static_cast<unsigned long>(k);
    return w <= bound;
}

double FixedInterval::mid_double() const {
    return Fixed(lo_ + hi_, fb_ + 1).to_double();
}

std::optional<mpz_class> FixedInterval::unique_floor() const {
    mpz_class flo = shift_down_floor(lo_, fb_);
    mpz_class fhi = shift_down_floor(hi_, fb_);
    if (flo == fhi) return flo;
    return std::nullopt;
}

std::optional<FixedInterval> FixedInterval::frac() const {
    auto fl = unique_floor();
    if (!fl) return std::nullopt;
    mpz_class base = *fl << static_cast<unsigned long>(fb_);
    return FixedInterval(lo_ - base, hi_ - base, fb_);
}

Cert FixedInterval::le(const FixedInterval& rhs) const {
    mpz_class alo, ahi, blo, bhi;
    long fb;
    align(*this, rhs, alo, ahi, blo, bhi, fb);
    if (ahi <= blo) return Cert::yes;
    if (alo > bhi) return Cert::no;
    return Cert::unknown;
}

}  // namespace lacstat
