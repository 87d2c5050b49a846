#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "lacstat/errors.hpp"

namespace lacstat {

// Scaled fixed point: a real x is represented as mant * 2^-frac_bits.
// All rounding is explicit and directed; frac(x) is a mantissa bit mask.
class Fixed {
public:
    Fixed() : mant_(0), fb_(0) {}
    Fixed(mpz_class mant, long frac_bits) : mant_(std::move(mant)), fb_(frac_bits) {}

    static Fixed from_long(long v) { return Fixed(mpz_class(v), 0); }

    // Doubles are dyadic, so this is exact.
    static Fixed from_double(double v);

    // Directed rounding of p/q (q > 0) to frac_bits.
    static Fixed from_mpq(const mpq_class& q, long frac_bits, bool round_up);

    const mpz_class& mant() const { return mant_; }
    long frac_bits() const { return fb_; }

    Fixed rescaled(long frac_bits, bool round_up) const;

    double to_double() const;
    mpz_class floor_int() const;  // floor of the represented value
    int sign() const { return mpz_sgn(mant_.get_mpz_t()); }

    // Exact three-way comparison across scales.
    static int cmp(const Fixed& a, const Fixed& b);

    Fixed operator-() const { return Fixed(-mant_, fb_); }

    std::string sci_string(int sig_digits = 17) const;

private:
    mpz_class mant_;
    long fb_;
};

enum class Cert { yes, no, unknown };

// Closed interval [lo, hi] of dyadics at a common scale, certified to
// enclose the exact real it stands for. Operations round outward.
class FixedInterval {
public:
    FixedInterval() : lo_(0), hi_(0), fb_(0) {}
    FixedInterval(mpz_class lo, mpz_class hi, long frac_bits)
        : lo_(std::move(lo)), hi_(std::move(hi)), fb_(frac_bits) {
        if (lo_ > hi_) throw Error("FixedInterval: lo > hi");
    }

    static FixedInterval exact(const Fixed& v) { return FixedInterval(v.mant(), v.mant(), v.frac_bits()); }
    static FixedInterval exact_long(long v) { return FixedInterval(mpz_class(v), mpz_class(v), 0); }
    static FixedInterval exact_double(double v) { return exact(Fixed::from_double(v)); }
    static FixedInterval from_mpq(const mpq_class& q, long frac_bits);
    // Hull of two rationals (lo_q <= hi_q), outward rounded.
    static FixedInterval from_mpq_hull(const mpq_class& lo_q, const mpq_class& hi_q, long frac_bits);

    const mpz_class& lo_mant() const { return lo_; }
    const mpz_class& hi_mant() const { return hi_; }
    long frac_bits() const { return fb_; }
    Fixed lo() const { return Fixed(lo_, fb_); }
    Fixed hi() const { return Fixed(hi_, fb_); }
    bool is_point() const { return lo_ == hi_; }

    FixedInterval rescaled(long frac_bits) const;  // outward

    FixedInterval operator+(const FixedInterval& o) const;
    FixedInterval operator-(const FixedInterval& o) const;
    FixedInterval operator-() const { return FixedInterval(-hi_, -lo_, fb_); }

    // Product rounded outward to target_fb.
    FixedInterval mul(const FixedInterval& o, long target_fb) const;
    // Exact product with an integer.
    FixedInterval mul_int(const mpz_class& k) const;
    // Product with rational p/q (q > 0), outward at the current scale.
    FixedInterval mul_rat(const mpz_class& p, const mpz_class& q) const;

    FixedInterval abs() const;

    // Width as a dyadic (hi - lo).
    Fixed width() const { return Fixed(hi_ - lo_, fb_); }
    // True iff width <= 2^e.
    bool width_le_2exp(long e) const;

    double mid_double() const;
    double lo_double() const { return lo().to_double(); }
    double hi_double() const { return hi().to_double(); }

    // Floor of the enclosed value, when unambiguous.
    std::optional<mpz_class> unique_floor() const;
    // Fractional part [0,1) at the same scale; nullopt if the interval
    // straddles an integer.
    std::optional<FixedInterval> frac() const;

    // Certified "value(*this) <= value(rhs)".
    Cert le(const FixedInterval& rhs) const;
    // Certified "value(*this) <= c" for dyadic c.
    Cert le(const Fixed& rhs) const { return le(exact(rhs)); }

    bool contains_zero() const { return mpz_sgn(lo_.get_mpz_t()) <= 0 && mpz_sgn(hi_.get_mpz_t()) >= 0; }

private:
    mpz_class lo_, hi_;
    long fb_;
};

// floor/ceil shifts on mantissas (directed rounding by 2^shift, shift >= 0).
inline mpz_class shift_down_floor(const mpz_class& m, long shift) {
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    return r;
}
inline mpz_class shift_down_ceil(const mpz_class& m, long shift) {
    mpz_class r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    return r;
}

}  // namespace lacstat
