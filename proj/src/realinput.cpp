#include "lacstat/realinput.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>

namespace lacstat {

mpq_class parse_decimal_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw ConfigError("empty numeric literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class num = parse_decimal_rational(s.substr(0, slash));
        mpq_class den = parse_decimal_rational(s.substr(slash + 1));
        if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
        mpq_class r = num / den;
        r.canonicalize();
        return r;
    }

    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false, seen_digit = false;
    long exp10 = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exp10 = std::stol(s.substr(i + 1));
            break;
        } else {
            throw ConfigError("malformed numeric literal '" + text + "'");
        }
    }
    if (!seen_digit) throw ConfigError("malformed numeric literal '" + text + "'");
    mpz_class mant(digits.empty() ? "0" : digits);
    if (neg) mant = -mant;
    long net = exp10 - frac_digits;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(net)));
    mpq_class r;
    if (net >= 0)
        r = mpq_class(mant * p10);
    else
        r = mpq_class(mant, p10);
    r.canonicalize();
    return r;
}

RealInput RealInput::rational(mpq_class q) {
    RealInput r;
    r.kind_ = Kind::rational;
    q.canonicalize();
    r.rat_ = std::move(q);
    r.repr_ = r.rat_.get_str();
    return r;
}

RealInput RealInput::sqrt_of(mpq_class q) {
    if (q < 0) throw ConfigError("sqrt of negative value");
    RealInput r;
    r.kind_ = Kind::sqrt_rational;
    q.canonicalize();
    r.rat_ = std::move(q);
    r.repr_ = "sqrt(" + r.rat_.get_str() + ")";
    return r;
}

RealInput RealInput::euler() {
    RealInput r;
    r.kind_ = Kind::euler_e;
    r.repr_ = "e";
    return r;
}

RealInput RealInput::pi_const() {
    RealInput r;
    r.kind_ = Kind::pi;
    r.repr_ = "pi";
    return r;
}

RealInput RealInput::parse(const std::string& token) {
    std::string s = token;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s == "e") return euler();
    if (s == "pi") return pi_const();
    if (s.rfind("sqrt", 0) == 0) {
        std::string arg = s.substr(4);
        if (!arg.empty() && arg.front() == '(') {
            if (arg.back() != ')') throw ConfigError("malformed sqrt token '" + token + "'");
            arg = arg.substr(1, arg.size() - 2);
        }
        if (arg.empty()) throw ConfigError("malformed sqrt token '" + token + "'");
        RealInput r = sqrt_of(parse_decimal_rational(arg));
        r.repr_ = s;
        return r;
    }
    RealInput r = rational(parse_decimal_rational(s));
    r.repr_ = s;
    return r;
}

const mpq_class& RealInput::rat() const {
    if (kind_ != Kind::rational) throw Error("RealInput: not a rational");
    return rat_;
}

namespace {

FixedInterval sqrt_enclosure(const mpq_class& q, long fb) {
    // sqrt(n/d) * 2^fb = sqrt(n * 2^(2fb) / d)
    mpz_class t = q.get_num() << static_cast<unsigned long>(2 * fb);
    mpz_class u_lo, u_hi;
    mpz_fdiv_q(u_lo.get_mpz_t(), t.get_mpz_t(), q.get_den().get_mpz_t());
    mpz_cdiv_q(u_hi.get_mpz_t(), t.get_mpz_t(), q.get_den().get_mpz_t());
    mpz_class lo, hi, rem;
    mpz_sqrtrem(lo.get_mpz_t(), rem.get_mpz_t(), u_lo.get_mpz_t());
    mpz_sqrt(hi.get_mpz_t(), u_hi.get_mpz_t());
    if (!(u_lo == u_hi && rem == 0 && hi * hi == u_hi)) hi += 1;
    return FixedInterval(std::move(lo), std::move(hi), fb);
}

FixedInterval mpfr_const_enclosure(bool is_pi, long fb) {
    mpfr_t v;
    mpfr_init2(v, static_cast<mpfr_prec_t>(fb + 16));
    mpz_class lo, hi;
    for (int dir = 0; dir < 2; ++dir) {
        mpfr_rnd_t rnd = dir == 0 ? MPFR_RNDD : MPFR_RNDU;
        if (is_pi)
            mpfr_const_pi(v, rnd);
        else {
            mpfr_set_ui(v, 1, rnd);
            mpfr_exp(v, v, rnd);
        }
        mpfr_mul_2exp(v, v, static_cast<unsigned long>(fb), rnd);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v, dir == 0 ? MPFR_RNDD : MPFR_RNDU);
        (dir == 0 ? lo : hi) = z;
    }
    mpfr_clear(v);
    return FixedInterval(std::move(lo), std::move(hi), fb);
}

}  // namespace

FixedInterval RealInput::approx(long fb) const {
    switch (kind_) {
        case Kind::rational:
            return FixedInterval::from_mpq(rat_, fb);
        case Kind::sqrt_rational:
            return sqrt_enclosure(rat_, fb);
        case Kind::euler_e:
            return mpfr_const_enclosure(false, fb);
        case Kind::pi:
            return mpfr_const_enclosure(true, fb);
    }
    throw Error("RealInput: bad kind");
}

long RealInput::ceil_log2_upper() const {
    FixedInterval e = approx(8);
    if (mpz_sgn(e.hi_mant().get_mpz_t()) <= 0) throw Error("ceil_log2_upper: value not positive");
    // hi = m * 2^-8; smallest g with hi <= 2^g
    long bits = static_cast<long>(mpz_sizeinbase(e.hi_mant().get_mpz_t(), 2));  // 2^(bits-1) <= m < 2^bits
    long g = bits - 8;
    // tighten when hi is exactly a power of two
    mpz_class pw = mpz_class(1) << static_cast<unsigned long>(bits - 1);
    if (e.hi_mant() == pw) g -= 1;
    return g;
}

int RealInput::sign() const {
    if (kind_ == Kind::rational) return mpq_sgn(rat_.get_mpq_t());
    if (kind_ == Kind::sqrt_rational) return mpq_sgn(rat_.get_mpq_t());
    return 1;  // e, pi
}

bool RealInput::same_as(const RealInput& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::euler_e || kind_ == Kind::pi) return true;
    return rat_ == o.rat_;
}

}  // namespace lacstat
