#pragma once

#include <gmpxx.h>

#include <string>

#include "lacstat/fixed.hpp"

namespace lacstat {

// A positive-precision real as supplied by the user: either an exact
// rational (decimal literals, fractions) or a named constant that can be
// enclosed to any requested precision (sqrt of a rational, e, pi).
class RealInput {
public:
    enum class Kind { rational, sqrt_rational, euler_e, pi };

    RealInput() : kind_(Kind::rational), rat_(0) {}

    static RealInput rational(mpq_class q);
    static RealInput sqrt_of(mpq_class q);
    static RealInput euler();
    static RealInput pi_const();

    // Accepts: decimal literals ("1.5", "-3", "2.71e2"), fractions ("3/2"),
    // "sqrt2", "sqrt(<rational/decimal>)", "e", "pi".
    static RealInput parse(const std::string& token);

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::rational; }
    const mpq_class& rat() const;

    // Certified enclosure at the given scale.
    FixedInterval approx(long frac_bits) const;

    double to_double() const { return approx(72).mid_double(); }

    // Smallest integer g with value <= 2^g (requires value > 0).
    long ceil_log2_upper() const;

    int sign() const;

    // Round-trip text (the original token when parsed).
    const std::string& repr() const { return repr_; }

    bool same_as(const RealInput& o) const;

private:
    Kind kind_;
    mpq_class rat_;  // the rational, or the radicand for sqrt_rational
    std::string repr_;
};

// Decimal literal -> exact rational. Accepts sign, fraction "p/q",
// decimal point, exponent suffix. Throws ConfigError on malformed input.
mpq_class parse_decimal_rational(const std::string& text);

}  // namespace lacstat
