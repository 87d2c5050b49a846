#pragma once

#include <stdexcept>
#include <string>

namespace lacstat {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A materialized prefix fails a_{n+1} >= declared_ratio * a_n.
struct LacunarityViolation : Error {
    using Error::Error;
};

// Requested working precision exceeds the hard bit cap, or stated input
// digits cannot support the requested fractional-part target.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// alpha * a_n straddles an integer even after one precision doubling.
struct NearIntegerAmbiguity : Error {
    using Error::Error;
};

// Box-family test function requested where a certified spectral tail is needed.
struct SlowDecay : Error {
    using Error::Error;
};

// Direct windowed correlation requires N > 2L.
struct SupportTooWide : Error {
    using Error::Error;
};

struct CostGuardExceeded : Error {
    using Error::Error;
};

struct DegenerateFit : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace lacstat
