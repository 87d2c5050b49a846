#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lacstat/fixed.hpp"
#include "lacstat/realinput.hpp"

namespace lacstat {

enum class SeqKind { geometric, integer_geometric, perturbed_geometric, explicit_list };

// Generator description of a lacunary sequence a_1, a_2, ... with a
// declared lower ratio c > 1. Geometric kinds define a_n = A * base^n;
// perturbed multiplies by (1 + eps_n) with eps cycled from a table.
struct LacunarySpec {
    SeqKind kind = SeqKind::geometric;
    RealInput base = RealInput::rational(mpq_class(2));
    RealInput scale = RealInput::rational(mpq_class(1));
    RealInput declared_ratio = RealInput::rational(mpq_class(2));
    std::vector<mpq_class> perturbations;        // perturbed_geometric only
    std::vector<mpq_class> explicit_values;      // explicit_list only
    std::optional<long> base_precision_digits;   // stated decimal precision, if approximate

    static LacunarySpec geometric(RealInput base, RealInput scale);
    static LacunarySpec geometric_rat(const mpq_class& base, const mpq_class& scale);
    static LacunarySpec integer_geom(long b, const mpq_class& scale);
    static LacunarySpec explicit_seq(std::vector<mpq_class> values, const mpq_class& declared_ratio);

    void validate() const;  // field invariants only (ratios checked at materialization)
    long max_explicit() const { return static_cast<long>(explicit_values.size()); }

    // log2 upper bound on the one-step growth factor.
    double growth_log2_upper() const;
    std::string describe() const;
};

struct PrecisionBudget {
    long target_fraction_bits = 64;
    long guard_bits = 32;
    long hard_bit_cap = 1L << 22;  // max working bits per value
    double alpha_upper = 2.0;      // magnitude bound for dilations this sample will see

    long ceil_log2_alpha() const;
    // Significant bits required of a_n:
    //   ceil(n*log2(growth)) + ceil(log2 scale) + ceil(log2 alpha_upper) + target + guard
    long working_bits(const LacunarySpec& spec, long n) const;
    // Fraction bits carried by materialized values.
    long store_fraction_bits() const;
};

// Certified prefix of a sequence: values[i] encloses a_{i+1}.
struct MaterializedSequence {
    LacunarySpec spec;
    PrecisionBudget budget;
    std::vector<FixedInterval> values;

    long size() const { return static_cast<long>(values.size()); }
    const FixedInterval& at(long n) const { return values.at(static_cast<size_t>(n - 1)); }  // 1-based

    // Lemma constant C = (a1 (1 - 1/c))^-1 with c = declared_ratio.
    // Exact when the inputs are rational.
    bool lemma_constant_rational(mpq_class& out) const;
    double lemma_constant() const;
};

// Fractional parts {alpha * a_n}, n = 1..N, each enclosed to width
// <= 2^-target_fraction_bits. Mantissas are midpoints at frac_bits.
struct TorusSample {
    LacunarySpec source;
    RealInput alpha;
    long N = 0;
    long frac_bits = 0;
    std::vector<mpz_class> mant;  // in [0, 2^frac_bits)
    std::vector<double> pts;      // midpoint doubles in [0,1)

    // Synthetic sample from plain points (tests, reference data).
    static TorusSample from_points(const std::vector<double>& points);

    double point(long n) const { return pts.at(static_cast<size_t>(n - 1)); }
};

struct IntervalCountResult {
    long count = 0;
    double lemma_C = 0.0;   // (a1(1-1/c))^-1
    double bound = 0.0;     // C|I| + 1
    bool bound_ok = false;  // count <= C|I| + 1, decided exactly when possible
};

// Materialization engine with a memoized binary-exponentiation power cache.
class Materializer {
public:
    Materializer(LacunarySpec spec, PrecisionBudget budget);
    ~Materializer();

    const LacunarySpec& spec() const { return spec_; }
    const PrecisionBudget& budget() const { return budget_; }

    // a_1..a_N, lacunarity-certified. Throws LacunarityViolation /
    // PrecisionExhausted.
    MaterializedSequence materialize(long N);

    TorusSample fractional_parts(const RealInput& alpha, long N);

    // Exact a_n when the spec's inputs are all rational.
    bool exact_value(long n, mpq_class& out) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    LacunarySpec spec_;
    PrecisionBudget budget_;
};

MaterializedSequence materialize(const LacunarySpec& spec, long N, const PrecisionBudget& budget);
TorusSample fractional_parts(const LacunarySpec& spec, const RealInput& alpha, long N,
                             const PrecisionBudget& budget);

// #{1 <= n <= N : a_n in [lo, hi]} plus the Lemma bound C|I|+1.
IntervalCountResult interval_count(const MaterializedSequence& seq, const mpq_class& lo, const mpq_class& hi);
IntervalCountResult interval_count(const LacunarySpec& spec, long N, const mpq_class& lo, const mpq_class& hi,
                                   const PrecisionBudget& budget);

}  // namespace lacstat
