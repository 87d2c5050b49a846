#include "lacstat/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lacstat {

LacunarySpec LacunarySpec::geometric(RealInput base, RealInput scale) {
    LacunarySpec s;
    s.kind = SeqKind::geometric;
    s.base = base;
    s.scale = scale;
    s.declared_ratio = base;
    return s;
}

LacunarySpec LacunarySpec::geometric_rat(const mpq_class& base, const mpq_class& scale) {
    return geometric(RealInput::rational(base), RealInput::rational(scale));
}

LacunarySpec LacunarySpec::integer_geom(long b, const mpq_class& scale) {
    LacunarySpec s;
    s.kind = SeqKind::integer_geometric;
    s.base = RealInput::rational(mpq_class(b));
    s.scale = RealInput::rational(scale);
    s.declared_ratio = s.base;
    return s;
}

LacunarySpec LacunarySpec::explicit_seq(std::vector<mpq_class> values, const mpq_class& declared_ratio) {
    LacunarySpec s;
    s.kind = SeqKind::explicit_list;
    s.explicit_values = std::move(values);
    s.declared_ratio = RealInput::rational(declared_ratio);
    return s;
}

namespace {

// Certified "a >= b" for user inputs; exact when both rational, interval
// with escalating precision otherwise. Equal named constants short-circuit.
bool decide_ge(const RealInput& a, const RealInput& b, const char* what) {
    if (a.same_as(b)) return true;
    if (a.is_rational() && b.is_rational()) return a.rat() >= b.rat();
    for (long fb = 128; fb <= 1L << 14; fb *= 2) {
        Cert c = b.approx(fb).le(a.approx(fb));
        if (c == Cert::yes) return true;
        if (c == Cert::no) return false;
    }
    throw Error(std::string("cannot certify comparison for ") + what);
}

bool decide_ge_rat(const RealInput& a, const mpq_class& b, const char* what) {
    return decide_ge(a, RealInput::rational(b), what);
}

}  // namespace

void LacunarySpec::validate() const {
    bool gt1 = false;
    if (declared_ratio.is_rational())
        gt1 = declared_ratio.rat() > 1;
    else
        gt1 = decide_ge_rat(declared_ratio, mpq_class(1), "declared_ratio");  // e, pi, sqrt(q>1) all exceed 1
    if (!gt1) throw ConfigError("declared_ratio must exceed 1");
    switch (kind) {
        case SeqKind::geometric:
            break;
        case SeqKind::integer_geometric: {
            if (!base.is_rational() || base.rat().get_den() != 1 || base.rat() < 2)
                throw ConfigError("integer_geometric base must be an integer >= 2");
            break;
        }
        case SeqKind::perturbed_geometric:
            if (perturbations.empty()) throw ConfigError("perturbed_geometric needs a perturbation table");
            for (const auto& e : perturbations)
                if (e <= -1) throw ConfigError("perturbation must keep values positive (eps > -1)");
            break;
        case SeqKind::explicit_list:
            if (explicit_values.empty()) throw ConfigError("explicit sequence needs values");
            if (explicit_values.front() <= 0) throw ConfigError("first_element must be positive");
            break;
    }
    if (kind != SeqKind::explicit_list) {
        if (scale.sign() <= 0) throw ConfigError("scale must be positive");
        if (base.sign() <= 0) throw ConfigError("base must be positive");
    }
}

double LacunarySpec::growth_log2_upper() const {
    switch (kind) {
        case SeqKind::geometric:
        case SeqKind::integer_geometric: {
            double hi = base.approx(96).hi_double();
            return std::log2(hi) + 1e-9;
        }
        case SeqKind::perturbed_geometric: {
            mpq_class mx = 1 + perturbations.front();
            mpq_class mn = mx;
            for (const auto& e : perturbations) {
                mpq_class v = 1 + e;
                mx = std::max(mx, v);
                mn = std::min(mn, v);
            }
            double ratio = mx.get_d() / mn.get_d();
            return std::log2(base.approx(96).hi_double()) + std::max(0.0, std::log2(ratio)) + 1e-9;
        }
        case SeqKind::explicit_list: {
            double g = 1.0;
            for (size_t i = 1; i < explicit_values.size(); ++i) {
                double r = explicit_values[i].get_d() / explicit_values[i - 1].get_d();
                g = std::max(g, r);
            }
            return std::log2(g) + 1e-9;
        }
    }
    throw Error("bad kind");
}

std::string LacunarySpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case SeqKind::geometric:
            os << "geometric(c=" << base.repr() << ",A=" << scale.repr() << ")";
            break;
        case SeqKind::integer_geometric:
            os << "integer_geometric(b=" << base.repr() << ",A=" << scale.repr() << ")";
            break;
        case SeqKind::perturbed_geometric:
            os << "perturbed_geometric(c=" << base.repr() << ",A=" << scale.repr() << ",table="
               << perturbations.size() << ")";
            break;
        case SeqKind::explicit_list:
            os << "explicit(" << explicit_values.size() << " values)";
            break;
    }
    return os.str();
}

long PrecisionBudget::ceil_log2_alpha() const {
    if (alpha_upper <= 0) throw Error("alpha_upper must be positive");
    return static_cast<long>(std::ceil(std::log2(alpha_upper) + 1e-12));
}

long PrecisionBudget::working_bits(const LacunarySpec& spec, long n) const {
    double g = std::max(0.0, spec.growth_log2_upper());
    long mag = static_cast<long>(std::ceil(static_cast<double>(n) * g));
    long sc = 0;
    if (spec.kind != SeqKind::explicit_list) sc = spec.scale.ceil_log2_upper();
    return mag + std::max(0L, sc) + std::max(0L, ceil_log2_alpha()) + target_fraction_bits + guard_bits;
}

long PrecisionBudget::store_fraction_bits() const {
    return target_fraction_bits + guard_bits + std::max(0L, ceil_log2_alpha());
}

bool MaterializedSequence::lemma_constant_rational(mpq_class& out) const {
    if (!spec.declared_ratio.is_rational()) return false;
    const mpq_class& c = spec.declared_ratio.rat();
    mpq_class a1;
    switch (spec.kind) {
        case SeqKind::explicit_list:
            a1 = spec.explicit_values.front();
            break;
        case SeqKind::geometric:
        case SeqKind::integer_geometric:
        case SeqKind::perturbed_geometric: {
            if (!spec.base.is_rational() || !spec.scale.is_rational()) return false;
            a1 = spec.scale.rat() * spec.base.rat();
            if (spec.kind == SeqKind::perturbed_geometric) a1 *= 1 + spec.perturbations.front();
            break;
        }
    }
    // (a1 (1 - 1/c))^-1 = c / (a1 (c - 1))
    out = c / (a1 * (c - 1));
    out.canonicalize();
    return true;
}

double MaterializedSequence::lemma_constant() const {
    mpq_class q;
    if (lemma_constant_rational(q)) return q.get_d();
    double c = spec.declared_ratio.to_double();
    double a1 = values.front().mid_double();
    return 1.0 / (a1 * (1.0 - 1.0 / c));
}

TorusSample TorusSample::from_points(const std::vector<double>& points) {
    TorusSample s;
    s.alpha = RealInput::rational(mpq_class(1));
    s.N = static_cast<long>(points.size());
    s.frac_bits = 96;
    s.mant.reserve(points.size());
    s.pts = points;
    for (double p : points) {
        if (p < 0.0 || p >= 1.0) throw Error("TorusSample::from_points: point outside [0,1)");
        Fixed f = Fixed::from_double(p).rescaled(96, false);
        s.mant.push_back(f.mant());
    }
    return s;
}

// ---------------------------------------------------------------------------

struct Materializer::Impl {
    LacunarySpec spec;
    PrecisionBudget budget;
    std::map<long, FixedInterval> pow_cache;
    long checked_to = 0;
    long extra_bits = 64;  // rounding headroom above the per-level scale

    Impl(LacunarySpec s, PrecisionBudget b) : spec(std::move(s)), budget(b) {}

    long level_fb(long n) const {
        double g = std::max(0.0, spec.growth_log2_upper());
        long mag = static_cast<long>(std::ceil(static_cast<double>(n) * g)) + 1;
        long sc = spec.kind != SeqKind::explicit_list ? std::max(0L, spec.scale.ceil_log2_upper()) : 0;
        return mag + sc + budget.store_fraction_bits() + extra_bits;
    }

    const FixedInterval& power(long n) {
        auto it = pow_cache.find(n);
        if (it != pow_cache.end()) return it->second;
        FixedInterval r;
        if (n == 1) {
            r = spec.base.approx(level_fb(1));
        } else if (n % 2 == 0) {
            const FixedInterval& h = power(n / 2);
            r = h.mul(h, level_fb(n));
        } else {
            r = power(n - 1).mul(power(1), level_fb(n));
        }
        return pow_cache.emplace(n, std::move(r)).first->second;
    }

    // a_n enclosure at store_fraction_bits.
    FixedInterval value(long n) {
        long fs = budget.store_fraction_bits();
        if (spec.kind == SeqKind::explicit_list) {
            if (n > spec.max_explicit()) throw Error("explicit sequence has no element " + std::to_string(n));
            return FixedInterval::from_mpq(spec.explicit_values[static_cast<size_t>(n - 1)], fs);
        }
        FixedInterval v = power(n);
        if (spec.scale.is_rational()) {
            const mpq_class& A = spec.scale.rat();
            if (A != 1) v = v.mul_rat(A.get_num(), A.get_den());
        } else {
            v = v.mul(spec.scale.approx(v.frac_bits()), v.frac_bits());
        }
        if (spec.kind == SeqKind::perturbed_geometric) {
            mpq_class f =
                1 + spec.perturbations[static_cast<size_t>((n - 1) % static_cast<long>(spec.perturbations.size()))];
            f.canonicalize();
            if (f != 1) v = v.mul_rat(f.get_num(), f.get_den());
        }
        return v.rescaled(fs);
    }

    // Exact value when all inputs are rational.
    bool exact_value(long n, mpq_class& out) const {
        if (spec.kind == SeqKind::explicit_list) {
            out = spec.explicit_values[static_cast<size_t>(n - 1)];
            return true;
        }
        if (!spec.base.is_rational() || !spec.scale.is_rational()) return false;
        mpz_class pn, pd;
        mpz_pow_ui(pn.get_mpz_t(), spec.base.rat().get_num().get_mpz_t(), static_cast<unsigned long>(n));
        mpz_pow_ui(pd.get_mpz_t(), spec.base.rat().get_den().get_mpz_t(), static_cast<unsigned long>(n));
        out = spec.scale.rat() * mpq_class(pn, pd);
        if (spec.kind == SeqKind::perturbed_geometric)
            out *= 1 + spec.perturbations[static_cast<size_t>((n - 1) % static_cast<long>(spec.perturbations.size()))];
        out.canonicalize();
        return true;
    }

    void check_ratios(long N) {
        switch (spec.kind) {
            case SeqKind::geometric:
            case SeqKind::integer_geometric: {
                // step ratio is exactly `base` for every n
                if (!decide_ge(spec.base, spec.declared_ratio, "base vs declared_ratio"))
                    throw LacunarityViolation("base " + spec.base.repr() + " below declared ratio " +
                                              spec.declared_ratio.repr());
                break;
            }
            case SeqKind::perturbed_geometric: {
                if (!spec.declared_ratio.is_rational())
                    throw Error("perturbed sequence needs a rational declared ratio");
                long T = static_cast<long>(spec.perturbations.size());
                long upto = std::min(N - 1, T);  // ratios repeat with the table period
                for (long n = 1; n <= upto; ++n) {
                    mpq_class fn = 1 + spec.perturbations[static_cast<size_t>((n - 1) % T)];
                    mpq_class fn1 = 1 + spec.perturbations[static_cast<size_t>(n % T)];
                    // need base * fn1 >= declared * fn
                    mpq_class bound = spec.declared_ratio.rat() * fn / fn1;
                    bound.canonicalize();
                    if (spec.base.is_rational()) {
                        if (spec.base.rat() < bound)
                            throw LacunarityViolation("perturbed ratio below declared at n=" + std::to_string(n));
                    } else if (!decide_ge_rat(spec.base, bound, "perturbed ratio")) {
                        throw LacunarityViolation("perturbed ratio below declared at n=" + std::to_string(n));
                    }
                }
                break;
            }
            case SeqKind::explicit_list: {
                if (!spec.declared_ratio.is_rational())
                    throw Error("explicit sequence needs a rational declared ratio");
                const mpq_class& c = spec.declared_ratio.rat();
                for (long n = 1; n < N; ++n) {
                    const mpq_class& a = spec.explicit_values[static_cast<size_t>(n - 1)];
                    const mpq_class& b = spec.explicit_values[static_cast<size_t>(n)];
                    if (b < c * a)
                        throw LacunarityViolation("a_" + std::to_string(n + 1) + "/a_" + std::to_string(n) +
                                                  " falls below declared ratio");
                }
                break;
            }
        }
    }

    void check_input_digits(long N) {
        if (!spec.base_precision_digits) return;
        long D = *spec.base_precision_digits;
        // first-order propagation of +-0.5*10^-D on the base:
        //   alpha_up * A * N * c^(N-1) * 0.5*10^-D < 2^-(target+1)
        double g = spec.growth_log2_upper();
        double log2A = spec.kind != SeqKind::explicit_list ? static_cast<double>(spec.scale.ceil_log2_upper()) : 0.0;
        double lhs = std::log2(budget.alpha_upper) + log2A + std::log2(static_cast<double>(N)) +
                     static_cast<double>(N - 1) * g - static_cast<double>(D) * std::log2(10.0) - 1.0;
        if (lhs >= -static_cast<double>(budget.target_fraction_bits + 1))
            throw PrecisionExhausted("stated base precision (" + std::to_string(D) +
                                     " digits) cannot support N=" + std::to_string(N) +
                                     " at the requested fractional-part target");
    }

    void prepare(long N) {
        if (N < 1) throw Error("N must be >= 1");
        if (spec.kind == SeqKind::explicit_list && N > spec.max_explicit())
            throw Error("explicit sequence shorter than requested N");
        if (budget.working_bits(spec, N) > budget.hard_bit_cap)
            throw PrecisionExhausted("working_bits(" + std::to_string(N) + ") exceeds hard bit cap");
        if (N <= checked_to) return;
        check_input_digits(N);
        check_ratios(N);
        checked_to = N;
    }
};

Materializer::Materializer(LacunarySpec spec, PrecisionBudget budget)
    : impl_(std::make_unique<Impl>(spec, budget)), spec_(std::move(spec)), budget_(budget) {
    spec_.validate();
}

Materializer::~Materializer() = default;

MaterializedSequence Materializer::materialize(long N) {
    impl_->prepare(N);
    MaterializedSequence out;
    out.spec = spec_;
    out.budget = budget_;
    out.values.reserve(static_cast<size_t>(N));
    for (long n = 1; n <= N; ++n) out.values.push_back(impl_->value(n));
    return out;
}

bool Materializer::exact_value(long n, mpq_class& out) const { return impl_->exact_value(n, out); }

TorusSample Materializer::fractional_parts(const RealInput& alpha, long N) {
    if (alpha.sign() <= 0) throw Error("fractional_parts: alpha must be positive");
    PrecisionBudget eff = budget_;
    double aup = std::ldexp(1.0, static_cast<int>(alpha.ceil_log2_upper()));
    if (aup > eff.alpha_upper) eff.alpha_upper = aup;

    Impl* impl = impl_.get();
    std::unique_ptr<Materializer> widened;
    if (eff.store_fraction_bits() != budget_.store_fraction_bits()) {
        widened = std::make_unique<Materializer>(spec_, eff);
        impl = widened->impl_.get();
    }
    impl->prepare(N);
    long fs = eff.store_fraction_bits();

    // Non-rational alpha: one enclosure at the precision the largest a_n needs.
    std::optional<FixedInterval> alpha_enc;
    if (!alpha.is_rational()) {
        FixedInterval vN = impl->value(N);
        long mag = static_cast<long>(mpz_sizeinbase(vN.hi_mant().get_mpz_t(), 2)) - vN.frac_bits();
        alpha_enc = alpha.approx(std::max(0L, mag) + fs);
    }

    TorusSample s;
    s.source = spec_;
    s.alpha = alpha;
    s.N = N;
    s.frac_bits = fs;
    s.mant.resize(static_cast<size_t>(N));
    s.pts.resize(static_cast<size_t>(N));

    auto product = [&](Impl* im, long n, long out_fb) {
        FixedInterval v = im->value(n);
        if (alpha.is_rational()) {
            const mpq_class& a = alpha.rat();
            return a == 1 ? v : v.mul_rat(a.get_num(), a.get_den());
        }
        if (im == impl && out_fb == fs) return v.mul(*alpha_enc, out_fb);
        long mag = static_cast<long>(mpz_sizeinbase(v.hi_mant().get_mpz_t(), 2)) - v.frac_bits();
        return v.mul(alpha.approx(std::max(0L, mag) + out_fb), out_fb);
    };

    std::unique_ptr<Materializer> doubled;  // built on first ambiguity
    for (long n = 1; n <= N; ++n) {
        auto f = product(impl, n, fs).frac();
        if (f && !f->width_le_2exp(-budget_.target_fraction_bits)) f.reset();
        if (!f) {
            // one retry at doubled precision, then fail loudly
            if (!doubled) {
                PrecisionBudget b2 = eff;
                b2.target_fraction_bits = 2 * eff.target_fraction_bits;
                b2.guard_bits = 2 * eff.guard_bits;
                doubled = std::make_unique<Materializer>(spec_, b2);
                doubled->impl_->prepare(N);
            }
            auto f2 = product(doubled->impl_.get(), n, doubled->budget_.store_fraction_bits()).frac();
            if (f2 && !f2->width_le_2exp(-budget_.target_fraction_bits)) f2.reset();
            if (!f2)
                throw NearIntegerAmbiguity("alpha*a_n within 2^-" + std::to_string(budget_.target_fraction_bits) +
                                           " of an integer at n=" + std::to_string(n));
            f = f2->rescaled(fs);
        }
        mpz_class mid = (f->lo_mant() + f->hi_mant()) >> 1;
        s.mant[static_cast<size_t>(n - 1)] = mid;
        s.pts[static_cast<size_t>(n - 1)] = Fixed(mid, fs).to_double();
    }
    return s;
}

MaterializedSequence materialize(const LacunarySpec& spec, long N, const PrecisionBudget& budget) {
    Materializer m(spec, budget);
    return m.materialize(N);
}

TorusSample fractional_parts(const LacunarySpec& spec, const RealInput& alpha, long N,
                             const PrecisionBudget& budget) {
    Materializer m(spec, budget);
    return m.fractional_parts(alpha, N);
}

IntervalCountResult interval_count(const MaterializedSequence& seq, const mpq_class& lo, const mpq_class& hi) {
    if (lo <= 0 || hi < lo) throw Error("interval_count: need 0 < lo <= hi");
    long fs = seq.budget.store_fraction_bits();
    FixedInterval lo_i = FixedInterval::from_mpq(lo, fs);
    FixedInterval hi_i = FixedInterval::from_mpq(hi, fs);
    Materializer exact_helper(seq.spec, seq.budget);
    long count = 0;
    for (long n = 1; n <= seq.size(); ++n) {
        const FixedInterval& v = seq.at(n);
        Cert above = lo_i.le(v);
        Cert below = v.le(hi_i);
        if (above == Cert::yes && below == Cert::yes) {
            ++count;
        } else if (above == Cert::no || below == Cert::no) {
            // certainly outside
        } else {
            mpq_class ev;
            if (!exact_helper.exact_value(n, ev))
                throw Error("interval_count: boundary undecidable for non-rational sequence inputs");
            if (lo <= ev && ev <= hi) ++count;
        }
    }
    IntervalCountResult r;
    r.count = count;
    mpq_class C;
    if (seq.lemma_constant_rational(C)) {
        r.lemma_C = C.get_d();
        mpq_class bound = C * (hi - lo) + 1;
        r.bound = bound.get_d();
        r.bound_ok = mpq_class(count) <= bound;
    } else {
        r.lemma_C = seq.lemma_constant();
        r.bound = r.lemma_C * mpq_class(hi - lo).get_d() + 1.0;
        r.bound_ok = static_cast<double>(count) <= r.bound * (1 + 1e-12);
    }
    return r;
}

IntervalCountResult interval_count(const LacunarySpec& spec, long N, const mpq_class& lo, const mpq_class& hi,
                                   const PrecisionBudget& budget) {
    return interval_count(materialize(spec, N, budget), lo, hi);
}

}  // namespace lacstat
