#include "lacstat/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lacstat/parallel.hpp"

namespace lacstat {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double GapProfile::empirical_measure(double lo, double hi) const {
    long c = 0;
    for (double g : gaps)
        if (g >= lo && g <= hi) ++c;
    return static_cast<double>(c) / static_cast<double>(N);
}

void GapProfile::histogram(double max_s, int bins, std::vector<double>& edges, std::vector<long>& counts) const {
    edges.resize(static_cast<size_t>(bins) + 1);
    counts.assign(static_cast<size_t>(bins) + 1, 0);  // counts[bins] collects gaps >= max_s
    for (int b = 0; b <= bins; ++b) edges[static_cast<size_t>(b)] = max_s * b / bins;
    for (double g : gaps) {
        int b = g >= max_s ? bins : static_cast<int>(g / max_s * bins);
        counts[static_cast<size_t>(std::min(b, bins))]++;
    }
}

GapProfile gap_profile_points(const std::vector<double>& pts) {
    long N = static_cast<long>(pts.size());
    if (N < 2) throw Error("gap_profile: need N >= 2");
    GapProfile p;
    p.N = N;
    p.ordered_points = pts;
    std::sort(p.ordered_points.begin(), p.ordered_points.end());
    p.gaps.resize(static_cast<size_t>(N));
    double dN = static_cast<double>(N);
    for (long n = 0; n + 1 < N; ++n)
        p.gaps[static_cast<size_t>(n)] =
            dN * (p.ordered_points[static_cast<size_t>(n + 1)] - p.ordered_points[static_cast<size_t>(n)]);
    p.gaps[static_cast<size_t>(N - 1)] = dN * (1.0 + p.ordered_points.front() - p.ordered_points.back());

    // KS distance against Exp(1); sup over both sides of each jump.
    std::vector<double> sg = p.gaps;
    std::sort(sg.begin(), sg.end());
    double d = 0.0;
    for (long i = 0; i < N; ++i) {
        double F = 1.0 - std::exp(-sg[static_cast<size_t>(i)]);
        d = std::max(d, F - static_cast<double>(i) / dN);
        d = std::max(d, static_cast<double>(i + 1) / dN - F);
    }
    p.ks_distance = d;
    return p;
}

GapProfile gap_profile(const TorusSample& sample) { return gap_profile_points(sample.pts); }

std::string CorrelationEstimate::method_name() const {
    switch (method) {
        case CorrMethod::direct_windowed:
            return "direct";
        case CorrMethod::naive_reference:
            return "naive";
        case CorrMethod::poisson_summation:
            return "poisson";
    }
    return "?";
}

namespace {

// signed circular difference in [-1/2, 1/2)
inline double circ_signed(double a, double b) {
    double w = a - b;
    if (w >= 0.5) w -= 1.0;
    if (w < -0.5) w += 1.0;
    return w;
}

}  // namespace

CorrelationEstimate correlation_direct(const TorusSample& sample, int k, const TestFunction& tf, int threads) {
    if (k < 2 || k > 4) throw Error("correlation_direct: need 2 <= k <= 4");
    if (tf.dim() != k - 1) throw Error("correlation_direct: tf.dim must be k-1");
    long N = sample.N;
    double L = tf.support_radius();
    if (static_cast<double>(N) <= 2.0 * L)
        throw SupportTooWide("correlation_direct requires N > 2L (N=" + std::to_string(N) +
                             ", L=" + std::to_string(L) + ")");

    std::vector<double> q = sample.pts;
    std::sort(q.begin(), q.end());
    double r = L / static_cast<double>(N);

    // neighbour windows are circular arcs in sorted order
    std::vector<long> fwd(static_cast<size_t>(N)), bck(static_cast<size_t>(N));
    for (long i = 0; i < N; ++i) {
        long t = 0;
        while (t + 1 < N) {
            long j = i + t + 1;
            double d = j < N ? q[static_cast<size_t>(j)] - q[static_cast<size_t>(i)]
                             : q[static_cast<size_t>(j - N)] + 1.0 - q[static_cast<size_t>(i)];
            if (d > r) break;
            ++t;
        }
        fwd[static_cast<size_t>(i)] = t;
        t = 0;
        while (t + 1 < N) {
            long j = i - t - 1;
            double d = j >= 0 ? q[static_cast<size_t>(i)] - q[static_cast<size_t>(j)]
                              : q[static_cast<size_t>(i)] - q[static_cast<size_t>(j + N)] + 1.0;
            if (d > r) break;
            ++t;
        }
        bck[static_cast<size_t>(i)] = t;
    }

    const double dN = static_cast<double>(N);
    auto run_range = [&](long begin, long end) -> double {
        double acc = 0.0;
        double dvec[3];
        long used[4];
        auto chain = [&](auto&& self, long cur, int depth) -> void {
            long lo = cur - bck[static_cast<size_t>(cur)];
            long hi = cur + fwd[static_cast<size_t>(cur)];
            if (hi - lo + 1 > N) {  // degenerate clustering: window wrapped fully
                lo = cur - N + 1;
                hi = cur;
            }
            for (long jj = lo; jj <= hi; ++jj) {
                long j = jj < 0 ? jj + N : (jj >= N ? jj - N : jj);
                bool dup = false;
                for (int u = 0; u <= depth; ++u)
                    if (used[u] == j) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                double d = circ_signed(q[static_cast<size_t>(cur)], q[static_cast<size_t>(j)]);
                if (std::abs(d) * dN > L) continue;
                dvec[depth] = dN * d;
                if (depth == k - 2) {
                    acc += tf.evaluate(std::span<const double>(dvec, static_cast<size_t>(k - 1)));
                } else {
                    used[depth + 1] = j;
                    self(self, j, depth + 1);
                }
            }
        };
        for (long i = begin; i < end; ++i) {
            used[0] = i;
            chain(chain, i, 0);
        }
        return acc;
    };

    // fixed-size chunks keep the summation tree independent of thread count
    auto partials = parallel_chunks<double>(N, 64, threads, [&](long b, long e) { return run_range(b, e); });
    double total = 0.0;
    for (double p : partials) total += p;

    CorrelationEstimate est;
    est.k = k;
    est.N = N;
    est.method = CorrMethod::direct_windowed;
    est.value = total / dN;
    est.test_function = tf.family_name();
    return est;
}

CorrelationEstimate correlation_naive(const TorusSample& sample, int k, const TestFunction& tf) {
    if (k < 2 || k > 4) throw Error("correlation_naive: need 2 <= k <= 4");
    if (tf.dim() != k - 1) throw Error("correlation_naive: tf.dim must be k-1");
    long N = sample.N;
    if (N > 500 || (k == 4 && N > 80))
        throw CostGuardExceeded("correlation_naive: N too large for full enumeration");

    double L = tf.support_radius();
    long mr = 1 + static_cast<long>(std::ceil(L / static_cast<double>(N)));
    const std::vector<double>& p = sample.pts;
    const double dN = static_cast<double>(N);

    double total = 0.0;
    long idx[4];
    double dvec[3], shifted[3];
    long m[3] = {0, 0, 0};
    auto mloop = [&](auto&& self, int md) -> void {
        if (md == k - 1) {
            for (int t = 0; t < k - 1; ++t) shifted[t] = dN * (dvec[t] - static_cast<double>(m[t]));
            total += tf.evaluate(std::span<const double>(shifted, static_cast<size_t>(k - 1)));
            return;
        }
        for (m[md] = -mr; m[md] <= mr; ++m[md]) self(self, md + 1);
    };
    auto tuples = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            for (int t = 0; t < k - 1; ++t)
                dvec[t] = p[static_cast<size_t>(idx[t])] - p[static_cast<size_t>(idx[t + 1])];
            mloop(mloop, 0);
            return;
        }
        for (long i = 0; i < N; ++i) {
            bool dup = false;
            for (int u = 0; u < depth; ++u)
                if (idx[u] == i) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            idx[depth] = i;
            self(self, depth + 1);
        }
    };
    tuples(tuples, 0);

    CorrelationEstimate est;
    est.k = k;
    est.N = N;
    est.method = CorrMethod::naive_reference;
    est.value = total / dN;
    est.test_function = tf.family_name();
    return est;
}

CorrelationEstimate correlation_poisson_k2(const TorusSample& sample, const TestFunction& tf, long T,
                                           int threads) {
    if (tf.dim() != 1) throw Error("correlation_poisson_k2: tf.dim must be 1");
    if (!tf.has_certified_tail()) throw SlowDecay("correlation_poisson_k2 requires a certified spectral tail");
    if (T < 0) throw Error("correlation_poisson_k2: T must be >= 0");
    long N = sample.N;
    if (N < 2) throw Error("correlation_poisson_k2: need N >= 2");

    const double dN = static_cast<double>(N);
    double zero = 0.0;
    double value = c_k_factor(2, N) * tf.fourier_real(std::span<const double>(&zero, 1));

    long fb = sample.frac_bits;
    bool fast = fb >= 54 && fb <= 120;

    // |S(n alpha)|^2 - N for n in [nb, ne); phases (n * mant_x) mod 2^fb are
    // exact integer arithmetic, converted to double only per evaluation.
    auto sum_range = [&](long nb, long ne) -> double {
        double acc = 0.0;
        if (fast) {
            const unsigned __int128 one = 1;
            const unsigned __int128 mask = (one << fb) - 1;
            std::vector<unsigned __int128> step(static_cast<size_t>(N)), ph(static_cast<size_t>(N));
            for (long x = 0; x < N; ++x) {
                unsigned __int128 v = 0;
                const mpz_class& mz = sample.mant[static_cast<size_t>(x)];
                for (size_t limb = mpz_size(mz.get_mpz_t()); limb-- > 0;)
                    v = (v << 64) | mpz_getlimbn(mz.get_mpz_t(), static_cast<mp_size_t>(limb));
                step[static_cast<size_t>(x)] = v & mask;
                ph[static_cast<size_t>(x)] = (v * static_cast<unsigned __int128>(nb)) & mask;
            }
            const int shift = static_cast<int>(fb - 53);
            for (long n = nb; n < ne; ++n) {
                double cs = 0.0, sn = 0.0;
                for (long x = 0; x < N; ++x) {
                    double theta =
                        static_cast<double>(static_cast<std::uint64_t>(ph[static_cast<size_t>(x)] >> shift)) *
                        0x1.0p-53;
                    cs += std::cos(kTwoPi * theta);
                    sn += std::sin(kTwoPi * theta);
                    ph[static_cast<size_t>(x)] = (ph[static_cast<size_t>(x)] + step[static_cast<size_t>(x)]) & mask;
                }
                double xi = static_cast<double>(n) / dN;
                acc += tf.fourier_real(std::span<const double>(&xi, 1)) * (cs * cs + sn * sn - dN);
            }
        } else {
            mpz_class phz;
            for (long n = nb; n < ne; ++n) {
                double cs = 0.0, sn = 0.0;
                for (long x = 0; x < N; ++x) {
                    phz = sample.mant[static_cast<size_t>(x)] * n;
                    mpz_fdiv_r_2exp(phz.get_mpz_t(), phz.get_mpz_t(), static_cast<mp_bitcnt_t>(fb));
                    double theta = Fixed(phz, fb).to_double();
                    cs += std::cos(kTwoPi * theta);
                    sn += std::sin(kTwoPi * theta);
                }
                double xi = static_cast<double>(n) / dN;
                acc += tf.fourier_real(std::span<const double>(&xi, 1)) * (cs * cs + sn * sn - dN);
            }
        }
        return acc;
    };

    double series = 0.0;
    if (T >= 1) {
        auto partials =
            parallel_chunks<double>(T, 512, threads, [&](long b, long e) { return sum_range(b + 1, e + 1); });
        for (double p : partials) series += p;
    }
    // +-n contribute equally: fhat is real and even, |S(-theta)| = |S(theta)|
    value += 2.0 * series / (dN * dN);

    CorrelationEstimate est;
    est.k = 2;
    est.N = N;
    est.method = CorrMethod::poisson_summation;
    est.truncation = T;
    est.tail_bound = tf.tail_envelope_sum(dN, T);
    est.value = value;
    est.test_function = tf.family_name();
    return est;
}

double c_k_factor(int k, long N) {
    if (k < 1) throw Error("c_k_factor: k >= 1");
    if (N < k) throw Error("c_k_factor: need N >= k");
    double v = 1.0;
    for (int j = 1; j <= k - 1; ++j) v *= 1.0 - static_cast<double>(j) / static_cast<double>(N);
    return v;
}

}  // namespace lacstat
