#pragma once

#include <string>
#include <vector>

#include "lacstat/sequences.hpp"
#include "lacstat/testfn.hpp"

namespace lacstat {

// Ordered fractional parts, normalized nearest-neighbour gaps (wrap
// convention: the last gap closes the circle), and the KS distance of the
// gap empirical CDF from 1 - e^-s.
struct GapProfile {
    long N = 0;
    std::vector<double> ordered_points;
    std::vector<double> gaps;  // N entries, mean 1
    double ks_distance = 0.0;

    // Fraction of gaps in [lo, hi].
    double empirical_measure(double lo, double hi) const;
    // Fixed-width histogram over [0, max_s).
    void histogram(double max_s, int bins, std::vector<double>& edges, std::vector<long>& counts) const;
};

GapProfile gap_profile(const TorusSample& sample);
GapProfile gap_profile_points(const std::vector<double>& pts);

enum class CorrMethod { direct_windowed, naive_reference, poisson_summation };

struct CorrelationEstimate {
    int k = 2;
    long N = 0;
    double value = 0.0;
    CorrMethod method = CorrMethod::direct_windowed;
    long truncation = 0;      // poisson_summation
    double tail_bound = 0.0;  // poisson_summation
    std::string test_function;

    std::string method_name() const;
};

// The k-level correlation sum R_k over distinct tuples, computed by
// circular neighbour-window chaining. Requires N > 2L and tf.dim == k-1.
CorrelationEstimate correlation_direct(const TorusSample& sample, int k, const TestFunction& tf,
                                       int threads = 1);

// Full enumeration over all distinct tuples and all shifts m with
// ||m||_inf <= 1 + ceil(L/N). Reference oracle, cost-guarded.
CorrelationEstimate correlation_naive(const TorusSample& sample, int k, const TestFunction& tf);

// Fourier-side evaluation of R_2 truncated at |n| <= T, with a reported
// envelope bound on the discarded tail. Phases are reduced mod 1 on the
// sample's full-precision mantissas before any trigonometry.
CorrelationEstimate correlation_poisson_k2(const TorusSample& sample, const TestFunction& tf, long T,
                                           int threads = 1);

// C_k(N) = (1 - 1/N) ... (1 - (k-1)/N).
double c_k_factor(int k, long N);

}  // namespace lacstat
