#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lacstat/errors.hpp"

namespace lacstat {

enum class TestFnFamily { box, triangle, smooth_bump };

// Compactly supported test function on R^dim, a tensor product of
// identical 1-d profiles (box supports may be asymmetric per coordinate).
// Fourier convention: fhat(xi) = integral f(x) e^(-2 pi i x.xi) dx.
class TestFunction {
public:
    static TestFunction triangle(int dim, double L, double scale = 1.0);
    static TestFunction box(int dim, double L, double scale = 1.0);
    static TestFunction box_asym(std::vector<std::pair<double, double>> intervals, double scale = 1.0);
    static TestFunction bump(int dim, double L, double scale = 1.0);

    TestFnFamily family() const { return family_; }
    int dim() const { return dim_; }
    double support_radius() const { return L_; }
    double scale() const { return scale_; }
    double integral() const { return integral_; }
    std::string family_name() const;

    double evaluate(std::span<const double> x) const;
    double evaluate1(double x) const;  // dim == 1 convenience

    // Complex in general (asymmetric boxes); symmetric families are real.
    std::complex<double> fourier(std::span<const double> xi) const;
    double fourier_real(std::span<const double> xi) const;
    double fourier1(double xi) const;  // 1-d profile transform (no scale)

    // Whether a certified spectral tail envelope is available (triangle,
    // bump). Box decays too slowly for truncation bounds.
    bool has_certified_tail() const { return family_ != TestFnFamily::box; }

    // Upper bound on sum_{|n|>T} |fhat(n/T_scale)| in dimension 1.
    // Throws SlowDecay for box.
    double tail_envelope_sum(double freq_scale, long T) const;

    // Bump evaluation is interpolated; the stated error bound of the
    // interpolation (max |interp - exact| on the 1-d profile).
    double interpolation_error_bound() const { return interp_err_; }

    TestFunction scaled(double factor) const;

private:
    TestFnFamily family_ = TestFnFamily::triangle;
    int dim_ = 1;
    double L_ = 1.0;
    double scale_ = 1.0;
    double integral_ = 0.0;
    std::vector<std::pair<double, double>> box_iv_;  // per-dim [lo,hi] for boxes
    // bump profile table on [0, L], uniform grid, linear interpolation
    std::vector<double> bump_tab_;
    double interp_err_ = 0.0;
    double bump_i1_ = 0.0;        // 1-d profile integral
    double bump_env_c2_ = 0.0;    // empirical |fhat| xi^2 envelope

    double profile(double x) const;          // 1-d factor (no scale)
    double profile_exact_bump(double x) const;
};

// Adaptive Simpson quadrature of g on [a,b] to absolute accuracy eps.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double eps);

}  // namespace lacstat
