#include "lacstat/testfn.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace lacstat {

namespace {

constexpr double kPi = std::numbers::pi;

double simpson_rec(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
                   double whole, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = g(lm), frm = g(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return simpson_rec(g, a, m, fa, flm, fm, left, eps * 0.5, depth - 1) +
           simpson_rec(g, m, b, fm, frm, fb, right, eps * 0.5, depth - 1);
}

double sinc(double t) {
    if (std::abs(t) < 1e-8) {
        double z = kPi * t;
        return 1.0 - z * z / 6.0;
    }
    return std::sin(kPi * t) / (kPi * t);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double eps) {
    double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(g, a, b, fa, fm, fb, whole, eps, 48);
}

TestFunction TestFunction::triangle(int dim, double L, double scale) {
    if (dim < 1 || L <= 0) throw Error("triangle: need dim >= 1, L > 0");
    TestFunction f;
    f.family_ = TestFnFamily::triangle;
    f.dim_ = dim;
    f.L_ = L;
    f.scale_ = scale;
    f.integral_ = scale * std::pow(L, dim);
    return f;
}

TestFunction TestFunction::box(int dim, double L, double scale) {
    if (dim < 1 || L <= 0) throw Error("box: need dim >= 1, L > 0");
    TestFunction f;
    f.family_ = TestFnFamily::box;
    f.dim_ = dim;
    f.L_ = L;
    f.scale_ = scale;
    f.box_iv_.assign(static_cast<size_t>(dim), {-L, L});
    f.integral_ = scale * std::pow(2.0 * L, dim);
    return f;
}

TestFunction TestFunction::box_asym(std::vector<std::pair<double, double>> intervals, double scale) {
    if (intervals.empty()) throw Error("box_asym: need at least one interval");
    TestFunction f;
    f.family_ = TestFnFamily::box;
    f.dim_ = static_cast<int>(intervals.size());
    f.scale_ = scale;
    double vol = 1.0, radius = 0.0;
    for (auto& [lo, hi] : intervals) {
        if (!(lo < hi)) throw Error("box_asym: need lo < hi");
        vol *= hi - lo;
        radius = std::max({radius, std::abs(lo), std::abs(hi)});
    }
    f.L_ = radius;
    f.box_iv_ = std::move(intervals);
    f.integral_ = scale * vol;
    return f;
}

double TestFunction::profile_exact_bump(double x) const {
    double t = x / L_;
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

TestFunction TestFunction::bump(int dim, double L, double scale) {
    if (dim < 1 || L <= 0) throw Error("bump: need dim >= 1, L > 0");
    TestFunction f;
    f.family_ = TestFnFamily::smooth_bump;
    f.dim_ = dim;
    f.L_ = L;
    f.scale_ = scale;

    const size_t cells = 4096;
    f.bump_tab_.resize(cells + 1);
    for (size_t i = 0; i <= cells; ++i)
        f.bump_tab_[i] = f.profile_exact_bump(L * static_cast<double>(i) / static_cast<double>(cells));

    // stated interpolation error: measured against the closed form
    double err = 0.0;
    for (size_t i = 0; i < cells; ++i)
        for (int j = 1; j < 4; ++j) {
            double x = L * (static_cast<double>(i) + j / 4.0) / static_cast<double>(cells);
            double lin = f.bump_tab_[i] +
                         (f.bump_tab_[i + 1] - f.bump_tab_[i]) * (j / 4.0);
            err = std::max(err, std::abs(lin - f.profile_exact_bump(x)));
        }
    f.interp_err_ = err * 1.5;

    f.bump_i1_ = 2.0 * adaptive_simpson([&](double x) { return f.profile_exact_bump(x); }, 0.0, L, 1e-13);
    f.integral_ = scale * std::pow(f.bump_i1_, dim);

    // empirical quadratic decay envelope for the truncation tail
    double c2 = 0.0;
    for (double xi = 0.25; xi <= 64.0; xi *= 1.5) {
        double v = std::abs(f.fourier1(xi)) * xi * xi;
        c2 = std::max(c2, v);
    }
    f.bump_env_c2_ = 2.0 * c2;
    return f;
}

std::string TestFunction::family_name() const {
    switch (family_) {
        case TestFnFamily::box:
            return "box";
        case TestFnFamily::triangle:
            return "triangle";
        case TestFnFamily::smooth_bump:
            return "bump";
    }
    return "?";
}

double TestFunction::profile(double x) const {
    switch (family_) {
        case TestFnFamily::triangle: {
            double t = 1.0 - std::abs(x) / L_;
            return t > 0.0 ? t : 0.0;
        }
        case TestFnFamily::smooth_bump: {
            double ax = std::abs(x);
            if (ax >= L_) return 0.0;
            double pos = ax / L_ * static_cast<double>(bump_tab_.size() - 1);
            size_t i = static_cast<size_t>(pos);
            if (i >= bump_tab_.size() - 1) i = bump_tab_.size() - 2;
            double frac = pos - static_cast<double>(i);
            return bump_tab_[i] + (bump_tab_[i + 1] - bump_tab_[i]) * frac;
        }
        case TestFnFamily::box:
            return 0.0;  // handled in evaluate (per-dim intervals)
    }
    return 0.0;
}

double TestFunction::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_) throw Error("evaluate: dimension mismatch");
    if (family_ == TestFnFamily::box) {
        for (int i = 0; i < dim_; ++i) {
            auto [lo, hi] = box_iv_[static_cast<size_t>(i)];
            if (x[static_cast<size_t>(i)] < lo || x[static_cast<size_t>(i)] > hi) return 0.0;
        }
        return scale_;
    }
    double v = scale_;
    for (int i = 0; i < dim_; ++i) {
        v *= profile(x[static_cast<size_t>(i)]);
        if (v == 0.0) return 0.0;
    }
    return v;
}

double TestFunction::evaluate1(double x) const { return evaluate(std::span<const double>(&x, 1)); }

double TestFunction::fourier1(double xi) const {
    switch (family_) {
        case TestFnFamily::triangle: {
            double s = sinc(L_ * xi);
            return L_ * s * s;
        }
        case TestFnFamily::smooth_bump: {
            // cosine transform of the even profile, adaptive quadrature
            double eps = 1e-12;
            return 2.0 * adaptive_simpson(
                             [&](double x) { return profile_exact_bump(x) * std::cos(2.0 * kPi * x * xi); }, 0.0,
                             L_, eps);
        }
        case TestFnFamily::box:
            throw Error("fourier1: box handled per-interval");
    }
    return 0.0;
}

std::complex<double> TestFunction::fourier(std::span<const double> xi) const {
    if (static_cast<int>(xi.size()) != dim_) throw Error("fourier: dimension mismatch");
    if (family_ == TestFnFamily::box) {
        std::complex<double> v = scale_;
        for (int i = 0; i < dim_; ++i) {
            auto [lo, hi] = box_iv_[static_cast<size_t>(i)];
            double s = xi[static_cast<size_t>(i)];
            if (s == 0.0) {
                v *= hi - lo;
            } else {
                // (e^(-2pi i lo s) - e^(-2pi i hi s)) / (2 pi i s)
                std::complex<double> num = std::polar(1.0, -2.0 * kPi * lo * s) - std::polar(1.0, -2.0 * kPi * hi * s);
                v *= num / std::complex<double>(0.0, 2.0 * kPi * s);
            }
        }
        return v;
    }
    double v = scale_;
    for (int i = 0; i < dim_; ++i) v *= fourier1(xi[static_cast<size_t>(i)]);
    return v;
}

double TestFunction::fourier_real(std::span<const double> xi) const {
    std::complex<double> v = fourier(xi);
    return v.real();
}

double TestFunction::tail_envelope_sum(double freq_scale, long T) const {
    if (T < 0) throw Error("tail_envelope_sum: T >= 0");
    double N = freq_scale;
    // sum_{n > T} n^-2, integral bound (zeta(2) at T = 0)
    double zeta_tail = T == 0 ? kPi * kPi / 6.0 : 1.0 / static_cast<double>(T);
    switch (family_) {
        case TestFnFamily::triangle:
            // |fhat(xi)| <= L (pi L xi)^-2
            return scale_ * 2.0 * N * N / (L_ * kPi * kPi) * zeta_tail;
        case TestFnFamily::smooth_bump:
            // empirical C2/xi^2 envelope recorded at construction
            return scale_ * bump_env_c2_ * N * N * zeta_tail;
        case TestFnFamily::box:
            throw SlowDecay("box family has no certified spectral tail");
    }
    throw Error("bad family");
}

TestFunction TestFunction::scaled(double factor) const {
    TestFunction f = *this;
    f.scale_ *= factor;
    f.integral_ *= factor;
    return f;
}

}  // namespace lacstat
