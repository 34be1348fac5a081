#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "wvctx/qmath.hpp"

// Test-side oracles, independent of the library's closed forms: adaptive
// quadrature for every Gaussian integral and seeded random state sampling.

namespace wvctx::testsupport {

using qmath::CMat;
using qmath::Complex;
using qmath::DensityState;
using qmath::Effect;

inline double simpson_slice(const std::function<double(double)>& f, double a, double m, double b,
                            double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_slice(f, a, lm, m, fa, flm, fm);
    const double right = simpson_slice(f, m, rm, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson_slice(f, a, m, b, fa, fm, fb), tol, 48);
}

/// Unit-norm Gaussian wavefunction of the pointer.
inline double pointer_gaussian(double x, double s) {
    return std::pow(M_PI * s * s, -0.25) * std::exp(-x * x / (2.0 * s * s));
}

/// Quadrature version of the overlap integral, for checking the closed form.
inline double overlap_by_quadrature(double a, double b, double s, double upper) {
    const double lo = std::min(a, b) - 30.0 * s;
    const double hi = std::isinf(upper) ? std::max(a, b) + 30.0 * s : upper;
    if (hi <= lo) return 0.0;
    return integrate([&](double x) { return pointer_gaussian(x - a, s) * pointer_gaussian(x - b, s); },
                     lo, hi);
}

class StateSampler {
  public:
    explicit StateSampler(uint64_t seed) : gen_(seed) {}

    std::vector<Complex> unit_vector(int dim, bool complex_entries) {
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<Complex> v(dim);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& z : v) {
                z = Complex(normal(gen_), complex_entries ? normal(gen_) : 0.0);
                norm2 += std::norm(z);
            }
        } while (norm2 < 1e-6);
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& z : v) z *= inv;
        return v;
    }

    DensityState pure_state(int dim, bool complex_entries) {
        return DensityState::pure(unit_vector(dim, complex_entries));
    }

    DensityState mixed_state(int dim, bool complex_entries) {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double w = uni(gen_);
        const CMat a = qmath::outer_projector(unit_vector(dim, complex_entries));
        const CMat b = qmath::outer_projector(unit_vector(dim, complex_entries));
        return DensityState(Complex(w, 0) * a + Complex(1.0 - w, 0) * b);
    }

    Effect projector(int dim, bool complex_entries) {
        return Effect::projector(unit_vector(dim, complex_entries));
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    std::mt19937_64& raw() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

/// The anomalous reference instance: p_F = 1/5, weak value -1/2 and, at
/// s = s_for_disturbance(1/20), p_d = 1/20.
struct AnomalousInstance {
    DensityState rho;
    Effect e;
    Effect postselection;
};

inline AnomalousInstance anomalous_instance() {
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> psi = {Complex(r, 0), Complex(r, 0)};
    const std::vector<Complex> e1 = {Complex(0, 0), Complex(1, 0)};
    const double n = 1.0 / std::sqrt(10.0);
    const std::vector<Complex> phi = {Complex(3.0 * n, 0), Complex(-n, 0)};
    return AnomalousInstance{DensityState::pure(psi), Effect::projector(e1), Effect::projector(phi)};
}

}  // namespace wvctx::testsupport
