#include "wvctx/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wvctx::qmath {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double real_trace_product(const CMat& a, const CMat& b) { return (a * b).trace().real(); }

}  // namespace

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::adjoint() const {
    CMat r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Complex CMat::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMat::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double CMat::max_abs_diff(const CMat& other) const {
    require_same_dim(dim_, other.dim_, "max_abs_diff");
    double m = 0.0;
    for (size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - other.a_[k]));
    return m;
}

bool CMat::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

CMat& CMat::operator+=(const CMat& rhs) {
    require_same_dim(dim_, rhs.dim_, "operator+");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

CMat& CMat::operator-=(const CMat& rhs) {
    require_same_dim(dim_, rhs.dim_, "operator-");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

CMat& CMat::operator*=(Complex scalar) {
    for (auto& z : a_) z *= scalar;
    return *this;
}

CMat operator*(const CMat& lhs, const CMat& rhs) {
    require_same_dim(lhs.dim(), rhs.dim(), "operator*");
    const int n = lhs.dim();
    CMat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex lik = lhs(i, k);
            if (lik == 0.0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += lik * rhs(k, j);
        }
    return r;
}

CMat outer_projector(std::span<const Complex> v) {
    const int n = static_cast<int>(v.size());
    double norm2 = 0.0;
    for (const auto& z : v) norm2 += std::norm(z);
    if (norm2 <= 0.0) throw std::invalid_argument("outer_projector: zero vector");
    CMat m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]) / norm2;
    return m;
}

HermitianOperator::HermitianOperator(CMat m, double tol) : m_(std::move(m)) {
    if (!m_.is_hermitian(tol)) throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
}

DensityState::DensityState(CMat m) : m_(std::move(m)) {
    if (!m_.is_hermitian(1e-12)) throw std::invalid_argument("DensityState: not Hermitian");
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > 1e-12) throw std::invalid_argument("DensityState: trace is not 1");
    const auto eig = jacobi_eigensystem(m_);
    for (double v : eig.values)
        if (v < -1e-10) throw std::invalid_argument("DensityState: negative eigenvalue");
}

DensityState DensityState::pure(std::span<const Complex> amplitudes) {
    return DensityState(outer_projector(amplitudes));
}

DensityState DensityState::maximally_mixed(int dim) {
    CMat m = CMat::identity(dim);
    m *= Complex(1.0 / dim, 0.0);
    return DensityState(std::move(m));
}

Effect::Effect(CMat m) : m_(std::move(m)) {
    if (!m_.is_hermitian(1e-12)) throw std::invalid_argument("Effect: not Hermitian");
    const auto eig = jacobi_eigensystem(m_);
    for (double v : eig.values)
        if (v < -1e-10 || v > 1.0 + 1e-10)
            throw std::invalid_argument("Effect: eigenvalue outside [0, 1]");
}

Effect Effect::identity(int dim) { return Effect(CMat::identity(dim)); }

Effect Effect::projector(std::span<const Complex> vec) { return Effect(outer_projector(vec)); }

Effect Effect::complement() const { return Effect(CMat::identity(dim()) - m_); }

bool Effect::is_projector(double tol) const { return (m_ * m_).max_abs_diff(m_) <= tol; }

EigenSystem jacobi_eigensystem(CMat a) {
    const int n = a.dim();
    if (n == 0) throw std::invalid_argument("jacobi_eigensystem: empty matrix");
    CMat v = CMat::identity(n);
    const double scale = std::max(a.frobenius_norm(), 1.0);

    auto off_norm2 = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return s;
    };

    for (int sweep = 0; sweep < 100 && off_norm2() > 1e-30 * scale * scale; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-18 * scale) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                // Phase-rotate the (p,q) block to a real symmetric 2x2, then
                // apply the classic Jacobi rotation that annihilates it.
                const Complex phase = apq / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: A <- A * J with J[p][p]=c, J[p][q]=s,
                // J[q][p]=-s*conj(phase), J[q][q]=c*conj(phase).
                for (int i = 0; i < n; ++i) {
                    const Complex tp = a(i, p), tq = a(i, q);
                    a(i, p) = c * tp - s * std::conj(phase) * tq;
                    a(i, q) = s * tp + c * std::conj(phase) * tq;
                }
                // Rows: A <- J^dagger * A.
                for (int j = 0; j < n; ++j) {
                    const Complex tp = a(p, j), tq = a(q, j);
                    a(p, j) = c * tp - s * phase * tq;
                    a(q, j) = s * tp + c * phase * tq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
                for (int i = 0; i < n; ++i) {
                    const Complex tp = v(i, p), tq = v(i, q);
                    v(i, p) = c * tp - s * std::conj(phase) * tq;
                    v(i, q) = s * tp + c * std::conj(phase) * tq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = CMat(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

SpectralDecomposition herm_eigendecomp(const HermitianOperator& h, double degeneracy_tol) {
    const auto eig = jacobi_eigensystem(h.mat());
    const int n = h.dim();

    SpectralDecomposition dec;
    int k = 0;
    while (k < n) {
        int j = k;
        double sum = 0.0;
        CMat proj(n);
        // Cluster eigenvalues whose consecutive gaps stay within tolerance.
        while (j < n && (j == k || eig.values[j] - eig.values[j - 1] <= degeneracy_tol)) {
            sum += eig.values[j];
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    proj(r, c) += eig.vectors(r, j) * std::conj(eig.vectors(c, j));
            ++j;
        }
        dec.eigenvalues.push_back(sum / (j - k));
        dec.projectors.emplace_back(std::move(proj));
        k = j;
    }
    return dec;
}

Complex kd_quasiprob(const DensityState& rho, const Effect& e, const Effect& f) {
    require_same_dim(rho.dim(), e.dim(), "kd_quasiprob");
    require_same_dim(rho.dim(), f.dim(), "kd_quasiprob");
    return (f.mat() * e.mat() * rho.mat()).trace();
}

Complex weak_value(const DensityState& rho, const Effect& e, const Effect& f) {
    const double denom = real_trace_product(f.mat(), rho.mat());
    if (denom <= 1e-12)
        throw std::domain_error("weak_value: pre- and postselection are orthogonal");
    return kd_quasiprob(rho, e, f) / denom;
}

WeakValueBreakdown weak_value_observable(const DensityState& rho, const HermitianOperator& o,
                                         const Effect& f, double hull_tol, double imag_tol) {
    const auto dec = herm_eigendecomp(o);
    WeakValueBreakdown out;
    out.eigenvalues = dec.eigenvalues;
    out.total = 0.0;
    for (size_t i = 0; i < dec.projectors.size(); ++i) {
        const Complex wv = weak_value(rho, dec.projectors[i], f);
        out.projector_weak_values.push_back(wv);
        out.total += dec.eigenvalues[i] * wv;
    }
    const double lo = dec.eigenvalues.front(), hi = dec.eigenvalues.back();
    out.anomalous = out.total.real() < lo - hull_tol || out.total.real() > hi + hull_tol ||
                    std::abs(out.total.imag()) > imag_tol;
    return out;
}

double gaussian_overlap(double a, double b, double s, double upper) {
    if (!(s > 0.0)) throw std::invalid_argument("gaussian_overlap: s must be positive");
    const double full = std::exp(-(a - b) * (a - b) / (4.0 * s * s));
    if (std::isinf(upper)) return upper > 0.0 ? full : 0.0;
    return full * 0.5 * std::erfc((0.5 * (a + b) - upper) / s);
}

double erfi(double t) {
    // 2/sqrt(pi) * sum t^(2n+1) / (n! (2n+1)); positive terms, no cancellation.
    const double t2 = t * t;
    double term = t;
    double sum = t;
    for (int n = 1; n < 300; ++n) {
        term *= t2 / n;
        const double contrib = term / (2 * n + 1);
        sum += contrib;
        if (std::abs(contrib) < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 / std::sqrt(M_PI) * sum;
}

ErfFamily erf_family(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("erf_family: non-finite argument");
    return ErfFamily{std::erf(t), std::erfc(t), erfi(t)};
}

}  // namespace wvctx::qmath
