#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

// Finite-dimensional complex linear algebra, spectral decompositions,
// Kirkwood-Dirac quasiprobabilities, weak values and the closed-form
// Gaussian overlap integrals used by the measurement schemes.

namespace wvctx::qmath {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Dimensions here are tiny
/// (qubits/qutrits, at most dim 16), so no attempt is made at sparsity.
class CMat {
  public:
    CMat() = default;
    explicit CMat(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    static CMat identity(int dim);
    static CMat zero(int dim) { return CMat(dim); }

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    CMat adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs_diff(const CMat& other) const;
    bool is_hermitian(double tol) const;

    CMat& operator+=(const CMat& rhs);
    CMat& operator-=(const CMat& rhs);
    CMat& operator*=(Complex scalar);

    friend CMat operator+(CMat lhs, const CMat& rhs) { return lhs += rhs; }
    friend CMat operator-(CMat lhs, const CMat& rhs) { return lhs -= rhs; }
    friend CMat operator*(Complex scalar, CMat rhs) { return rhs *= scalar; }
    friend CMat operator*(const CMat& lhs, const CMat& rhs);

  private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

/// Rank-1 projector |v><v| from a (not necessarily normalized) vector.
CMat outer_projector(std::span<const Complex> v);

// Strong wrappers. Construction validates the defining invariant and throws
// std::invalid_argument on violation, so downstream code can assume it.

class HermitianOperator {
  public:
    explicit HermitianOperator(CMat m, double tol = 1e-12);
    const CMat& mat() const { return m_; }
    int dim() const { return m_.dim(); }

  private:
    CMat m_;
};

/// Unit-trace positive matrix (eigenvalues >= -1e-10 tolerated for
/// numerically constructed states).
class DensityState {
  public:
    explicit DensityState(CMat m);
    static DensityState pure(std::span<const Complex> amplitudes);
    static DensityState pure(std::initializer_list<Complex> amplitudes) {
        return pure(std::span<const Complex>(amplitudes.begin(), amplitudes.size()));
    }
    static DensityState maximally_mixed(int dim);
    const CMat& mat() const { return m_; }
    int dim() const { return m_.dim(); }

  private:
    CMat m_;
};

/// POVM element: Hermitian with spectrum in [0, 1] (within 1e-10).
class Effect {
  public:
    explicit Effect(CMat m);
    static Effect identity(int dim);
    static Effect projector(std::span<const Complex> vec);
    static Effect projector(std::initializer_list<Complex> vec) {
        return projector(std::span<const Complex>(vec.begin(), vec.size()));
    }
    const CMat& mat() const { return m_; }
    int dim() const { return m_.dim(); }
    Effect complement() const;
    bool is_projector(double tol = 1e-10) const;

  private:
    CMat m_;
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending, degeneracies merged
    std::vector<Effect> projectors;   // same order, sum to identity
};

/// Eigenvalues and eigenvectors (columns) of a Hermitian matrix, computed
/// by cyclic Jacobi rotations. Ascending eigenvalue order.
struct EigenSystem {
    std::vector<double> values;
    CMat vectors;
};

EigenSystem jacobi_eigensystem(CMat hermitian);

/// Spectral decomposition with eigenvalues closer than degeneracy_tol
/// merged into a single eigenprojector.
SpectralDecomposition herm_eigendecomp(const HermitianOperator& h, double degeneracy_tol = 1e-9);

/// Kirkwood-Dirac quasiprobability Tr(F E rho). Complex in general.
Complex kd_quasiprob(const DensityState& rho, const Effect& e, const Effect& f);

/// Generalized weak value Tr(F E rho) / Tr(F rho). Throws std::domain_error
/// when the pre- and postselection are (numerically) orthogonal,
/// Tr(F rho) <= 1e-12.
Complex weak_value(const DensityState& rho, const Effect& e, const Effect& f);

struct WeakValueBreakdown {
    Complex total;
    std::vector<double> eigenvalues;
    std::vector<Complex> projector_weak_values;  // one per eigenprojector
    bool anomalous;  // total outside the eigenvalue hull or with |Im| above tolerance
};

/// Weak value of an observable via its spectral decomposition,
/// sum_i o_i <E_i>, together with the per-projector weak values.
/// The anomaly thresholds default to 1e-10 and are caller-tunable.
WeakValueBreakdown weak_value_observable(const DensityState& rho, const HermitianOperator& o,
                                         const Effect& f, double hull_tol = 1e-10,
                                         double imag_tol = 1e-10);

/// Closed form of int_{-inf}^{upper} G_s(x-a) G_s(x-b) dx for the unit-norm
/// Gaussian G_s(x) = (pi s^2)^{-1/4} exp(-x^2 / 2s^2):
///
///   exp(-(a-b)^2 / 4s^2) * erfc(((a+b)/2 - upper) / s) / 2
///
/// upper may be +infinity (full-line value exp(-(a-b)^2/4s^2)).
double gaussian_overlap(double a, double b, double s, double upper);

struct ErfFamily {
    double erf;
    double erfc;
    double erfi;  // -i erf(it), real for real arguments
};

ErfFamily erf_family(double t);

/// Imaginary error function by its Maclaurin series; every use in this
/// library has |t| < 1 where a handful of terms reach full precision.
double erfi(double t);

}  // namespace wvctx::qmath
