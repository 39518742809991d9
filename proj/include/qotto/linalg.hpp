// linalg.hpp: Small dense complex linear algebra (dimension ≤ 9)

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qotto::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Eigen::Index kMaxDimension = 9;

struct SpectralResult {
    std::vector<Complex> eigenvalues;         // sorted by real part, then imaginary part
    std::vector<ComplexVector> eigenvectors;  // right eigenvectors, unit 2-norm
};

// Throws NonSquare, DimensionTooLarge, or NonFinite (any NaN/Inf entry).
void require_square(const ComplexMatrix& m, Eigen::Index max_dim = kMaxDimension);

// Eigenvalues and right eigenvectors of a general complex matrix.
// Ordering is deterministic: ascending real part, ties (within 1e-12·‖m‖)
// broken by ascending imaginary part.
SpectralResult eig(const ComplexMatrix& m);

// Matrix exponential. Uses the eigendecomposition when the eigenvector
// matrix is well conditioned, otherwise scaling-and-squaring with a
// degree-13 Padé approximant.
ComplexMatrix expm(const ComplexMatrix& m);

// Scaling-and-squaring Padé path only; exposed for tests and for callers
// that already know the generator is defective.
ComplexMatrix expm_pade(const ComplexMatrix& m);

// Condition number (2-norm) of the column-normalised eigenvector matrix.
double eigenvector_condition(const ComplexMatrix& m);

inline constexpr double kDefaultNullspaceTol = 1e-10;
inline constexpr double kEigenvectorConditionLimit = 1e6;

// Orthonormal basis for the right singular vectors whose singular value is
// ≤ tol·σ_max.
std::vector<ComplexVector> nullspace(const ComplexMatrix& m, double tol = kDefaultNullspaceTol);

// Frobenius norm shortcut used throughout the tests and invariants.
inline double fro(const ComplexMatrix& m) { return m.norm(); }

} // namespace qotto::linalg
