// density_matrix.hpp: Validated qubit / qutrit density matrix

#pragma once

#include "qotto/linalg.hpp"

namespace qotto {

// Basis order is (|g⟩, |e⟩) for a qubit and (|g⟩, |e⟩, |p⟩) for the
// three-level model.
inline constexpr Eigen::Index kGround = 0;
inline constexpr Eigen::Index kExcited = 1;
inline constexpr Eigen::Index kAuxiliary = 2;

struct StateTolerance {
    double hermiticity{1e-10};
    double trace{1e-10};
    double min_eigenvalue{-1e-9};
};

class DensityMatrix {
public:
    // Validates against `tol`; throws Error(InvalidState) on violation.
    explicit DensityMatrix(linalg::ComplexMatrix rho, StateTolerance tol = {});

    static DensityMatrix ground(Eigen::Index dim = 2);
    static DensityMatrix excited(Eigen::Index dim = 2);
    // |ψ⟩⟨ψ| for a normalised amplitude vector.
    static DensityMatrix pure(const linalg::ComplexVector& psi);

    Eigen::Index dim() const { return rho_.rows(); }
    const linalg::ComplexMatrix& matrix() const { return rho_; }
    linalg::Complex operator()(Eigen::Index i, Eigen::Index j) const { return rho_(i, j); }

    double excited_population() const { return rho_(kExcited, kExcited).real(); }
    double ground_population() const { return rho_(kGround, kGround).real(); }
    // ρ_eg = ⟨e|ρ|g⟩
    linalg::Complex coherence_eg() const { return rho_(kExcited, kGround); }

    // Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

private:
    linalg::ComplexMatrix rho_;
};

// Throws InvalidState with a description of the first violated bound.
void validate_state(const linalg::ComplexMatrix& rho, StateTolerance tol = {});

// Qubit vectorization in the Liouvillian ordering (ρ_ee, ρ_eg, ρ_ge, ρ_gg).
linalg::ComplexVector to_liouville_vector(const linalg::ComplexMatrix& rho2);
linalg::ComplexMatrix from_liouville_vector(const linalg::ComplexVector& v);

// Row-major vectorization vec(ρ)_{i·d+j} = ρ_ij, used for the three-level model.
linalg::ComplexVector vectorize_row_major(const linalg::ComplexMatrix& rho);
linalg::ComplexMatrix unvectorize_row_major(const linalg::ComplexVector& v, Eigen::Index dim);

} // namespace qotto
