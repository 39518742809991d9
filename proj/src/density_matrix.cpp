#include "qotto/density_matrix.hpp"

#include <cmath>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {

void validate_state(const linalg::ComplexMatrix& rho, StateTolerance tol) {
    if (rho.rows() != rho.cols() || (rho.rows() != 2 && rho.rows() != 3)) {
        throw Error(ErrorCode::InvalidState, "density matrix must be 2x2 or 3x3");
    }
    if (!rho.allFinite()) {
        throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
    }
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.hermiticity) {
        throw Error(ErrorCode::InvalidState, "not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const linalg::Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw Error(ErrorCode::InvalidState, "trace " + std::to_string(tr.real()) + " != 1");
    }
    const linalg::ComplexMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<linalg::ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    const double lmin = solver.eigenvalues().minCoeff();
    if (lmin < tol.min_eigenvalue) {
        throw Error(ErrorCode::InvalidState, "negative eigenvalue " + std::to_string(lmin));
    }
}

DensityMatrix::DensityMatrix(linalg::ComplexMatrix rho, StateTolerance tol) : rho_(std::move(rho)) {
    validate_state(rho_, tol);
}

DensityMatrix DensityMatrix::ground(Eigen::Index dim) {
    linalg::ComplexMatrix rho = linalg::ComplexMatrix::Zero(dim, dim);
    rho(kGround, kGround) = 1.0;
    return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::excited(Eigen::Index dim) {
    linalg::ComplexMatrix rho = linalg::ComplexMatrix::Zero(dim, dim);
    rho(kExcited, kExcited) = 1.0;
    return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::pure(const linalg::ComplexVector& psi) {
    return DensityMatrix(psi * psi.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
    const linalg::ComplexMatrix h = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<linalg::ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

linalg::ComplexVector to_liouville_vector(const linalg::ComplexMatrix& rho2) {
    linalg::ComplexVector v(4);
    v << rho2(kExcited, kExcited), rho2(kExcited, kGround), rho2(kGround, kExcited),
        rho2(kGround, kGround);
    return v;
}

linalg::ComplexMatrix from_liouville_vector(const linalg::ComplexVector& v) {
    linalg::ComplexMatrix rho(2, 2);
    rho(kExcited, kExcited) = v(0);
    rho(kExcited, kGround) = v(1);
    rho(kGround, kExcited) = v(2);
    rho(kGround, kGround) = v(3);
    return rho;
}

linalg::ComplexVector vectorize_row_major(const linalg::ComplexMatrix& rho) {
    const Eigen::Index d = rho.rows();
    linalg::ComplexVector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
    return v;
}

linalg::ComplexMatrix unvectorize_row_major(const linalg::ComplexVector& v, Eigen::Index dim) {
    linalg::ComplexMatrix rho(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) rho(i, j) = v(i * dim + j);
    return rho;
}

} // namespace qotto
