#include "qotto/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qotto/errors.hpp"

namespace qotto::linalg {

void require_square(const ComplexMatrix& m, Eigen::Index max_dim) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::NonSquare,
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() > max_dim) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "dimension " + std::to_string(m.rows()) + " exceeds " + std::to_string(max_dim));
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    }
}

SpectralResult eig(const ComplexMatrix& m) {
    require_square(m);
    const Eigen::Index n = m.rows();

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "complex Schur iteration did not converge");
    }
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();

    // Sort by real part, then cluster near-equal real parts and order each
    // cluster by imaginary part. A tolerant comparator inside std::sort would
    // not be a strict weak ordering.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return values(a).real() < values(b).real();
    });
    const double tie_tol = 1e-12 * std::max(1.0, m.norm());
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() &&
               values(order[end]).real() - values(order[end - 1]).real() <= tie_tol) {
            ++end;
        }
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](Eigen::Index a, Eigen::Index b) {
                             return values(a).imag() < values(b).imag();
                         });
        start = end;
    }

    SpectralResult out;
    out.eigenvalues.reserve(order.size());
    out.eigenvectors.reserve(order.size());
    for (Eigen::Index k : order) {
        out.eigenvalues.push_back(values(k));
        ComplexVector v = vectors.col(k);
        const double norm = v.norm();
        if (norm > 0.0) v /= norm;
        out.eigenvectors.push_back(std::move(v));
    }
    return out;
}

namespace {

double one_norm(const ComplexMatrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

double condition_of(const ComplexMatrix& vectors) {
    Eigen::JacobiSVD<ComplexMatrix> svd(vectors);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

} // namespace

ComplexMatrix expm_pade(const ComplexMatrix& m) {
    require_square(m, std::numeric_limits<Eigen::Index>::max());
    const Eigen::Index n = m.rows();

    // Degree-13 Padé coefficients and the matching scaling threshold.
    static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                   1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                   670442572800.0,      33522128640.0,       1323241920.0,
                                   40840800.0,          960960.0,            16380.0,
                                   182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const double norm1 = one_norm(m);
    int squarings = 0;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    }
    const ComplexMatrix a = m / std::ldexp(1.0, squarings);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;

    const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                  b[5] * a4 + b[3] * a2 + b[1] * id;
    const ComplexMatrix u = a * u_inner;
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                            b[2] * a2 + b[0] * id;

    ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) r = r * r;
    return r;
}

double eigenvector_condition(const ComplexMatrix& m) {
    const SpectralResult spec = eig(m);
    ComplexMatrix vectors(m.rows(), m.cols());
    for (std::size_t k = 0; k < spec.eigenvectors.size(); ++k) {
        vectors.col(static_cast<Eigen::Index>(k)) = spec.eigenvectors[k];
    }
    return condition_of(vectors);
}

ComplexMatrix expm(const ComplexMatrix& m) {
    require_square(m);
    const Eigen::Index n = m.rows();
    if (m.isZero(0.0)) return ComplexMatrix::Identity(n, n);

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
    if (solver.info() == Eigen::Success) {
        ComplexMatrix vectors = solver.eigenvectors();
        for (Eigen::Index k = 0; k < n; ++k) {
            const double norm = vectors.col(k).norm();
            if (norm > 0.0) vectors.col(k) /= norm;
        }
        if (condition_of(vectors) < kEigenvectorConditionLimit) {
            const ComplexVector exp_values = solver.eigenvalues().array().exp();
            const ComplexMatrix scaled = vectors * exp_values.asDiagonal();
            // X = V e^Λ V⁻¹  ⇔  Vᵀ Xᵀ = (V e^Λ)ᵀ
            return vectors.transpose().fullPivLu().solve(scaled.transpose()).transpose();
        }
    }
    return expm_pade(m);
}

std::vector<ComplexVector> nullspace(const ComplexMatrix& m, double tol) {
    require_square(m);
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::NonFinite, "nullspace tolerance must be positive");
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = tol * s(0);
    std::vector<ComplexVector> basis;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s(k) <= cutoff) basis.emplace_back(svd.matrixV().col(k));
    }
    return basis;
}

} // namespace qotto::linalg
