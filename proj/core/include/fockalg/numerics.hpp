#pragma once

#include "fockalg/errors.hpp"
#include "fockalg/types.hpp"

namespace fockalg::numerics {

/// Default relative tolerance for positive semidefiniteness decisions.
inline constexpr double kDefaultPsdTolerance = 1e-10;
/// Default relative rank cut-off for orthonormalization.
inline constexpr double kDefaultRankTolerance = 1e-10;

/// Square complex matrix equal to its adjoint. The constructor checks
/// ‖A - A*‖_max ≤ 1e-12 (1 + ‖A‖_max) and stores (A + A*) / 2.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const CMatrix& a);

    [[nodiscard]] Eigen::Index size() const noexcept { return a_.rows(); }
    [[nodiscard]] const CMatrix& matrix() const noexcept { return a_; }
    [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }

private:
    CMatrix a_;
};

struct PsdVerdict {
    bool is_psd = false;
    /// |min_eigenvalue| within tol * scale: the decision sits on the boundary.
    bool marginal = false;
    double min_eigenvalue = 0.0;
    /// max(1, ‖A‖_2)
    double scale = 1.0;
    /// Unit eigenvector of the minimal eigenvalue.
    CVector witness;
};

/// is_psd ⟺ min_eigenvalue ≥ -tol * scale.
[[nodiscard]] PsdVerdict psd_check(const HermitianMatrix& a, double tol = kDefaultPsdTolerance);

/// Largest singular value.
[[nodiscard]] double operator_norm(const CMatrix& a);
/// Largest singular value, computed from the Gram matrix of the smaller side.
[[nodiscard]] double operator_norm(const CSparse& a);

/// λ_max of the pencil (B, A): the largest value of ⟨Bx, x⟩ / ⟨Ax, x⟩.
/// A must be positive definite; otherwise SingularGramError.
[[nodiscard]] double max_generalized_eigenvalue(const HermitianMatrix& b, const HermitianMatrix& a);

/// Positive square root. Eigenvalues in [-clamp_tol * scale, 0) are clamped to
/// zero (and reported through `warnings` when given); anything lower throws
/// DomainError.
[[nodiscard]] HermitianMatrix hermitian_sqrt(const HermitianMatrix& a, Warnings* warnings = nullptr,
                                             double clamp_tol = 1e-12);

/// Orthonormal basis of the column span from a column-pivoted QR; pivots above
/// rank_tol * (largest pivot) count toward the rank.
[[nodiscard]] CMatrix orthonormal_basis(const CMatrix& spanning, double rank_tol = kDefaultRankTolerance);

/// Orthonormal basis of ker(a): directions whose rank-revealing QR pivots fall
/// at or below abs_tol.
[[nodiscard]] CMatrix null_space(const CMatrix& a, double abs_tol = kDefaultRankTolerance);

/// Orthonormal basis of the orthogonal complement of span(basis) in C^rows.
/// `basis` must have orthonormal columns.
[[nodiscard]] CMatrix orthogonal_complement(const CMatrix& basis, Eigen::Index rows);

/// ‖P_1 - P_2‖_2 for the orthogonal projectors onto two column spans
/// (orthonormal columns expected).
[[nodiscard]] double projector_distance(const CMatrix& q1, const CMatrix& q2);

/// ‖(I - Q Q*) x‖_2 / max(1, ‖x‖) maximized over the columns of x.
[[nodiscard]] double span_residual(const CMatrix& q, const CMatrix& x);

}  // namespace fockalg::numerics
