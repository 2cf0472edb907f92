#pragma once

#include <vector>

#include "fockalg/errors.hpp"
#include "fockalg/fock.hpp"
#include "fockalg/numerics.hpp"
#include "fockalg/polynomial.hpp"
#include "fockalg/types.hpp"

namespace fockalg::poisson {

/// Tolerance on I - Σ T_i T_i* ⪰ -tol I when validating a row contraction.
inline constexpr double kContractionTolerance = 1e-10;

/// Tuple [T_1, ..., T_n] of d x d matrices with Σ T_i T_i* ⪯ I, together with
/// its defect Δ = (I - Σ T_i T_i*)^{1/2}.
class RowContraction {
public:
    /// Eigenvalues of I - Σ T_i T_i* in [-tol, 0) are clamped to zero (with a
    /// warning); anything lower throws DomainError.
    explicit RowContraction(std::vector<CMatrix> tuple, double tol = kContractionTolerance);

    /// Commuting diagonal tuple T_i = diag(z^(1)_i, ..., z^(d)_i).
    static RowContraction diagonal(const std::vector<BallPoint>& points);

    [[nodiscard]] int length() const noexcept { return static_cast<int>(tuple_.size()); }
    [[nodiscard]] Eigen::Index dim() const noexcept { return tuple_.front().rows(); }
    [[nodiscard]] const std::vector<CMatrix>& operators() const noexcept { return tuple_; }
    [[nodiscard]] const CMatrix& operator[](int i) const { return tuple_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] const numerics::HermitianMatrix& defect() const noexcept { return defect_; }
    [[nodiscard]] const Warnings& warnings() const noexcept { return warnings_; }

    /// Φ(X) = Σ_i T_i X T_i*.
    [[nodiscard]] CMatrix apply_map(const CMatrix& x) const;
    /// T_α = T_{i1} ... T_{ik}.
    [[nodiscard]] CMatrix word_product(const Word& w) const;

private:
    std::vector<CMatrix> tuple_;
    numerics::HermitianMatrix defect_;
    Warnings warnings_;
};

/// σ_k = ‖Φ^k(I)‖ for k = 0..kmax, by iterating Φ (never enumerating words).
[[nodiscard]] std::vector<double> c0_sequence(const RowContraction& t, int kmax);

/// True when the last entry of the sequence is below tol.
[[nodiscard]] bool c0_certified(const std::vector<double>& sequence, double tol);

/// Smallest m ≤ max_degree with σ_{m+1} ≤ target, or -1 if none.
[[nodiscard]] int suggest_degree(const RowContraction& t, double target, int max_degree);

/// Truncated Poisson kernel: rows grouped by word α (|α| ≤ m), block α = Δ T_α*.
/// Row index of (α, r) is index(α) * d + r.
struct PoissonKernelMatrix {
    int n = 0;
    int m = 0;
    Eigen::Index d = 0;
    CMatrix k;
    /// σ_{m+1} = ‖I - K*K‖.
    double tail = 0.0;
    /// tail below the tolerance used at construction.
    bool certified = false;
};

/// Cap on rows D(n, m) * d of a kernel matrix.
inline constexpr std::size_t kMaxKernelRows = 1'000'000;

[[nodiscard]] PoissonKernelMatrix poisson_kernel(const RowContraction& t, int m, double tol = 1e-10);

/// ‖K_m* (M_{αβ} ⊗ I) K_m - T_α T_β*‖ where M_{αβ} is S_α S_β* compressed to P_m.
[[nodiscard]] double poisson_covariance_check(const RowContraction& t, const Word& alpha, const Word& beta, int m);

/// K* (M ⊗ I) K for an operator M on P_m given as a sparse matrix.
[[nodiscard]] CMatrix kernel_sandwich(const PoissonKernelMatrix& kernel, const CSparse& m);

struct VonNeumannMargin {
    double lhs = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// lhs = ‖p(T)‖ against the bounds of ‖p‖_∞ at truncation m.
[[nodiscard]] VonNeumannMargin von_neumann_margin(const RowContraction& t, const NcPolynomial& p, int m);

/// [r T_1, ..., r T_n] for 0 < r < 1.
[[nodiscard]] RowContraction radial_scale(const RowContraction& t, double r);

/// Orthonormal basis of N_T^(m) = span{(⟨T_α* k, Δ h⟩)_{|α|≤m} : h, k basis vectors}.
[[nodiscard]] CMatrix minimal_subspace(const RowContraction& t, int m, double rank_tol = numerics::kDefaultRankTolerance);

/// Same span computed from an already built kernel.
[[nodiscard]] CMatrix minimal_subspace(const PoissonKernelMatrix& kernel, double rank_tol = numerics::kDefaultRankTolerance);

}  // namespace fockalg::poisson
