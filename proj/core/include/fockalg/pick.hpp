#pragma once

#include <vector>

#include "fockalg/numerics.hpp"
#include "fockalg/polynomial.hpp"
#include "fockalg/types.hpp"

namespace fockalg::pick {

/// Interpolation data: distinct nodes λ_j in the open unit ball of C^n and
/// N x N targets W_j.
class PickProblem {
public:
    /// Validates: at least one node, equal dimensions, |λ_j| < 1, pairwise
    /// distinct nodes (within 1e-14), square targets of one common size.
    PickProblem(std::vector<BallPoint> points, std::vector<CMatrix> targets);

    /// Scalar targets (N = 1).
    static PickProblem scalar(std::vector<BallPoint> points, const std::vector<Complex>& values);

    [[nodiscard]] int ball_dimension() const noexcept { return n_; }
    [[nodiscard]] int nodes() const noexcept { return static_cast<int>(points_.size()); }
    [[nodiscard]] int target_size() const noexcept { return static_cast<int>(targets_.front().rows()); }
    [[nodiscard]] const std::vector<BallPoint>& points() const noexcept { return points_; }
    [[nodiscard]] const std::vector<CMatrix>& targets() const noexcept { return targets_; }

private:
    int n_;
    std::vector<BallPoint> points_;
    std::vector<CMatrix> targets_;
};

/// G[i][j] = 1 / (1 - ⟨λ_i, λ_j⟩), the Gram matrix of the kernel vectors z_{λ_j}.
[[nodiscard]] CMatrix gram(const PickProblem& problem);

/// Block (i, j) = G[i][j] (c² I - W_i W_j*). PSD at c = 1 exactly when an
/// interpolant of norm ≤ 1 exists.
[[nodiscard]] numerics::HermitianMatrix pick_matrix(const PickProblem& problem, double c = 1.0);

/// c* = inf ‖Φ‖ over Φ ∈ M_N(F^∞) with Φ(λ_j) = W_j, computed as ‖T‖ for the
/// model operator T*(z_j ⊗ h) = z_j ⊗ W_j* h.
[[nodiscard]] double min_interpolation_norm(const PickProblem& problem);

struct PickCertificate {
    bool feasible = false;
    /// Pick matrix PSD at c = 1 within tolerance.
    bool psd = false;
    /// The PSD decision is within tolerance of the boundary.
    bool marginal = false;
    double min_eigenvalue = 0.0;
    double min_norm = 0.0;
    CMatrix gram;
};

/// Runs both routes. `feasible` follows the PSD test; `psd` and
/// `min_norm ≤ 1 + tol` are expected to agree except on marginal problems.
[[nodiscard]] PickCertificate certify(const PickProblem& problem, double tol = numerics::kDefaultPsdTolerance);

/// Explicit interpolant Σ_i W_i φ_i with φ_i(λ_j) = δ_ij, each φ_i a
/// normalized product of linear factors e_q - λ_{jq}. Degree ≤ k - 1; no norm
/// control.
[[nodiscard]] NcMatrixPolynomial lagrange_interpolant(const PickProblem& problem);

/// Scalar Lagrange basis element φ_{i0} (0-based node index).
[[nodiscard]] NcPolynomial lagrange_basis(const PickProblem& problem, int i0);

/// Entry (i, j) = (1 - w_i conj(w_j)) / (1 - ⟨λ_i, λ_j⟩)^n: the necessary
/// condition for interpolation by bounded analytic functions on the ball.
/// Requires scalar targets.
[[nodiscard]] numerics::HermitianMatrix classical_ball_matrix(const PickProblem& problem);

struct Sample {
    BallPoint point;
    Complex value;
};

/// Finite-stage membership test: PSD of the scalar Pick matrix of the samples.
/// Every |value| must be < 1 (PreconditionError otherwise).
[[nodiscard]] numerics::PsdVerdict sample_membership_check(const std::vector<Sample>& samples,
                                                           double tol = numerics::kDefaultPsdTolerance);

}  // namespace fockalg::pick
