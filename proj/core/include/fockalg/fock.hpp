#pragma once

#include <utility>

#include "fockalg/polynomial.hpp"
#include "fockalg/types.hpp"
#include "fockalg/word.hpp"

namespace fockalg {

/// Element of the truncated Fock space P_m, coordinates in WordIndex order.
class FockVector {
public:
    FockVector(int n, int m);
    FockVector(int n, int m, CVector coeffs);
    /// Coordinates of p in P_m; throws if deg p > m.
    static FockVector from_polynomial(const NcPolynomial& p, int m);

    [[nodiscard]] int generators() const noexcept { return n_; }
    [[nodiscard]] int degree() const noexcept { return m_; }
    [[nodiscard]] const CVector& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] CVector& coeffs() noexcept { return coeffs_; }
    [[nodiscard]] Complex coeff(const Word& w) const;
    [[nodiscard]] double norm() const { return coeffs_.norm(); }

private:
    int n_;
    int m_;
    CVector coeffs_;
};

/// ⟨u, v⟩, linear in u; both vectors must live in the same P_m.
[[nodiscard]] Complex inner(const FockVector& u, const FockVector& v);

/// ⟨p, v⟩ for a polynomial p of degree ≤ v.degree().
[[nodiscard]] Complex inner(const NcPolynomial& p, const FockVector& v);

/// Truncated kernel vector: coefficient conj(λ_α) on every |α| ≤ m.
/// Requires |λ| < 1.
[[nodiscard]] FockVector z_vector(const BallPoint& lambda, int m);

/// The flip U: coefficient of reverse(α) becomes the coefficient of α.
[[nodiscard]] FockVector flip(const FockVector& v);

/// Matrix of ψ ↦ p ⊗ ψ from P_m into P_{m + deg p}; column β holds p ⊗ e_β.
/// For p = e_i this is S_i restricted to P_m.
[[nodiscard]] CSparse mult_matrix(const NcPolynomial& p, int m);

/// mult_matrix followed by the orthogonal projection back onto P_m.
[[nodiscard]] CSparse compressed_mult_matrix(const NcPolynomial& p, int m);

/// Matrix of ψ ↦ ψ ⊗ p from P_m into P_{m + deg p}.
[[nodiscard]] CSparse right_mult_matrix(const NcPolynomial& p, int m);

/// Matrix of S_i^* on P_m (maps e_{iβ} to e_β, kills words not starting with i).
[[nodiscard]] CSparse annihilation_matrix(int n, int i, int m);

/// Matrix of S_α S_β^* compressed to P_m.
[[nodiscard]] CSparse shift_product_matrix(int n, const Word& alpha, const Word& beta, int m);

/// Certified bounds lower ≤ ‖p‖_∞ ≤ upper. lower is ‖p(S)|_{P_m}‖ (exact norm
/// of the restriction, nondecreasing in m); upper is Σ_k of the ℓ² norms of
/// the homogeneous components.
struct SupNormBounds {
    double lower = 0.0;
    double upper = 0.0;
};

[[nodiscard]] SupNormBounds sup_norm_bounds(const NcPolynomial& p, int m);

/// Σ_k ‖homogeneous component k‖_2.
[[nodiscard]] double homogeneous_l2_sum(const NcPolynomial& p);

}  // namespace fockalg
