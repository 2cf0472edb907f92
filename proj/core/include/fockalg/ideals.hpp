#pragma once

#include <vector>

#include "fockalg/fock.hpp"
#include "fockalg/numerics.hpp"
#include "fockalg/poisson.hpp"
#include "fockalg/polynomial.hpp"
#include "fockalg/types.hpp"

namespace fockalg::ideals {

/// Finite generating data of a two-sided ideal J, modelled on P_m by the
/// padded products e_α ⊗ g ⊗ e_β.
class IdealSpec {
public:
    /// Generators must be nonzero, over n letters, of degree ≤ m.
    IdealSpec(int n, std::vector<NcPolynomial> generators, int m);

    [[nodiscard]] int generators_count() const noexcept { return static_cast<int>(generators_.size()); }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int degree() const noexcept { return m_; }
    [[nodiscard]] const std::vector<NcPolynomial>& generators() const noexcept { return generators_; }
    [[nodiscard]] bool homogeneous() const noexcept { return homogeneous_; }
    /// 0 when there are no generators.
    [[nodiscard]] int max_generator_degree() const noexcept;

    /// Same generators, different truncation degree.
    [[nodiscard]] IdealSpec with_degree(int m) const;

private:
    int n_;
    std::vector<NcPolynomial> generators_;
    int m_;
    bool homogeneous_;
};

/// Relation coefficients λ_{ji} (i < j), stored at (j - 1, i - 1) of an n x n matrix.
[[nodiscard]] CMatrix uniform_relations(int n, Complex q);

/// Generators e_j ⊗ e_i - λ_{ji} e_i ⊗ e_j for 1 ≤ i < j ≤ n, ordered by (i, j).
[[nodiscard]] IdealSpec q_commutation_spec(int n, const CMatrix& relations, int m);

/// Orthonormal basis (columns in WordIndex order of P_m) of
/// span{e_α ⊗ g ⊗ e_β : |α| + deg g + |β| ≤ m}.
[[nodiscard]] CMatrix ideal_subspace(const IdealSpec& spec, double rank_tol = numerics::kDefaultRankTolerance);

/// Compressed model of F^∞ / J on N_J^(m) = P_m ⊖ M_J^(m).
struct QuotientModel {
    IdealSpec spec;
    /// D(n, m) x dim N, orthonormal columns.
    CMatrix basis;
    /// Grade of each basis column; -1 throughout for non-homogeneous ideals.
    std::vector<int> column_grades;
    /// B_i = P_N S_i |_N (S_i compressed to P_m), in the basis above.
    std::vector<CMatrix> compressions;
    /// Largest grade whose compressions do not touch the truncation boundary.
    int reliable_degree = 0;
    /// Non-homogeneous generators: the padded model carries no grade-exactness guarantee.
    bool approximate = false;

    [[nodiscard]] Eigen::Index dim() const noexcept { return basis.cols(); }
    [[nodiscard]] bool trivial() const noexcept { return basis.cols() == 0; }
    /// dim N ∩ (grade k); only meaningful for homogeneous ideals.
    [[nodiscard]] std::vector<int> grade_dimensions() const;
};

/// Dense orthogonal complements are limited to this D(n, m) for non-homogeneous ideals.
inline constexpr std::size_t kMaxDenseQuotientDimension = 4096;

[[nodiscard]] QuotientModel build_quotient(const IdealSpec& spec, double rank_tol = numerics::kDefaultRankTolerance);

/// Coefficient matrix C (dim N x s, orthonormal columns) with basis * C spanning
/// N ∩ P_r.
[[nodiscard]] CMatrix restriction_to_grades(const QuotientModel& model, int r);

/// max_i ‖(I - P_N) S_i* P_N‖ on N ∩ P_{reliable_degree}.
[[nodiscard]] double semi_invariance_residual(const QuotientModel& model);

/// max_{i<j} ‖B_j B_i - λ_{ji} B_i B_j‖ on N ∩ P_{reliable_degree}.
[[nodiscard]] double q_relation_residual(const QuotientModel& model, const CMatrix& relations);

/// Orthonormal basis of span{Σ_π conj(ε_{π(α)}) e_{π(α)}} over nondecreasing words
/// α with |α| ≤ m. Distinct rearrangements of α are summed once each; equal
/// letters contribute the factor 1.
[[nodiscard]] CMatrix symmetrized_basis(int n, const CMatrix& relations, int m);

/// f(B_1, ..., B_n) from the compressed shifts.
[[nodiscard]] CMatrix functional_calculus(const NcPolynomial& f, const QuotientModel& model);

/// ‖P_N f(S)|_N‖ on the truncated model; nondecreasing in m.
[[nodiscard]] double quotient_distance(const NcPolynomial& f, const QuotientModel& model);
[[nodiscard]] double quotient_distance(const NcPolynomial& f, const IdealSpec& spec);

/// ‖P_N f(S)|_{N ∩ P_r}‖ with r = reliable_degree: the compression restricted to
/// inputs away from the truncation boundary.
[[nodiscard]] double reliable_quotient_distance(const NcPolynomial& f, const QuotientModel& model);

/// Distance from p (deg p ≤ m0) to the ideal of F^∞ elements orthogonal to
/// P_m0: ‖P_{P_m0} p(S)|_{P_m0}‖, exact at finite size.
[[nodiscard]] double caratheodory_distance(const NcPolynomial& p, int m0);

struct ConstrainedVonNeumann {
    double lhs = 0.0;
    double rhs = 0.0;
    std::vector<double> generator_norms;
};

/// lhs = ‖f(T)‖, rhs = quotient_distance(f). T must annihilate every generator
/// (‖g(T)‖ ≤ relation_tol) or PreconditionError is thrown.
[[nodiscard]] ConstrainedVonNeumann constrained_von_neumann_check(const poisson::RowContraction& t,
                                                                  const NcPolynomial& f, const QuotientModel& model,
                                                                  double relation_tol = 1e-10);

struct QuotientPoissonResidual {
    /// ‖(I - P_N ⊗ I) K_m‖
    double range_residual = 0.0;
    /// max over |α|, |β| ≤ 2 of ‖K_m* (B_α B_β* ⊗ I) K_m - T_α T_β*‖
    double covariance_residual = 0.0;
};

[[nodiscard]] QuotientPoissonResidual quotient_poisson_check(const poisson::RowContraction& t,
                                                             const QuotientModel& model,
                                                             double relation_tol = 1e-10);

/// Norms ‖g(T)‖ for each generator.
[[nodiscard]] std::vector<double> generator_norms(const poisson::RowContraction& t, const IdealSpec& spec);

}  // namespace fockalg::ideals
