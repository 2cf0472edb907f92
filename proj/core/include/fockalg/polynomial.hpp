#pragma once

#include <limits>
#include <map>
#include <span>
#include <vector>

#include "fockalg/types.hpp"
#include "fockalg/word.hpp"

namespace fockalg {

/// Coefficients with modulus below this are dropped after arithmetic.
inline constexpr double kCoefficientDropTolerance = 1e-15;

/// A point λ = (λ_1, ..., λ_n) of C^n; interpolation requires |λ| < 1.
class BallPoint {
public:
    BallPoint() = default;
    explicit BallPoint(CVector coords) : coords_(std::move(coords)) {}
    BallPoint(std::initializer_list<Complex> coords);

    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(coords_.size()); }
    [[nodiscard]] const CVector& coords() const noexcept { return coords_; }
    [[nodiscard]] Complex operator[](int t) const { return coords_(t); }
    [[nodiscard]] double norm() const { return coords_.norm(); }

    /// λ_α = λ_{i1} λ_{i2} ... λ_{ik}.
    [[nodiscard]] Complex monomial(const Word& w) const;

private:
    CVector coords_;
};

/// ⟨a, b⟩ = Σ_t a_t conj(b_t).
[[nodiscard]] Complex inner(const BallPoint& a, const BallPoint& b);

/// Sparse element of the free algebra on n generators: Σ a_α e_α.
class NcPolynomial {
public:
    using Terms = std::map<Word, Complex>;

    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    NcPolynomial() = default;
    explicit NcPolynomial(int n);

    static NcPolynomial constant(int n, Complex c);
    static NcPolynomial monomial(int n, const Word& w, Complex c = 1.0);
    /// The generator e_i (the polynomial whose multiplication operator is S_i).
    static NcPolynomial generator(int n, int i);

    [[nodiscard]] int generators() const noexcept { return n_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    /// max |α| over stored terms; kZeroDegree for the zero polynomial.
    [[nodiscard]] int degree() const noexcept;
    [[nodiscard]] bool is_homogeneous() const noexcept;
    [[nodiscard]] Complex coeff(const Word& w) const;

    /// Adds c to the coefficient of w, dropping the result if it becomes negligible.
    void add_term(const Word& w, Complex c);

    [[nodiscard]] NcPolynomial homogeneous_component(int k) const;
    /// ℓ² norm of the coefficient sequence (the F² norm).
    [[nodiscard]] double l2_norm() const;

    NcPolynomial& operator+=(const NcPolynomial& q);
    NcPolynomial& operator-=(const NcPolynomial& q);
    NcPolynomial& operator*=(Complex s);

    friend NcPolynomial operator+(NcPolynomial p, const NcPolynomial& q) { return p += q; }
    friend NcPolynomial operator-(NcPolynomial p, const NcPolynomial& q) { return p -= q; }
    friend NcPolynomial operator*(NcPolynomial p, Complex s) { return p *= s; }
    friend NcPolynomial operator*(Complex s, NcPolynomial p) { return p *= s; }
    friend bool operator==(const NcPolynomial&, const NcPolynomial&) = default;

private:
    void check_same_n(const NcPolynomial& q) const;

    int n_ = 0;
    Terms terms_;
};

/// p ⊗ q: coefficient of γ is Σ_{αβ=γ} p(α) q(β).
[[nodiscard]] NcPolynomial tensor_product(const NcPolynomial& p, const NcPolynomial& q);
inline NcPolynomial operator*(const NcPolynomial& p, const NcPolynomial& q) { return tensor_product(p, q); }

/// Reverses every word (the flip U on polynomials).
[[nodiscard]] NcPolynomial flip(const NcPolynomial& p);

/// Σ a_α λ_α. Points on the closed ball are accepted.
[[nodiscard]] Complex evaluate(const NcPolynomial& p, const BallPoint& lambda);

/// p(T_1, ..., T_n) with T_α = T_{i1} ... T_{ik}, evaluated by prefix recursion.
[[nodiscard]] CMatrix evaluate(const NcPolynomial& p, std::span<const CMatrix> tuple);

/// N x M array of scalar polynomials over the same generators.
class NcMatrixPolynomial {
public:
    NcMatrixPolynomial(int n, int rows, int cols);

    [[nodiscard]] int generators() const noexcept { return n_; }
    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] NcPolynomial& at(int r, int c);
    [[nodiscard]] const NcPolynomial& at(int r, int c) const;
    [[nodiscard]] int degree() const noexcept;

    [[nodiscard]] CMatrix evaluate(const BallPoint& lambda) const;

private:
    int n_;
    int rows_;
    int cols_;
    std::vector<NcPolynomial> entries_;
};

}  // namespace fockalg
