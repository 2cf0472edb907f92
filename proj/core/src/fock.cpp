#include "fockalg/fock.hpp"

#include <cmath>
#include <vector>

#include "fockalg/errors.hpp"
#include "fockalg/numerics.hpp"

namespace fockalg {

FockVector::FockVector(int n, int m) : n_(n), m_(m) {
    require_fock_dimension(n, m);
    coeffs_ = CVector::Zero(static_cast<Eigen::Index>(fock_dimension(n, m)));
}

FockVector::FockVector(int n, int m, CVector coeffs) : n_(n), m_(m), coeffs_(std::move(coeffs)) {
    require_fock_dimension(n, m);
    if (static_cast<std::size_t>(coeffs_.size()) != fock_dimension(n, m)) {
        throw ArgumentError("coefficient vector length differs from D(n, m)");
    }
}

FockVector FockVector::from_polynomial(const NcPolynomial& p, int m) {
    if (p.degree() > m) throw ArgumentError("polynomial degree exceeds truncation degree");
    FockVector v(p.generators(), m);
    const WordIndex idx(p.generators(), m);
    for (const auto& [w, c] : p.terms()) v.coeffs_(static_cast<Eigen::Index>(idx.index(w))) = c;
    return v;
}

Complex FockVector::coeff(const Word& w) const {
    if (static_cast<int>(w.length()) > m_) return 0.0;
    return coeffs_(static_cast<Eigen::Index>(WordIndex(n_, m_).index(w)));
}

Complex inner(const FockVector& u, const FockVector& v) {
    if (u.generators() != v.generators() || u.degree() != v.degree()) {
        throw ArgumentError("Fock vectors from different truncated spaces");
    }
    return v.coeffs().dot(u.coeffs());
}

Complex inner(const NcPolynomial& p, const FockVector& v) {
    if (p.generators() != v.generators()) throw ArgumentError("generator count mismatch");
    if (p.degree() > v.degree()) throw ArgumentError("polynomial degree exceeds truncation degree");
    const WordIndex idx(v.generators(), v.degree());
    Complex s = 0.0;
    for (const auto& [w, c] : p.terms()) {
        s += c * std::conj(v.coeffs()(static_cast<Eigen::Index>(idx.index(w))));
    }
    return s;
}

FockVector z_vector(const BallPoint& lambda, int m) {
    if (!(lambda.norm() < 1.0)) throw DomainError("kernel vector requires |λ| < 1");
    const int n = lambda.dimension();
    if (n < 1) throw ArgumentError("empty point");
    FockVector z(n, m);
    const WordIndex idx(n, m);
    CVector& c = z.coeffs();
    c(0) = 1.0;
    // conj(λ_{βi}) = conj(λ_β) conj(λ_i); the index of βi is offset(k+1) + rank(β) n + i - 1.
    for (int k = 0; k < m; ++k) {
        const std::size_t base = idx.grade_offset(k);
        const std::size_t next = idx.grade_offset(k + 1);
        for (std::size_t r = 0; r < idx.grade_size(k); ++r) {
            const Complex parent = c(static_cast<Eigen::Index>(base + r));
            for (int i = 0; i < n; ++i) {
                c(static_cast<Eigen::Index>(next + r * n + i)) = parent * std::conj(lambda[i]);
            }
        }
    }
    return z;
}

FockVector flip(const FockVector& v) {
    const WordIndex idx(v.generators(), v.degree());
    FockVector out(v.generators(), v.degree());
    for (std::size_t j = 0; j < idx.dim(); ++j) {
        const Word w = idx.word(j);
        out.coeffs()(static_cast<Eigen::Index>(idx.index(w.reversed()))) = v.coeffs()(static_cast<Eigen::Index>(j));
    }
    return out;
}

namespace {

struct RankedTerm {
    int length;
    std::size_t rank;
    Complex coeff;
};

std::vector<RankedTerm> ranked_terms(const NcPolynomial& p) {
    std::vector<RankedTerm> out;
    out.reserve(p.size());
    for (const auto& [w, c] : p.terms()) {
        out.push_back({static_cast<int>(w.length()), lex_rank(w, p.generators()), c});
    }
    return out;
}

// Shared builder for left (p ⊗ ψ) and right (ψ ⊗ p) multiplication; rows past
// `row_limit` are dropped.
CSparse build_mult(const NcPolynomial& p, int m, bool left, std::size_t row_limit_grade) {
    if (p.is_zero()) {
        const std::size_t cols = fock_dimension(p.generators(), m);
        return CSparse(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols));
    }
    const int n = p.generators();
    const int target = m + p.degree();
    require_fock_dimension(n, target);
    const WordIndex out_idx(n, target);
    const WordIndex in_idx(n, m);
    const std::size_t row_limit = out_idx.grade_offset(static_cast<int>(row_limit_grade) + 1);
    const auto terms = ranked_terms(p);

    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(in_idx.dim() * terms.size());
    for (int k = 0; k <= m; ++k) {
        const std::size_t col0 = in_idx.grade_offset(k);
        const std::size_t nk = in_idx.grade_size(k);
        for (const RankedTerm& t : terms) {
            const std::size_t row0 = out_idx.grade_offset(k + t.length);
            if (row0 >= row_limit) continue;
            const std::size_t stride_left = power(static_cast<std::size_t>(n), k);
            const std::size_t stride_right = power(static_cast<std::size_t>(n), t.length);
            for (std::size_t r = 0; r < nk; ++r) {
                const std::size_t row = left ? row0 + t.rank * stride_left + r : row0 + r * stride_right + t.rank;
                trip.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col0 + r), t.coeff);
            }
        }
    }
    CSparse s(static_cast<Eigen::Index>(row_limit), static_cast<Eigen::Index>(in_idx.dim()));
    s.setFromTriplets(trip.begin(), trip.end());
    return s;
}

}  // namespace

CSparse mult_matrix(const NcPolynomial& p, int m) {
    if (p.is_zero()) return build_mult(p, m, true, 0);
    return build_mult(p, m, true, static_cast<std::size_t>(m + p.degree()));
}

CSparse compressed_mult_matrix(const NcPolynomial& p, int m) {
    if (p.is_zero()) return build_mult(p, m, true, 0);
    if (p.degree() > 0) require_fock_dimension(p.generators(), m + p.degree());
    return build_mult(p, m, true, static_cast<std::size_t>(m));
}

CSparse right_mult_matrix(const NcPolynomial& p, int m) {
    if (p.is_zero()) return build_mult(p, m, false, 0);
    return build_mult(p, m, false, static_cast<std::size_t>(m + p.degree()));
}

CSparse annihilation_matrix(int n, int i, int m) {
    if (i < 1 || i > n) throw ArgumentError("generator index out of range");
    const WordIndex idx(n, m);
    std::vector<Eigen::Triplet<Complex>> trip;
    for (int k = 0; k < m; ++k) {
        const std::size_t nk = idx.grade_size(k);
        const std::size_t src0 = idx.grade_offset(k + 1) + static_cast<std::size_t>(i - 1) * nk;
        for (std::size_t r = 0; r < nk; ++r) {
            trip.emplace_back(static_cast<Eigen::Index>(idx.grade_offset(k) + r), static_cast<Eigen::Index>(src0 + r),
                              1.0);
        }
    }
    CSparse s(static_cast<Eigen::Index>(idx.dim()), static_cast<Eigen::Index>(idx.dim()));
    s.setFromTriplets(trip.begin(), trip.end());
    return s;
}

CSparse shift_product_matrix(int n, const Word& alpha, const Word& beta, int m) {
    if (static_cast<int>(alpha.length()) > m || static_cast<int>(beta.length()) > m) {
        throw ArgumentError("word degree exceeds truncation degree");
    }
    const WordIndex idx(n, m);
    const int la = static_cast<int>(alpha.length());
    const int lb = static_cast<int>(beta.length());
    const std::size_t ra = lex_rank(alpha, n);
    const std::size_t rb = lex_rank(beta, n);
    std::vector<Eigen::Triplet<Complex>> trip;
    for (int k = 0; k + std::max(la, lb) <= m; ++k) {
        const std::size_t nk = idx.grade_size(k);
        for (std::size_t r = 0; r < nk; ++r) {
            const std::size_t col = idx.grade_offset(k + lb) + rb * nk + r;
            const std::size_t row = idx.grade_offset(k + la) + ra * nk + r;
            trip.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), 1.0);
        }
    }
    CSparse s(static_cast<Eigen::Index>(idx.dim()), static_cast<Eigen::Index>(idx.dim()));
    s.setFromTriplets(trip.begin(), trip.end());
    return s;
}

double homogeneous_l2_sum(const NcPolynomial& p) {
    double total = 0.0;
    for (int k = 0; k <= p.degree(); ++k) total += p.homogeneous_component(k).l2_norm();
    return total;
}

SupNormBounds sup_norm_bounds(const NcPolynomial& p, int m) {
    if (p.is_zero()) return {};
    return {numerics::operator_norm(mult_matrix(p, m)), homogeneous_l2_sum(p)};
}

}  // namespace fockalg
