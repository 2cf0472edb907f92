#include "fockalg/poisson.hpp"

#include <cmath>
#include <sstream>

namespace fockalg::poisson {

RowContraction::RowContraction(std::vector<CMatrix> tuple, double tol) : tuple_(std::move(tuple)) {
    if (tuple_.empty()) throw ArgumentError("row contraction needs at least one operator");
    const Eigen::Index d = tuple_.front().rows();
    if (d < 1) throw ArgumentError("row contraction acts on a nonzero space");
    for (const CMatrix& t : tuple_) {
        if (t.rows() != d || t.cols() != d) throw ArgumentError("row contraction entries must be square of equal size");
    }
    CMatrix gap = CMatrix::Identity(d, d);
    for (const CMatrix& t : tuple_) gap.noalias() -= t * t.adjoint();
    gap = 0.5 * (gap + gap.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gap, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol) {
        std::ostringstream os;
        os << "not a row contraction: min eigenvalue of I - Σ T_i T_i* is " << es.eigenvalues()(0);
        throw DomainError(os.str());
    }
    defect_ = numerics::hermitian_sqrt(numerics::HermitianMatrix(gap), &warnings_, tol);
}

RowContraction RowContraction::diagonal(const std::vector<BallPoint>& points) {
    if (points.empty()) throw ArgumentError("diagonal tuple needs at least one point");
    const int n = points.front().dimension();
    const auto d = static_cast<Eigen::Index>(points.size());
    std::vector<CMatrix> tuple(static_cast<std::size_t>(n), CMatrix::Zero(d, d));
    for (Eigen::Index s = 0; s < d; ++s) {
        if (points[s].dimension() != n) throw ArgumentError("points of different dimension");
        for (int i = 0; i < n; ++i) tuple[i](s, s) = points[s][i];
    }
    return RowContraction(std::move(tuple));
}

CMatrix RowContraction::apply_map(const CMatrix& x) const {
    CMatrix out = CMatrix::Zero(dim(), dim());
    for (const CMatrix& t : tuple_) out.noalias() += t * x * t.adjoint();
    return out;
}

CMatrix RowContraction::word_product(const Word& w) const {
    CMatrix out = CMatrix::Identity(dim(), dim());
    for (int l : w.letters()) {
        if (l > length()) throw ArgumentError("word letter exceeds tuple length");
        out = out * tuple_[l - 1];
    }
    return out;
}

std::vector<double> c0_sequence(const RowContraction& t, int kmax) {
    if (kmax < 0) throw ArgumentError("kmax must be nonnegative");
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(kmax) + 1);
    CMatrix x = CMatrix::Identity(t.dim(), t.dim());
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) x = t.apply_map(x);
        // Φ^k(I) is PSD, so its norm is its largest eigenvalue.
        seq.push_back(numerics::operator_norm(CMatrix(0.5 * (x + x.adjoint()))));
    }
    return seq;
}

bool c0_certified(const std::vector<double>& sequence, double tol) {
    return !sequence.empty() && sequence.back() < tol;
}

int suggest_degree(const RowContraction& t, double target, int max_degree) {
    const auto seq = c0_sequence(t, max_degree + 1);
    for (int m = 0; m <= max_degree; ++m) {
        if (seq[static_cast<std::size_t>(m) + 1] <= target) return m;
    }
    return -1;
}

PoissonKernelMatrix poisson_kernel(const RowContraction& t, int m, double tol) {
    const int n = t.length();
    const Eigen::Index d = t.dim();
    const WordIndex idx(n, m);
    if (idx.dim() > kMaxKernelRows / static_cast<std::size_t>(d)) {
        throw ResourceError("Poisson kernel with D(n,m) * d = " + std::to_string(idx.dim()) + " * " +
                            std::to_string(d) + " rows exceeds the cap");
    }
    PoissonKernelMatrix kernel;
    kernel.n = n;
    kernel.m = m;
    kernel.d = d;
    kernel.k.resize(static_cast<Eigen::Index>(idx.dim()) * d, d);

    // X_α = T_α*, grown by appending letters on the right: X_{βi} = T_i* X_β.
    // Appending preserves graded lexicographic order within each grade.
    std::vector<CMatrix> level{CMatrix::Identity(d, d)};
    const CMatrix& delta = t.defect().matrix();
    kernel.k.topRows(d) = delta;
    std::vector<CMatrix> adjoints;
    adjoints.reserve(static_cast<std::size_t>(n));
    for (const CMatrix& ti : t.operators()) adjoints.push_back(ti.adjoint());
    for (int k = 1; k <= m; ++k) {
        std::vector<CMatrix> next;
        next.reserve(level.size() * static_cast<std::size_t>(n));
        const std::size_t base = idx.grade_offset(k);
        for (std::size_t r = 0; r < level.size(); ++r) {
            for (int i = 0; i < n; ++i) {
                next.push_back(adjoints[i] * level[r]);
                const auto row = static_cast<Eigen::Index>(base + r * n + i) * d;
                kernel.k.middleRows(row, d).noalias() = delta * next.back();
            }
        }
        level = std::move(next);
    }
    const CMatrix defect = CMatrix::Identity(d, d) - kernel.k.adjoint() * kernel.k;
    kernel.tail = numerics::operator_norm(CMatrix(0.5 * (defect + defect.adjoint())));
    kernel.certified = kernel.tail < tol;
    return kernel;
}

CMatrix kernel_sandwich(const PoissonKernelMatrix& kernel, const CSparse& m) {
    const Eigen::Index d = kernel.d;
    if (m.rows() * d != kernel.k.rows() || m.cols() * d != kernel.k.rows()) {
        throw ArgumentError("operator size does not match the kernel truncation");
    }
    // (M ⊗ I) K: block row a = Σ_b M(a, b) K_b.
    CMatrix mk = CMatrix::Zero(kernel.k.rows(), d);
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        for (CSparse::InnerIterator it(m, col); it; ++it) {
            mk.middleRows(it.row() * d, d) += it.value() * kernel.k.middleRows(col * d, d);
        }
    }
    return kernel.k.adjoint() * mk;
}

double poisson_covariance_check(const RowContraction& t, const Word& alpha, const Word& beta, int m) {
    if (static_cast<int>(alpha.length()) > m || static_cast<int>(beta.length()) > m) {
        throw ArgumentError("covariance check: word degree exceeds truncation degree");
    }
    const PoissonKernelMatrix kernel = poisson_kernel(t, m);
    const CSparse shift = shift_product_matrix(t.length(), alpha, beta, m);
    const CMatrix lhs = kernel_sandwich(kernel, shift);
    const CMatrix rhs = t.word_product(alpha) * t.word_product(beta).adjoint();
    return numerics::operator_norm(CMatrix(lhs - rhs));
}

VonNeumannMargin von_neumann_margin(const RowContraction& t, const NcPolynomial& p, int m) {
    if (p.generators() != t.length()) throw ArgumentError("polynomial and tuple differ in generator count");
    VonNeumannMargin out;
    out.lhs = numerics::operator_norm(evaluate(p, std::span<const CMatrix>(t.operators())));
    const SupNormBounds b = sup_norm_bounds(p, m);
    out.lower = b.lower;
    out.upper = b.upper;
    return out;
}

RowContraction radial_scale(const RowContraction& t, double r) {
    if (!(r > 0.0 && r < 1.0)) throw ArgumentError("radial_scale: r must lie in (0, 1)");
    std::vector<CMatrix> scaled;
    scaled.reserve(t.operators().size());
    for (const CMatrix& ti : t.operators()) scaled.push_back(r * ti);
    return RowContraction(std::move(scaled));
}

CMatrix minimal_subspace(const PoissonKernelMatrix& kernel, double rank_tol) {
    const Eigen::Index d = kernel.d;
    const Eigen::Index dim = kernel.k.rows() / d;
    // v_{h,k}(α) = ⟨T_α* k, Δ h⟩ = (Δ T_α*)(h, k) = K(index(α) d + h, k).
    CMatrix spanning(dim, d * d);
    for (Eigen::Index h = 0; h < d; ++h) {
        for (Eigen::Index k = 0; k < d; ++k) {
            auto col = spanning.col(h * d + k);
            for (Eigen::Index a = 0; a < dim; ++a) col(a) = kernel.k(a * d + h, k);
        }
    }
    return numerics::orthonormal_basis(spanning, rank_tol);
}

CMatrix minimal_subspace(const RowContraction& t, int m, double rank_tol) {
    return minimal_subspace(poisson_kernel(t, m), rank_tol);
}

}  // namespace fockalg::poisson
