#include "fockalg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fockalg::numerics {

namespace {

double max_abs(const CMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
    if (a.rows() != a.cols()) throw ArgumentError("Hermitian matrix must be square");
    const double asym = max_abs(a - a.adjoint());
    if (asym > 1e-12 * (1.0 + max_abs(a))) {
        std::ostringstream os;
        os << "matrix is not Hermitian (max |A - A*| = " << asym << ")";
        throw ArgumentError(os.str());
    }
    a_ = 0.5 * (a + a.adjoint());
}

PsdVerdict psd_check(const HermitianMatrix& a, double tol) {
    PsdVerdict v;
    if (a.size() == 0) {
        v.is_psd = true;
        v.min_eigenvalue = 0.0;
        return v;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
    const auto& ev = es.eigenvalues();
    v.min_eigenvalue = ev(0);
    v.scale = std::max({1.0, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
    v.is_psd = v.min_eigenvalue >= -tol * v.scale;
    v.marginal = std::abs(v.min_eigenvalue) <= tol * v.scale;
    v.witness = es.eigenvectors().col(0);
    return v;
}

double operator_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    if (a.rows() == 1 || a.cols() == 1) return a.norm();
    const CMatrix gram = a.cols() <= a.rows() ? CMatrix(a.adjoint() * a) : CMatrix(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double operator_norm(const CSparse& a) {
    if (a.nonZeros() == 0) return 0.0;
    CMatrix gram;
    if (a.cols() <= a.rows()) {
        gram = CMatrix(a.adjoint() * a);
    } else {
        gram = CMatrix(a * a.adjoint());
    }
    if (gram.rows() == 1) return std::sqrt(std::abs(gram(0, 0)));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
}

double max_generalized_eigenvalue(const HermitianMatrix& b, const HermitianMatrix& a) {
    if (a.size() != b.size()) throw ArgumentError("pencil matrices differ in size");
    if (a.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> ea(a.matrix(), Eigen::EigenvaluesOnly);
    const auto& eva = ea.eigenvalues();
    const double scale = std::max(1.0, std::abs(eva(eva.size() - 1)));
    if (!(eva(0) > 1e-12 * scale)) {
        std::ostringstream os;
        os << "Gram matrix is not positive definite (min eigenvalue " << eva(0)
           << "); points too close together or too close to the sphere";
        throw SingularGramError(os.str());
    }
    Eigen::LLT<CMatrix> llt(a.matrix());
    if (llt.info() != Eigen::Success) throw SingularGramError("Cholesky factorization of the Gram matrix failed");
    // C = L^{-1} B L^{-*}
    const auto l = llt.matrixL();
    CMatrix c = l.solve(b.matrix());
    c = l.solve(CMatrix(c.adjoint())).adjoint();
    c = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> ec(c, Eigen::EigenvaluesOnly);
    return ec.eigenvalues()(ec.eigenvalues().size() - 1);
}

HermitianMatrix hermitian_sqrt(const HermitianMatrix& a, Warnings* warnings, double clamp_tol) {
    if (a.size() == 0) return a;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
    Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max({1.0, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
    if (ev(0) < -clamp_tol * scale) {
        std::ostringstream os;
        os << "square root of an indefinite matrix (min eigenvalue " << ev(0) << ")";
        throw DomainError(os.str());
    }
    int clamped = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < 0.0) {
            ev(i) = 0.0;
            ++clamped;
        }
    }
    if (clamped > 0 && warnings != nullptr) {
        std::ostringstream os;
        os << "hermitian_sqrt: clamped " << clamped << " negative eigenvalue(s) (min " << es.eigenvalues()(0)
           << ") to zero";
        warnings->push_back(os.str());
    }
    const CMatrix& v = es.eigenvectors();
    CMatrix r = v * ev.cwiseSqrt().asDiagonal() * v.adjoint();
    return HermitianMatrix(0.5 * (r + r.adjoint()));
}

CMatrix orthonormal_basis(const CMatrix& spanning, double rank_tol) {
    const Eigen::Index rows = spanning.rows();
    if (spanning.cols() == 0 || rows == 0) return CMatrix(rows, 0);
    Eigen::ColPivHouseholderQR<CMatrix> qr(spanning);
    const auto r = qr.matrixQR().diagonal().cwiseAbs();
    if (r.size() == 0 || r(0) == 0.0) return CMatrix(rows, 0);
    Eigen::Index rank = 0;
    while (rank < r.size() && r(rank) > rank_tol * r(0)) ++rank;
    return qr.householderQ() * CMatrix::Identity(rows, rank);
}

CMatrix null_space(const CMatrix& a, double abs_tol) {
    const Eigen::Index cols = a.cols();
    if (a.rows() == 0 || cols == 0) return CMatrix::Identity(cols, cols);
    Eigen::ColPivHouseholderQR<CMatrix> qr(a.adjoint());
    const auto r = qr.matrixQR().diagonal().cwiseAbs();
    Eigen::Index rank = 0;
    while (rank < r.size() && r(rank) > abs_tol) ++rank;
    const CMatrix q = qr.householderQ() * CMatrix::Identity(cols, cols);
    return q.rightCols(cols - rank);
}

CMatrix orthogonal_complement(const CMatrix& basis, Eigen::Index rows) {
    if (basis.cols() == 0) return CMatrix::Identity(rows, rows);
    if (basis.rows() != rows) throw ArgumentError("basis row count mismatch");
    const Eigen::Index r = basis.cols();
    if (r >= rows) return CMatrix(rows, 0);
    Eigen::HouseholderQR<CMatrix> qr(basis);
    CMatrix q = qr.householderQ() * CMatrix::Identity(rows, rows);
    return q.rightCols(rows - r);
}

double projector_distance(const CMatrix& q1, const CMatrix& q2) {
    if (q1.rows() != q2.rows()) throw ArgumentError("subspaces live in different ambient spaces");
    if (q1.cols() != q2.cols()) return 1.0;
    if (q1.cols() == 0) return 0.0;
    // ‖P1 - P2‖ = max(‖(I - P2) Q1‖, ‖(I - P1) Q2‖) for equal dimensions.
    const CMatrix r1 = q1 - q2 * (q2.adjoint() * q1);
    const CMatrix r2 = q2 - q1 * (q1.adjoint() * q2);
    return std::max(operator_norm(r1), operator_norm(r2));
}

double span_residual(const CMatrix& q, const CMatrix& x) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        CVector r = x.col(j);
        if (q.cols() > 0) r -= q * (q.adjoint() * x.col(j));
        worst = std::max(worst, r.norm() / std::max(1.0, x.col(j).norm()));
    }
    return worst;
}

}  // namespace fockalg::numerics
