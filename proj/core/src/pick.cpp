#include "fockalg/pick.hpp"

#include <cmath>
#include <sstream>

#include "fockalg/errors.hpp"

namespace fockalg::pick {

namespace {

constexpr double kDistinctTolerance = 1e-14;

std::string indexed(const char* field, std::size_t i) {
    return std::string(field) + "[" + std::to_string(i) + "]";
}

}  // namespace

PickProblem::PickProblem(std::vector<BallPoint> points, std::vector<CMatrix> targets)
    : n_(0), points_(std::move(points)), targets_(std::move(targets)) {
    if (points_.empty()) throw ArgumentError("interpolation problem needs at least one node");
    if (points_.size() != targets_.size()) throw ArgumentError("number of targets differs from number of nodes");
    n_ = points_.front().dimension();
    if (n_ < 1) throw ArgumentError("nodes must have positive dimension");
    for (std::size_t j = 0; j < points_.size(); ++j) {
        if (points_[j].dimension() != n_) throw ArgumentError(indexed("points", j) + ": dimension mismatch");
        if (!(points_[j].norm() < 1.0)) {
            std::ostringstream os;
            os << indexed("points", j) << ": |λ| = " << points_[j].norm() << " is not inside the open unit ball";
            throw DomainError(os.str());
        }
        for (std::size_t i = 0; i < j; ++i) {
            if ((points_[i].coords() - points_[j].coords()).cwiseAbs().maxCoeff() <= kDistinctTolerance) {
                throw ArgumentError(indexed("points", j) + ": coincides with " + indexed("points", i));
            }
        }
    }
    const Eigen::Index nt = targets_.front().rows();
    for (std::size_t j = 0; j < targets_.size(); ++j) {
        if (targets_[j].rows() != nt || targets_[j].cols() != nt || nt < 1) {
            throw ArgumentError(indexed("targets", j) + ": targets must be square matrices of a common size");
        }
    }
}

PickProblem PickProblem::scalar(std::vector<BallPoint> points, const std::vector<Complex>& values) {
    std::vector<CMatrix> targets;
    targets.reserve(values.size());
    for (const Complex& w : values) targets.push_back(CMatrix::Constant(1, 1, w));
    return PickProblem(std::move(points), std::move(targets));
}

CMatrix gram(const PickProblem& problem) {
    const int k = problem.nodes();
    CMatrix g(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            g(i, j) = 1.0 / (1.0 - inner(problem.points()[i], problem.points()[j]));
        }
    }
    return g;
}

namespace {

// A has blocks G_ij I, B has blocks G_ij W_i W_j*.
void kernel_pencil(const PickProblem& problem, const CMatrix& g, CMatrix& a, CMatrix& b) {
    const int k = problem.nodes();
    const int nt = problem.target_size();
    a = CMatrix::Zero(k * nt, k * nt);
    b = CMatrix::Zero(k * nt, k * nt);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            a.block(i * nt, j * nt, nt, nt).diagonal().setConstant(g(i, j));
            b.block(i * nt, j * nt, nt, nt) = g(i, j) * problem.targets()[i] * problem.targets()[j].adjoint();
        }
    }
}

}  // namespace

numerics::HermitianMatrix pick_matrix(const PickProblem& problem, double c) {
    if (c < 0.0) throw ArgumentError("pick_matrix: c must be nonnegative");
    CMatrix a;
    CMatrix b;
    kernel_pencil(problem, gram(problem), a, b);
    return numerics::HermitianMatrix(c * c * a - b);
}

double min_interpolation_norm(const PickProblem& problem) {
    CMatrix a;
    CMatrix b;
    kernel_pencil(problem, gram(problem), a, b);
    const double lmax = numerics::max_generalized_eigenvalue(numerics::HermitianMatrix(b), numerics::HermitianMatrix(a));
    return std::sqrt(std::max(0.0, lmax));
}

PickCertificate certify(const PickProblem& problem, double tol) {
    PickCertificate cert;
    cert.gram = gram(problem);
    const auto verdict = numerics::psd_check(pick_matrix(problem, 1.0), tol);
    cert.psd = verdict.is_psd;
    cert.marginal = verdict.marginal;
    cert.min_eigenvalue = verdict.min_eigenvalue;
    cert.min_norm = min_interpolation_norm(problem);
    cert.feasible = verdict.is_psd;
    return cert;
}

NcPolynomial lagrange_basis(const PickProblem& problem, int i0) {
    const int n = problem.ball_dimension();
    const int k = problem.nodes();
    if (i0 < 0 || i0 >= k) throw ArgumentError("node index out of range");
    const BallPoint& target = problem.points()[i0];
    NcPolynomial psi = NcPolynomial::constant(n, 1.0);
    Complex psi_at_target = 1.0;
    for (int j = 0; j < k; ++j) {
        if (j == i0) continue;
        const BallPoint& other = problem.points()[j];
        int q = 0;
        double best = -1.0;
        for (int t = 0; t < n; ++t) {
            const double gap = std::abs(target[t] - other[t]);
            if (gap > best) {
                best = gap;
                q = t;
            }
        }
        NcPolynomial theta = NcPolynomial::generator(n, q + 1) - NcPolynomial::constant(n, other[q]);
        psi = tensor_product(psi, theta);
        psi_at_target *= target[q] - other[q];
    }
    return psi * (1.0 / psi_at_target);
}

NcMatrixPolynomial lagrange_interpolant(const PickProblem& problem) {
    const int n = problem.ball_dimension();
    const int nt = problem.target_size();
    NcMatrixPolynomial phi(n, nt, nt);
    for (int i = 0; i < problem.nodes(); ++i) {
        const NcPolynomial basis = lagrange_basis(problem, i);
        const CMatrix& w = problem.targets()[i];
        for (int r = 0; r < nt; ++r) {
            for (int c = 0; c < nt; ++c) {
                if (w(r, c) != Complex{}) phi.at(r, c) += basis * w(r, c);
            }
        }
    }
    return phi;
}

numerics::HermitianMatrix classical_ball_matrix(const PickProblem& problem) {
    if (problem.target_size() != 1) throw ArgumentError("classical_ball_matrix requires scalar targets");
    const int k = problem.nodes();
    const int n = problem.ball_dimension();
    CMatrix m(k, k);
    for (int i = 0; i < k; ++i) {
        const Complex wi = problem.targets()[i](0, 0);
        for (int j = 0; j < k; ++j) {
            const Complex wj = problem.targets()[j](0, 0);
            m(i, j) = (1.0 - wi * std::conj(wj)) / std::pow(1.0 - inner(problem.points()[i], problem.points()[j]), n);
        }
    }
    return numerics::HermitianMatrix(m);
}

numerics::PsdVerdict sample_membership_check(const std::vector<Sample>& samples, double tol) {
    std::vector<BallPoint> points;
    std::vector<Complex> values;
    points.reserve(samples.size());
    values.reserve(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        if (!(std::abs(samples[s].value) < 1.0)) {
            std::ostringstream os;
            os << "samples[" << s << "]: |F(λ)| = " << std::abs(samples[s].value) << " is not < 1";
            throw PreconditionError(os.str());
        }
        points.push_back(samples[s].point);
        values.push_back(samples[s].value);
    }
    return numerics::psd_check(pick_matrix(PickProblem::scalar(std::move(points), values), 1.0), tol);
}

}  // namespace fockalg::pick
