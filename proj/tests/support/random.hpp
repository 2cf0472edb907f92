#pragma once

#include <random>
#include <vector>

#include "fockalg/numerics.hpp"
#include "fockalg/pick.hpp"
#include "fockalg/poisson.hpp"
#include "fockalg/polynomial.hpp"
#include "fockalg/word.hpp"

namespace fockalg::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Complex random_complex(Rng& rng) { return {uniform(rng), uniform(rng)}; }

inline CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = random_complex(rng);
    }
    return a;
}

inline CMatrix random_unitary(Rng& rng, Eigen::Index d) {
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, d, d));
    return qr.householderQ() * CMatrix::Identity(d, d);
}

inline CMatrix random_psd(Rng& rng, Eigen::Index d, Eigen::Index rank) {
    const CMatrix g = random_matrix(rng, d, rank);
    return g * g.adjoint();
}

/// Uniform direction, radius uniform in [r_lo, r_hi].
inline BallPoint random_ball_point(Rng& rng, int n, double r_lo, double r_hi) {
    CVector v(n);
    for (int t = 0; t < n; ++t) v(t) = random_complex(rng);
    v *= uniform(rng, r_lo, r_hi) / v.norm();
    return BallPoint(v);
}

inline std::vector<BallPoint> random_points(Rng& rng, int n, int k, double r_hi) {
    std::vector<BallPoint> pts;
    for (int j = 0; j < k; ++j) pts.push_back(random_ball_point(rng, n, 0.05, r_hi));
    return pts;
}

inline NcPolynomial random_homogeneous(Rng& rng, int n, int degree, int terms) {
    NcPolynomial p(n);
    while (p.is_zero()) {
        for (int s = 0; s < terms; ++s) {
            std::vector<int> letters(static_cast<std::size_t>(degree));
            for (int& l : letters) l = uniform_int(rng, 1, n);
            p.add_term(Word(letters), random_complex(rng));
        }
    }
    return p;
}

inline NcPolynomial random_polynomial(Rng& rng, int n, int max_degree, int terms) {
    NcPolynomial p(n);
    while (p.is_zero()) {
        for (int s = 0; s < terms; ++s) {
            std::vector<int> letters(static_cast<std::size_t>(uniform_int(rng, 0, max_degree)));
            for (int& l : letters) l = uniform_int(rng, 1, n);
            p.add_term(Word(letters), random_complex(rng));
        }
    }
    return p;
}

/// Row contraction with ‖Σ T_i T_i*‖ = rho exactly.
inline poisson::RowContraction random_row_contraction(Rng& rng, int n, Eigen::Index d, double rho) {
    std::vector<CMatrix> t;
    for (int i = 0; i < n; ++i) t.push_back(random_matrix(rng, d, d));
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& ti : t) sum += ti * ti.adjoint();
    const double s = std::sqrt(rho / numerics::operator_norm(sum));
    for (auto& ti : t) ti *= s;
    return poisson::RowContraction(std::move(t));
}

inline pick::PickProblem random_pick_problem(Rng& rng, int n, int k, int big_n, double r_hi, double target_scale) {
    std::vector<CMatrix> targets;
    for (int j = 0; j < k; ++j) targets.push_back(target_scale * random_matrix(rng, big_n, big_n));
    return pick::PickProblem(random_points(rng, n, k, r_hi), std::move(targets));
}

}  // namespace fockalg::testing
